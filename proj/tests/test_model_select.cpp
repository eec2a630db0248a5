#include <doctest.h>

#include <cmath>
#include <string>
#include <string_view>

#include "drtail/error.hpp"
#include "drtail/mc_engine.hpp"
#include "drtail/model_select.hpp"
#include "drtail/normal.hpp"
#include "oracles.hpp"

using namespace drtail;

namespace {

SortedSample draw(const char* name, std::size_t n, RngSpec rng) {
  if (std::string_view(name) == "half-normal") {
    // |Z| with Z standard normal: P(|Z| > x) = 2 S(x).
    const auto u = sorted_uniforms(n, rng);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = normal::upper_quantile(0.5 * (1.0 - u[i]));
    return SortedSample(std::move(x));
  }
  return inverse_transform(make_model(name), sorted_uniforms(n, rng));
}

}  // namespace

TEST_CASE("deterministic grids") {
  const auto e = classify(SortedSample(oracle::exponential_grid(4000)), SqrtN{});
  CHECK(e.chosen == ModelChoice::Exponential);
  CHECK(e.k == 63);
  CHECK(e.score_exponential > e.score_normal);

  const auto h = classify(SortedSample(oracle::half_normal_grid(4000)), SqrtN{});
  CHECK(h.chosen == ModelChoice::Normal);
  CHECK(h.score_normal > h.score_exponential);

  // Both scaled statistics are centered at ln 2 under their own model.
  const double half_log_n = 0.5 * std::log(4000.0);
  CHECK(std::abs(half_log_n * e.t_n - std::log(2.0)) < 0.1);
  CHECK(std::abs(2.0 * half_log_n * h.t_n - std::log(2.0)) < 0.1);
}

TEST_CASE("constant data is inconclusive") {
  const auto v = classify(SortedSample(std::vector<double>(500, 3.5)), SqrtN{});
  CHECK(v.chosen == ModelChoice::Inconclusive);
  CHECK(v.t_n == 0.0);
}

TEST_CASE("verdict is scale invariant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sample = draw(seed % 2 ? "exponential" : "normal-tail", 4000, {seed, 0});
    const auto base = classify(sample, SqrtN{});
    for (double c : {1e-3, 0.5, 7.0, 1e6}) {
      std::vector<double> scaled(sample.values().begin(), sample.values().end());
      for (auto& x : scaled) x *= c;
      const auto v = classify(SortedSample(std::move(scaled)), SqrtN{});
      CHECK(v.chosen == base.chosen);
      CHECK(v.t_n == doctest::Approx(base.t_n).epsilon(1e-9));
    }
  }
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(classify(SortedSample(oracle::exponential_grid(99)), SqrtN{}), Error);
  try {
    classify(SortedSample(oracle::exponential_grid(99)), SqrtN{});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientSample);
  }
  auto grid = oracle::exponential_grid(200);
  grid.front() = 0.0;
  CHECK_THROWS_AS(classify(SortedSample(grid), SqrtN{}), Error);
  grid.front() = -1.0;
  CHECK_THROWS_AS(classify(SortedSample(grid), SqrtN{}), Error);
}

TEST_CASE("to_string") {
  CHECK(to_string(ModelChoice::Normal) == "Normal");
  CHECK(to_string(ModelChoice::Exponential) == "Exponential");
  CHECK(to_string(ModelChoice::Inconclusive) == "Inconclusive");
}

TEST_CASE("fixed-seed power study") {
  const std::size_t M = 200;
  struct Case {
    const char* generator;
    ModelChoice truth;
  };
  for (const Case c : {Case{"exponential", ModelChoice::Exponential}, Case{"normal-tail", ModelChoice::Normal},
                       Case{"half-normal", ModelChoice::Normal}}) {
    std::size_t correct = 0;
    for (std::size_t r = 0; r < M; ++r) {
      if (classify(draw(c.generator, 4000, {42, r}), SqrtN{}).chosen == c.truth) ++correct;
    }
    const double rate = static_cast<double>(correct) / M;
    const std::string generator = c.generator;
    CAPTURE(generator);
    CAPTURE(rate);
    CHECK(rate >= 0.8);
  }
}
