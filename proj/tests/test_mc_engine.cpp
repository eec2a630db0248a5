#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "drtail/error.hpp"
#include "drtail/estimators.hpp"
#include "drtail/mc_engine.hpp"
#include "oracles.hpp"

using namespace drtail;

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("xoshiro256** matches the reference sequence") {
  auto ref = UniformStream::from_state({1, 2, 3, 4});
  CHECK(ref() == 11520ULL);
  CHECK(ref() == 0ULL);
  CHECK(ref() == 1509978240ULL);
  CHECK(ref() == 1215971899390074240ULL);
}

TEST_CASE("uniform streams are pinned") {
  UniformStream s({42, 0});
  CHECK(s() == 0xc5860a625adf8456ULL);
  CHECK(s() == 0x39395c219e746052ULL);
  CHECK(s() == 0xad4dc7562d3061d6ULL);
  UniformStream t({42, 7});
  CHECK(t.uniform() == 0.27360371301731151);

  UniformStream a({42, 1}), b({43, 0});
  UniformStream c({42, 0});
  const auto first = c();
  CHECK(a() != first);
  CHECK(b() != first);
}

TEST_CASE("sorted_uniforms") {
  const auto u1 = sorted_uniforms(1000, {5, 3});
  const auto u2 = sorted_uniforms(1000, {5, 3});
  CHECK(u1 == u2);
  CHECK(std::is_sorted(u1.begin(), u1.end()));
  CHECK(u1.front() > 0.0);
  CHECK(u1.back() < 1.0);
  CHECK(sorted_uniforms(1000, {5, 4}) != u1);

  const std::size_t n = 1'000'000;
  const auto big = sorted_uniforms(n, {2024, 0});
  // 3 / sqrt(12 n) ~ 8.7e-4
  CHECK(std::abs(mean(big) - 0.5) < 0.002);
  CHECK(std::abs(mean(big) - 0.5) < 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("smallest_uniforms matches order-statistic moments") {
  const std::size_t n = 1000;
  const std::size_t count = 5;
  const std::size_t reps = 4000;
  std::vector<std::vector<double>> columns(count);
  std::vector<std::vector<double>> full_columns(count);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto u = smallest_uniforms(n, count, {11, r});
    REQUIRE(u.size() == count);
    CHECK(std::is_sorted(u.begin(), u.end()));
    CHECK(u.front() > 0.0);
    const auto full = sorted_uniforms(n, {12, r});
    for (std::size_t i = 0; i < count; ++i) {
      columns[i].push_back(u[i]);
      full_columns[i].push_back(full[i]);
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    // U_(i+1) ~ Beta(i+1, n-i): mean (i+1)/(n+1).
    const double j = static_cast<double>(i + 1);
    const double expected = j / (n + 1.0);
    const double sd = std::sqrt(j * (n - j + 1.0) / ((n + 1.0) * (n + 1.0) * (n + 2.0)));
    const double se = sd / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean(columns[i]) - expected) < 4.0 * se);
    CHECK(std::abs(mean(full_columns[i]) - expected) < 4.0 * se);
    CHECK(stddev(columns[i]) == doctest::Approx(sd).epsilon(0.05));
  }
  CHECK_THROWS_AS(smallest_uniforms(3, 4, {}), Error);
}

TEST_CASE("inverse_transform") {
  const std::vector<double> u = {0.5, 0.9, 0.999};
  const auto e = inverse_transform(make_model("exponential"), u);
  CHECK(e[0] == doctest::Approx(std::log(2.0)));
  const auto p = inverse_transform(make_model("pareto"), u);
  CHECK(p[1] == doctest::Approx(10.0).epsilon(1e-12));
  const auto z = inverse_transform(make_model("normal"), u);
  CHECK(std::abs(z[2] - oracle::normal_upper_quantile_bisect(0.001)) < 1e-9);
  CHECK(z[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

  const auto sorted = sorted_uniforms(500, {1, 1});
  const auto x = inverse_transform(make_model("normal"), sorted);
  CHECK(std::is_sorted(x.values().begin(), x.values().end()));
  // exp-of-log is only defined for Q arguments below 1/e.
  CHECK_THROWS_AS(inverse_transform(make_model("exp-of-log"), sorted), Error);
}

TEST_CASE("run_replicates determinism") {
  const auto model = make_model("exp-of-log");
  const auto a = run_replicates(model, 10'000, SqrtN{}, 1, {9, 0}, 1);
  const auto b = run_replicates(model, 10'000, SqrtN{}, 1, {9, 0}, 1);
  CHECK(a.raw_t == b.raw_t);
  CHECK(a.normalized == b.normalized);

  const auto serial = run_replicates(model, 50'000, LogPow{2.0}, 64, {3, 100}, 1);
  const auto parallel = run_replicates(model, 50'000, LogPow{2.0}, 64, {3, 100}, 4);
  CHECK(serial.raw_t == parallel.raw_t);
  CHECK(serial.normalized == parallel.normalized);

  // Replicate i is stream stream_id + i, so a shifted run lines up.
  const auto shifted = run_replicates(model, 50'000, LogPow{2.0}, 63, {3, 101}, 2);
  CHECK(std::equal(shifted.raw_t.begin(), shifted.raw_t.end(), serial.raw_t.begin() + 1));

  for (std::size_t i = 0; i < serial.M; ++i) {
    const double spacing = serial.raw_t[i] * std::log(static_cast<double>(serial.k));
    const auto& nc = serial.norming;
    CHECK(serial.normalized[i] == doctest::Approx((spacing - nc.a_n * nc.b_n) / nc.a_n).epsilon(1e-10));
  }
  CHECK(serial.raw_t.size() == 64);
  CHECK(serial.k == 117);

  CHECK_THROWS_AS(run_replicates(model, 1000, SqrtN{}, 0, {}), Error);
}

TEST_CASE("exp-of-log spacing centers on the Gumbel mean of the limit") {
  const std::size_t n = 1'000'000;
  const std::size_t k = 1000;
  const std::size_t M = 2000;
  const auto model = make_model("exp-of-log");
  const auto set = run_replicates(model, n, FixedK{k}, M, {1986, 0});
  std::vector<double> spacing(M);
  for (std::size_t i = 0; i < M; ++i) spacing[i] = set.raw_t[i] * std::log(static_cast<double>(k));

  const double exact = oracle::expected_log_log_uniform_order_stat(1, n) -
                       oracle::expected_log_log_uniform_order_stat(k + 1, n);
  const double se = stddev(spacing) / std::sqrt(static_cast<double>(M));
  CHECK(std::abs(mean(spacing) - exact) < 3.0 * se);

  // Limit law: spacing ~ a_n b_n + a_n lambda G with G standard Gumbel, so
  // its mean is ln 2 + a_n lambda gamma = ln 2 + gamma / ln n.
  const auto& nc = set.norming;
  const double limit_mean = std::numbers::ln2 + nc.a_n * nc.lambda.value() * kEulerGamma;
  CHECK(std::abs(exact - limit_mean) < 0.01);
  CHECK(std::abs(mean(spacing) - limit_mean) < 0.01);
}

TEST_CASE("Pareto log-scale mean T_n matches the exponential-spacing oracle") {
  // ln z has unit exponential spacings, so E[T_n] = H_k / ln k exactly.
  const std::size_t n = 4000;
  const auto set = run_replicates(make_model("log(pareto)"), n, SqrtN{}, 200, {42, 0});
  const double expected = oracle::harmonic(set.k) / std::log(static_cast<double>(set.k));
  const double se = stddev(set.raw_t) / std::sqrt(200.0);
  CHECK(std::abs(mean(set.raw_t) - expected) < 3.0 * se);
}

TEST_CASE("median |T_n| shrinks with n for light-tailed log models") {
  for (const auto* name : {"exp-of-log", "normal", "normal-tail", "iterlog(1)", "iterlog(2)", "log(normal-tail)"}) {
    CAPTURE(name);
    const auto model = make_model(name);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1000; n <= 1'000'000; n *= 10) {
      const auto set = run_replicates(model, n, SqrtN{}, 200, {77, 0});
      std::vector<double> abs_t(set.raw_t.size());
      std::transform(set.raw_t.begin(), set.raw_t.end(), abs_t.begin(), [](double t) { return std::abs(t); });
      const double med = median(abs_t);
      CHECK(med < previous);
      previous = med;
    }
  }
}

TEST_CASE("gumbel_cdf") {
  CHECK(gumbel_cdf(0.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(gumbel_cdf(-std::log(std::log(2.0)), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gumbel_cdf(0.733025841163329, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(gumbel_cdf(0.0, 0.0), Error);
  CHECK_THROWS_AS(gumbel_cdf(0.0, -1.0), Error);
  for (double p : {0.01, 0.3, 0.9}) {
    CHECK(gumbel_cdf(gumbel_quantile(p, 0.7), 0.7) == doctest::Approx(p).epsilon(1e-13));
  }
}

TEST_CASE("ks_distance") {
  const std::size_t M = 100;
  std::vector<double> q(M);
  for (std::size_t i = 1; i <= M; ++i) q[i - 1] = oracle::gumbel_quantile((i - 0.5) / M, 1.0);
  auto r = ks_distance(q, 1.0);
  CHECK(r.ks == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(r.M == M);
  CHECK(r.threshold == doctest::Approx(0.136));
  CHECK(r.pass);
  CHECK(r.scale_lambda == 1.0);

  // Same geometry on a scaled law.
  for (auto& v : q) v *= 2.5;
  CHECK(ks_distance(q, 2.5).ks == doctest::Approx(0.005).epsilon(1e-9));

  const std::vector<double> median_only = {-std::log(std::log(2.0))};
  CHECK(ks_distance(median_only, 1.0).ks == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<double> far(50, 1e9);
  const auto bad = ks_distance(far, 1.0);
  CHECK(bad.ks > 0.999);
  CHECK(bad.ks <= 1.0);
  CHECK_FALSE(bad.pass);

  const auto strict = ks_distance(q, 2.5, 0.001);
  CHECK(strict.threshold == 0.001);
  CHECK_FALSE(strict.pass);
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, 1.0), Error);
}

TEST_CASE("reproduce_table") {
  const auto table = reproduce_table({42, 0});
  REQUIRE(table.rows.size() == 10);
  CHECK(table.rows.front().n == 3991);
  CHECK(table.rows.back().n == 4000);
  CHECK(table.rows.back().k == 63);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row.log_n_t2 - row.half_log_n_t1) <= 1e-12);
    CHECK(row.uniform > 0.0);
    CHECK(row.uniform < 0.01);
  }
  const auto& last = table.rows.back();
  CHECK(last.t3 >= 0.65);
  CHECK(last.t3 <= 1.35);
  CHECK(last.half_log_n_t1 >= 0.45);
  CHECK(last.half_log_n_t1 <= 0.95);

  SUBCASE("identity holds for every seed") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      CHECK(reproduce_table({seed, 0}).max_identity_residual <= 1e-12);
    }
  }
  SUBCASE("matches a direct computation from the uniforms") {
    const auto u = sorted_uniforms(4000, {42, 0});
    const std::size_t n = 3995;
    const std::size_t k = 63;
    const double y_top = -std::log1p(-u[n - 1]);
    const double y_k = -std::log1p(-u[n - 1 - k]);
    const double t1 = (std::log(y_top) - std::log(y_k)) / std::log(63.0);
    const auto& row = table.rows[4];
    CHECK(row.n == n);
    CHECK(row.half_log_n_t1 == doctest::Approx(0.5 * std::log(3995.0) * t1).epsilon(1e-12));
    CHECK(row.t3 == doctest::Approx((y_top - y_k) / std::log(63.0)).epsilon(1e-10));
    CHECK(row.uniform == u[4000 - n]);
  }
  CHECK_THROWS_AS(reproduce_table({1, 0}, 99), Error);
}

TEST_CASE("mean and median") {
  const std::vector<double> odd = {3.0, 1.0, 2.0};
  const std::vector<double> even = {4.0, 1.0, 3.0, 2.0};
  CHECK(mean(odd) == 2.0);
  CHECK(median(odd) == 2.0);
  CHECK(median(even) == 2.5);
}
