#include "drtail/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "drtail/error.hpp"
#include "drtail/estimators.hpp"

namespace drtail {

std::vector<double> sorted_uniforms(std::size_t n, const RngSpec& rng) {
  UniformStream stream(rng);
  std::vector<double> u(n);
  for (auto& v : u) v = stream.uniform();
  std::sort(u.begin(), u.end());
  return u;
}

std::vector<double> smallest_uniforms(std::size_t n, std::size_t count, const RngSpec& rng) {
  if (count > n) {
    throw Error(ErrorKind::DomainError, "cannot take more order statistics than the sample size");
  }
  UniformStream stream(rng);
  std::vector<double> u(count);
  double log_complement = 0.0;  // ln(1 - U_(i))
  for (std::size_t i = 0; i < count; ++i) {
    log_complement += std::log(stream.uniform()) / static_cast<double>(n - i);
    u[i] = -std::expm1(log_complement);
  }
  return u;
}

SortedSample inverse_transform(const TailModel& model, std::span<const double> sorted_u) {
  std::vector<double> x(sorted_u.size());
  for (std::size_t i = 0; i < sorted_u.size(); ++i) {
    x[i] = model_quantile(model, 1.0 - sorted_u[i]);
  }
  return SortedSample(std::move(x));
}

UpperOrderStatistics sample_upper_tail(const TailModel& model, std::size_t n, std::size_t depth,
                                       const RngSpec& rng) {
  const auto u = smallest_uniforms(n, depth + 1, rng);
  std::vector<double> top(depth + 1);
  for (std::size_t i = 0; i <= depth; ++i) {
    top[depth - i] = model_quantile(model, u[i]);
  }
  return UpperOrderStatistics(std::move(top), n);
}

ReplicateSet run_replicates(const TailModel& model, std::size_t n, const KPolicy& policy,
                            std::size_t M, const RngSpec& rng, unsigned threads) {
  if (M == 0) {
    throw Error(ErrorKind::DomainError, "need at least one replicate");
  }
  ReplicateSet set;
  set.model_name = model.name;
  set.n = n;
  set.k = select_k(policy, n);
  set.M = M;
  set.rng = rng;
  set.norming = norming(model, n, set.k);
  set.raw_t.assign(M, 0.0);
  set.normalized.assign(M, 0.0);

  std::vector<std::exception_ptr> failures(M);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < M; r = next.fetch_add(1)) {
      try {
        const auto tail = sample_upper_tail(model, n, set.k, {rng.seed, rng.stream_id + r});
        set.raw_t[r] = de_haan_resnick(tail, set.k).t_n;
        set.normalized[r] = normalized_statistic(tail, set.k, set.norming);
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, M));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return set;
}

double gumbel_cdf(double x, double lambda_scale) {
  if (!(lambda_scale > 0.0)) {
    throw Error(ErrorKind::DomainError, "Gumbel scale must be positive");
  }
  return std::exp(-std::exp(-x / lambda_scale));
}

double gumbel_quantile(double p, double lambda_scale) {
  if (!(lambda_scale > 0.0)) {
    throw Error(ErrorKind::DomainError, "Gumbel scale must be positive");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::DomainError, "Gumbel quantile needs p in (0, 1)");
  }
  return -lambda_scale * std::log(-std::log(p));
}

KsReport ks_distance(std::span<const double> values, double lambda_scale, std::optional<double> threshold) {
  if (values.empty()) {
    throw Error(ErrorKind::DomainError, "KS distance needs at least one value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double M = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = gumbel_cdf(sorted[i], lambda_scale);
    const double above = static_cast<double>(i + 1) / M - F;
    const double below = F - static_cast<double>(i) / M;
    sup = std::max({sup, std::abs(above), std::abs(below)});
  }
  KsReport report;
  report.ks = sup;
  report.M = sorted.size();
  report.threshold = threshold.value_or(1.36 / std::sqrt(M));
  report.pass = report.ks <= report.threshold;
  report.scale_lambda = lambda_scale;
  return report;
}

SimulationTable reproduce_table(const RngSpec& rng, std::size_t n_total) {
  if (n_total < 100) {
    throw Error(ErrorKind::InsufficientSample, "table reproduction needs n_total >= 100");
  }
  const auto u = sorted_uniforms(n_total, rng);
  std::vector<double> y(n_total), x(n_total), z(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    y[i] = -std::log1p(-u[i]);
    x[i] = std::sqrt(2.0 * y[i]);
    z[i] = 1.0 / (1.0 - u[i]);
  }
  const SortedSample ys(std::move(y)), xs(std::move(x)), zs(std::move(z));

  SimulationTable table;
  table.rng = rng;
  table.n_total = n_total;
  for (std::size_t n = n_total - 9; n <= n_total; ++n) {
    TableRow row;
    row.n = n;
    row.k = select_k(SqrtN{}, n);
    const double log_n = std::log(static_cast<double>(n));
    row.half_log_n_t1 = 0.5 * log_n * de_haan_resnick_log_scale(ys.prefix(n), row.k).t_n;
    row.log_n_t2 = log_n * de_haan_resnick_log_scale(xs.prefix(n), row.k).t_n;
    row.t3 = de_haan_resnick_log_scale(zs.prefix(n), row.k).t_n;
    row.uniform = u[n_total - n];
    table.max_identity_residual =
        std::max(table.max_identity_residual, std::abs(row.log_n_t2 - row.half_log_n_t1));
    table.rows.push_back(row);
  }
  if (table.max_identity_residual > 1e-12) {
    throw Error(ErrorKind::IdentityViolation,
                "(ln n) T_n2 and (ln n / 2) T_n1 differ by " + std::to_string(table.max_identity_residual));
  }
  return table;
}

double mean(std::span<const double> values) {
  if (values.empty()) return std::nan("");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
  if (values.empty()) return std::nan("");
  std::vector<double> v(values.begin(), values.end());
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace drtail
