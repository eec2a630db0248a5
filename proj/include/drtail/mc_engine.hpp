#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drtail/k_policy.hpp"
#include "drtail/norming.hpp"
#include "drtail/rng.hpp"
#include "drtail/sample.hpp"
#include "drtail/tail_models.hpp"

namespace drtail {

/// n iid uniforms from `rng`, sorted ascending; every value lies in (0, 1).
std::vector<double> sorted_uniforms(std::size_t n, const RngSpec& rng);

/// The `count` smallest of n iid uniforms, ascending, without drawing the
/// other n - count. Uses 1 - U_(i+1) = (1 - U_(i)) V^{1/(n-i)} in log space,
/// so it consumes exactly `count` values from the stream.
std::vector<double> smallest_uniforms(std::size_t n, std::size_t count, const RngSpec& rng);

/// X_i = Q(1 - (1 - u_i)) for an ascending uniform sample. Q(1-.) is
/// non-increasing, so the output is already ascending.
SortedSample inverse_transform(const TailModel& model, std::span<const double> sorted_u);

/// Top depth + 1 order statistics of an n-sample from `model`, built from the
/// smallest uniforms: X_{n-i+1,n} = Q(1 - U_(i)).
UpperOrderStatistics sample_upper_tail(const TailModel& model, std::size_t n, std::size_t depth,
                                       const RngSpec& rng);

struct ReplicateSet {
  std::string model_name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t M = 0;
  RngSpec rng;
  NormingConstants norming;
  std::vector<double> raw_t;
  std::vector<double> normalized;
};

/// M replicates of T_n and of the normalized statistic. Replicate i uses the
/// stream (seed, stream_id + i). Work is spread over `threads` workers (0 =
/// hardware concurrency); the result is identical for any thread count.
ReplicateSet run_replicates(const TailModel& model, std::size_t n, const KPolicy& policy,
                            std::size_t M, const RngSpec& rng, unsigned threads = 0);

/// exp(-e^{-x/lambda}); DomainError for lambda <= 0.
double gumbel_cdf(double x, double lambda_scale);
/// Inverse of gumbel_cdf in x.
double gumbel_quantile(double p, double lambda_scale);

struct KsReport {
  double ks = 0.0;
  std::size_t M = 0;
  double threshold = 0.0;
  bool pass = false;
  double scale_lambda = 1.0;
};

/// One-sample Kolmogorov-Smirnov distance against gumbel_cdf(., lambda).
/// The default threshold is 1.36 / sqrt(M).
KsReport ks_distance(std::span<const double> values, double lambda_scale,
                     std::optional<double> threshold = std::nullopt);

struct TableRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double half_log_n_t1 = 0.0;  // (ln n / 2) T_{n1}, exponential y_i
  double log_n_t2 = 0.0;       // (ln n) T_{n2}, x_i = (2 y_i)^{1/2}
  double t3 = 0.0;             // T_{n3}, Pareto z_i = 1 / (1 - u_i)
  double uniform = 0.0;        // u_{n_total - n + 1}
};

struct SimulationTable {
  RngSpec rng;
  std::size_t n_total = 0;
  std::vector<TableRow> rows;
  double max_identity_residual = 0.0;
};

/// Ten rows n = n_total - 9 .. n_total built from prefixes of one sorted
/// uniform sample, with k = floor(sqrt n). Throws IdentityViolation if
/// columns 2 and 3 ever differ by more than 1e-12.
SimulationTable reproduce_table(const RngSpec& rng, std::size_t n_total = 4000);

double mean(std::span<const double> values);
double median(std::span<const double> values);

}  // namespace drtail
