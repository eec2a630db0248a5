#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drtail/k_policy.hpp"
#include "drtail/norming.hpp"

namespace drtail {

using ScalarFn = std::function<double(double)>;

enum class ModelWarning { AuxNotVanishing };

/// A distribution described through its upper tail.
///
/// `quantile(u)` returns Q(1-u), so small u means far out in the upper tail.
/// Everything else is optional: `survival` (1 - F) stands in for the CDF, and
/// `aux` is a cataloged closed form of the auxiliary function r(u).
struct TailModel {
  std::string name;
  ScalarFn quantile;
  ScalarFn survival;
  ScalarFn aux;
  /// aux(u) == u Q'(1-u) identically rather than only as u -> 0.
  bool aux_exact = false;
  double upper_endpoint = std::numeric_limits<double>::infinity();
  double lower_endpoint = -std::numeric_limits<double>::infinity();
  /// Valid quantile arguments are 0 < u < u_max (u <= u_max if inclusive).
  double u_max = 1.0;
  bool u_max_inclusive = false;
  /// False for Frechet-domain tails such as the Pareto law, where R(t) diverges.
  bool finite_mean_excess = true;
  std::vector<ModelWarning> warnings;

  bool has_cdf() const noexcept { return static_cast<bool>(survival); }
  bool in_domain(double u) const noexcept {
    return u > 0.0 && (u < u_max || (u_max_inclusive && u == u_max));
  }
  double cdf(double x) const;
};

/// Q(1-u); DomainError outside the model's u-range.
double model_quantile(const TailModel& model, double u);

/// u Q'(1-u) by a central difference with step h = max(u 1e-5, 1e-12).
/// StepUnderflow when u < 1e-11.
double rho_numeric(const TailModel& model, double u);

/// r(u) in order of preference: cataloged closed form, rho_numeric, and
/// R(Q(1-u)) by quadrature when the finite difference underflows.
double aux_r(const TailModel& model, double u);

/// R(t) = (1-F(t))^{-1} int_t^A (1-F(v)) dv by adaptive Gauss-Kronrod
/// quadrature, truncated where 1-F falls below 1e-18 (1-F(t)).
double mean_excess_R(const TailModel& model, double t);

NormingConstants norming(const TailModel& model, std::size_t n, std::size_t k);
/// Same algebra at real-valued n and k.
NormingConstants norming_at(const TailModel& model, double n, double k);

/// r(1/n) / r(k/n) with k = select_k(policy, n).
double lambda_ratio(const TailModel& model, const KPolicy& policy, std::size_t n);

/// Model of log X given X > 0. `positive_mass` is a = P(X > 0); when omitted
/// it is 1 for models supported on [0, inf) and read off the CDF otherwise.
TailModel transform_log(const TailModel& model, std::optional<double> positive_mass = std::nullopt);

/// Model of exp X. Adds ModelWarning::AuxNotVanishing when r(u) does not
/// visibly decrease toward 0 along u = 1e-2, 1e-4, ..., 1e-10.
TailModel transform_exp(const TailModel& model);

/// Mason's piecewise-linear upper quantile: m at u = 2^{-m}, linear between.
double mason_quantile(double u);

/// X = log_p sup(e_{p-1}(1), Z), Z standard normal; m = P(Z > e_{p-1}(1)).
struct IteratedLogSpec {
  int p = 1;
  double m = 1.0;
};

IteratedLogSpec iterated_log_spec(int p);

/// C_n = (2 ln n) prod_{h=1}^{p-1} log_h((2 ln n)^{1/2}).
double iterated_c_n(const IteratedLogSpec& spec, double n);

/// Catalog lookup: "exp-of-log", "normal", "normal-tail", "log-normal",
/// "pareto", "exponential", "gamma-tail", "mason", "iterlog(<p>)", and the
/// wrappers "log(<name>)" / "exp(<name>)". UnknownModel otherwise.
TailModel make_model(std::string_view name);

std::vector<std::string> catalog_names();

}  // namespace drtail
