#include "drtail/tail_models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "drtail/error.hpp"
#include "drtail/normal.hpp"

namespace drtail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_arg(double u) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, u);
  return std::string(buf, ptr);
}

void require_domain(const TailModel& model, double u) {
  if (!model.in_domain(u)) {
    throw Error(ErrorKind::DomainError,
                "u = " + fmt_arg(u) + " outside the quantile range of model '" + model.name + "'");
  }
}

double iterate_log(double x, int times) {
  for (int i = 0; i < times; ++i) x = std::log(x);
  return x;
}

double iterate_exp(double x, int times) {
  for (int i = 0; i < times; ++i) x = std::exp(x);
  return x;
}

// --- catalog entries ------------------------------------------------------

TailModel exp_of_log() {
  TailModel m;
  m.name = "exp-of-log";
  m.quantile = [](double u) { return std::log(-std::log(u)); };
  m.survival = [](double x) { return std::exp(-std::exp(x)); };
  m.aux = [](double u) { return 1.0 / -std::log(u); };
  m.aux_exact = true;
  m.u_max = std::exp(-1.0);
  return m;
}

TailModel standard_normal() {
  TailModel m;
  m.name = "normal";
  m.quantile = normal::upper_quantile;
  m.survival = normal::survival;
  // (2 ln(1/u))^{-1/2}: the leading term of u Q'(1-u), not the exact derivative.
  m.aux = [](double u) { return 1.0 / std::sqrt(-2.0 * std::log(u)); };
  m.aux_exact = false;
  return m;
}

TailModel normal_tail() {
  TailModel m;
  m.name = "normal-tail";
  m.quantile = [](double u) { return std::sqrt(-2.0 * std::log(u)); };
  m.survival = [](double x) { return x <= 0.0 ? 1.0 : std::exp(-0.5 * x * x); };
  m.aux = [](double u) { return 1.0 / std::sqrt(-2.0 * std::log(u)); };
  m.aux_exact = true;
  m.lower_endpoint = 0.0;
  return m;
}

TailModel exponential(std::string name) {
  TailModel m;
  m.name = std::move(name);
  m.quantile = [](double u) { return -std::log(u); };
  m.survival = [](double x) { return x <= 0.0 ? 1.0 : std::exp(-x); };
  m.aux = [](double) { return 1.0; };
  m.aux_exact = true;
  m.lower_endpoint = 0.0;
  return m;
}

TailModel pareto() {
  TailModel m;
  m.name = "pareto";
  m.quantile = [](double u) { return 1.0 / u; };
  m.survival = [](double x) { return x <= 1.0 ? 1.0 : 1.0 / x; };
  m.lower_endpoint = 1.0;
  m.finite_mean_excess = false;
  return m;
}

TailModel mason() {
  TailModel m;
  m.name = "mason";
  m.quantile = mason_quantile;
  m.survival = [](double x) {
    if (x <= 0.0) return 1.0;
    const double level = std::floor(x);
    const int mm = static_cast<int>(level);
    return std::ldexp(1.0, -mm) - (x - level) * std::ldexp(1.0, -mm - 1);
  };
  m.lower_endpoint = 0.0;
  m.u_max_inclusive = true;
  return m;
}

TailModel iterated_log(int p) {
  const IteratedLogSpec spec = iterated_log_spec(p);
  TailModel m;
  m.name = "iterlog(" + std::to_string(p) + ")";
  m.quantile = [spec](double u) { return iterate_log(normal::upper_quantile(spec.m * u), spec.p); };
  m.survival = [spec](double x) {
    if (x <= 0.0) return 1.0;
    return normal::survival(iterate_exp(x, spec.p)) / spec.m;
  };
  m.lower_endpoint = 0.0;
  return m;
}

bool unwrap(std::string_view name, std::string_view prefix, std::string_view& inner) {
  if (name.size() > prefix.size() + 1 && name.starts_with(prefix) && name.back() == ')') {
    inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    return true;
  }
  return false;
}

}  // namespace

double TailModel::cdf(double x) const {
  if (!survival) {
    throw Error(ErrorKind::NoCdf, "model '" + name + "' has no CDF");
  }
  return 1.0 - survival(x);
}

double model_quantile(const TailModel& model, double u) {
  require_domain(model, u);
  return model.quantile(u);
}

double rho_numeric(const TailModel& model, double u) {
  if (u < 1e-11) {
    throw Error(ErrorKind::StepUnderflow, "u = " + fmt_arg(u) + " is below 1e-11");
  }
  require_domain(model, u);
  const double h = std::max(u * 1e-5, 1e-12);
  const double lo = u - h;
  const double hi = u + h;
  require_domain(model, hi);
  return -u * (model.quantile(hi) - model.quantile(lo)) / (hi - lo);
}

double aux_r(const TailModel& model, double u) {
  if (model.aux) {
    require_domain(model, u);
    return model.aux(u);
  }
  try {
    return rho_numeric(model, u);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::StepUnderflow || !model.has_cdf()) throw;
  }
  return mean_excess_R(model, model_quantile(model, u));
}

double mean_excess_R(const TailModel& model, double t) {
  if (!model.has_cdf()) {
    throw Error(ErrorKind::NoCdf, "model '" + model.name + "' has no CDF");
  }
  if (!model.finite_mean_excess) {
    throw Error(ErrorKind::DomainError, "mean excess of model '" + model.name + "' diverges");
  }
  if (!(t > model.lower_endpoint && t < model.upper_endpoint)) {
    throw Error(ErrorKind::DomainError, "t = " + fmt_arg(t) + " outside (B, A)");
  }
  const double s_t = model.survival(t);
  if (!(s_t > 1e-300)) {
    throw Error(ErrorKind::TailUnderflow, "1 - F(t) underflows at t = " + fmt_arg(t));
  }
  const double cutoff = 1e-18 * s_t;
  auto ratio = [&](double v) { return model.survival(v) / s_t; };

  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  // Integrate over geometrically growing segments so each one stays well
  // scaled; stop once the survival function has fallen below the cutoff.
  double lo = t;
  double step = 1e-3 * std::max(1.0, std::abs(t));
  double total = 0.0;
  for (int segment = 0; segment < 200; ++segment) {
    const double hi = std::min(lo + step, model.upper_endpoint);
    total += Kronrod::integrate(ratio, lo, hi, 15, 1e-10);
    if (hi >= model.upper_endpoint || model.survival(hi) < cutoff) return total;
    lo = hi;
    step *= 2.0;
  }
  throw Error(ErrorKind::DomainError, "mean excess quadrature did not reach the truncation point");
}

NormingConstants norming_at(const TailModel& model, double n, double k) {
  if (!(k >= 2.0 && k < n)) {
    throw Error(ErrorKind::KOutOfRange, "need 2 <= k < n, got k = " + fmt_arg(k) + ", n = " + fmt_arg(n));
  }
  const double u1 = 1.0 / n;
  const double uk = k / n;
  NormingConstants nc;
  nc.n = n;
  nc.k = k;
  nc.a_n = aux_r(model, uk);
  if (!(nc.a_n > 0.0)) {
    throw Error(ErrorKind::ZeroScale, "r(k/n) is not positive for model '" + model.name + "'");
  }
  nc.b_n = (model_quantile(model, u1) - model_quantile(model, uk)) / nc.a_n;
  try {
    nc.lambda = aux_r(model, u1) / nc.a_n;
  } catch (const Error&) {
    nc.lambda.reset();
  }
  return nc;
}

NormingConstants norming(const TailModel& model, std::size_t n, std::size_t k) {
  return norming_at(model, static_cast<double>(n), static_cast<double>(k));
}

double lambda_ratio(const TailModel& model, const KPolicy& policy, std::size_t n) {
  const auto k = select_k(policy, n);
  const double nn = static_cast<double>(n);
  return aux_r(model, 1.0 / nn) / aux_r(model, static_cast<double>(k) / nn);
}

TailModel transform_log(const TailModel& model, std::optional<double> positive_mass) {
  if (!(model.upper_endpoint > 0.0)) {
    throw Error(ErrorKind::NonPositiveEndpoint, "log transform needs A > 0 for model '" + model.name + "'");
  }
  double a = 1.0;
  if (positive_mass) {
    a = *positive_mass;
  } else if (model.lower_endpoint < 0.0) {
    if (!model.has_cdf()) {
      throw Error(ErrorKind::NoCdf, "P(X > 0) needs a CDF for model '" + model.name + "'");
    }
    a = model.survival(0.0);
  }
  if (!(a > 0.0 && a <= 1.0)) {
    throw Error(ErrorKind::DomainError, "P(X > 0) = " + fmt_arg(a) + " outside (0, 1]");
  }

  TailModel out;
  out.name = "log(" + model.name + ")";
  const auto src_quantile = model.quantile;
  out.quantile = [src_quantile, a](double u) { return std::log(src_quantile(a * u)); };
  if (model.has_cdf()) {
    const auto src_survival = model.survival;
    out.survival = [src_survival, a](double y) { return src_survival(std::exp(y)) / a; };
    if (model.finite_mean_excess) {
      // s(u) = R(Q(1-u)) / Q(1-u), read at the source position a u.
      out.aux = [model, a](double u) {
        const double q = model.quantile(a * u);
        return mean_excess_R(model, q) / q;
      };
    }
  }
  out.upper_endpoint = std::log(model.upper_endpoint);
  out.lower_endpoint = model.lower_endpoint > 0.0 ? std::log(model.lower_endpoint) : -kInf;
  out.u_max = std::min(1.0, model.u_max / a);
  out.u_max_inclusive = model.u_max_inclusive && out.u_max == model.u_max / a;
  return out;
}

TailModel transform_exp(const TailModel& model) {
  TailModel out;
  out.name = "exp(" + model.name + ")";
  const auto src_quantile = model.quantile;
  out.quantile = [src_quantile](double u) { return std::exp(src_quantile(u)); };

  bool vanishing = true;
  double first = 0.0;
  double previous = kInf;
  for (int e = 2; e <= 10; e += 2) {
    const double r = aux_r(model, std::pow(10.0, -e));
    if (e == 2) first = r;
    if (!(r < previous)) vanishing = false;
    previous = r;
  }
  if (!(previous < first)) vanishing = false;
  if (!vanishing) out.warnings.push_back(ModelWarning::AuxNotVanishing);

  if (model.has_cdf()) {
    const auto src_survival = model.survival;
    out.survival = [src_survival](double x) { return x <= 0.0 ? 1.0 : src_survival(std::log(x)); };
    if (model.finite_mean_excess) {
      out.aux = [model](double u) {
        const double q = model.quantile(u);
        return std::exp(q) * mean_excess_R(model, q);
      };
    }
  }
  out.upper_endpoint = std::exp(model.upper_endpoint);
  out.lower_endpoint = std::exp(model.lower_endpoint);
  out.u_max = model.u_max;
  out.u_max_inclusive = model.u_max_inclusive;
  out.finite_mean_excess = vanishing;
  return out;
}

double mason_quantile(double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw Error(ErrorKind::DomainError, "Mason quantile needs u in (0, 1]");
  }
  int e = 0;
  const double f = std::frexp(u, &e);  // u = f 2^e, f in [0.5, 1)
  if (f == 0.5) return static_cast<double>(1 - e);
  // 2^{-m-1} < u < 2^{-m} with m = -e.
  const int m = -e;
  return m + (std::ldexp(1.0, -m) - u) * std::ldexp(1.0, m + 1);
}

IteratedLogSpec iterated_log_spec(int p) {
  if (p < 1) {
    throw Error(ErrorKind::DomainError, "iteration depth p must be >= 1");
  }
  const double threshold = iterate_exp(1.0, p - 1);
  const double m = normal::survival(threshold);
  if (!(m > 0.0)) {
    throw Error(ErrorKind::DomainError, "P(Z > e_{p-1}(1)) underflows for p = " + std::to_string(p));
  }
  return {p, m};
}

double iterated_c_n(const IteratedLogSpec& spec, double n) {
  if (spec.p < 1) {
    throw Error(ErrorKind::DomainError, "iteration depth p must be >= 1");
  }
  if (!(n >= 16.0)) {
    throw Error(ErrorKind::DomainError, "iterated norming needs n >= 16");
  }
  const double base = 2.0 * std::log(n);
  const double root = std::sqrt(base);
  double product = 1.0;
  for (int h = 1; h < spec.p; ++h) {
    double value = root;
    for (int i = 0; i < h; ++i) {
      if (!(value > 0.0)) {
        throw Error(ErrorKind::DomainError, "iterated logarithm leaves its domain at n = " + fmt_arg(n));
      }
      value = std::log(value);
    }
    if (!(value > 0.0)) {
      throw Error(ErrorKind::DomainError,
                  "log_" + std::to_string(h) + "((2 ln n)^{1/2}) <= 0 at n = " + fmt_arg(n));
    }
    product *= value;
  }
  return base * product;
}

TailModel make_model(std::string_view name) {
  std::string_view inner;
  if (unwrap(name, "log(", inner)) return transform_log(make_model(inner));
  if (unwrap(name, "exp(", inner)) return transform_exp(make_model(inner));
  if (unwrap(name, "iterlog(", inner)) {
    int p = 0;
    auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), p);
    if (ec != std::errc() || ptr != inner.data() + inner.size() || p < 1) {
      throw Error(ErrorKind::UnknownModel, "bad iteration depth in '" + std::string(name) + "'");
    }
    return iterated_log(p);
  }
  if (name == "exp-of-log") return exp_of_log();
  if (name == "normal") return standard_normal();
  if (name == "normal-tail") return normal_tail();
  if (name == "log-normal") {
    TailModel m = transform_exp(standard_normal());
    m.name = "log-normal";
    return m;
  }
  if (name == "pareto") return pareto();
  if (name == "exponential") return exponential("exponential");
  if (name == "gamma-tail") return exponential("gamma-tail");
  if (name == "mason") return mason();
  throw Error(ErrorKind::UnknownModel, "no model named '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"exp-of-log", "normal", "normal-tail", "log-normal", "pareto",
          "exponential", "gamma-tail", "mason", "iterlog(p)"};
}

}  // namespace drtail
