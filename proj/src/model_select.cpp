#include "drtail/model_select.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "drtail/error.hpp"
#include "drtail/estimators.hpp"
#include "drtail/tail_models.hpp"

namespace drtail {
namespace {

constexpr double kTieTolerance = 1e-9;

struct Hypothesis {
  double statistic;
  double score;
};

double gumbel_log_density(double x, double lambda) {
  const double z = x / lambda;
  return -std::log(lambda) - z - std::exp(-z);
}

// `log_model` is the hypothesis on the log scale; `multiplier` maps T to the
// quantity that converges to ln 2 under it.
Hypothesis evaluate(const TailModel& log_model, double multiplier, double t_n, std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double log_k = std::log(kk);
  const double a_k = rho_numeric(log_model, kk / nn);
  const double lambda = rho_numeric(log_model, 1.0 / nn) / a_k;
  // multiplier * T = (multiplier / ln k) * spacing, and the spacing fluctuates
  // on the scale a_k.
  const double scale = multiplier * a_k / log_k;
  const double statistic = (multiplier * t_n - std::numbers::ln2) / scale;
  const double score = gumbel_log_density(statistic, lambda) + std::log(multiplier / scale);
  return {statistic, score};
}

}  // namespace

std::string_view to_string(ModelChoice choice) {
  switch (choice) {
    case ModelChoice::Normal: return "Normal";
    case ModelChoice::Exponential: return "Exponential";
    case ModelChoice::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ModelVerdict classify(const SortedSample& sample, const KPolicy& policy) {
  const std::size_t n = sample.size();
  if (n < 100) {
    throw Error(ErrorKind::InsufficientSample, "the model test needs n >= 100, got " + std::to_string(n));
  }
  const std::size_t k = select_k(policy, n);
  const double t_n = de_haan_resnick_log_scale(sample, k).t_n;
  const double log_n = std::log(static_cast<double>(n));

  static const TailModel log_exponential = transform_log(make_model("exponential"));
  static const TailModel log_normal_tail = transform_log(make_model("normal-tail"));

  const Hypothesis expo = evaluate(log_exponential, 0.5 * log_n, t_n, n, k);
  const Hypothesis norm = evaluate(log_normal_tail, log_n, t_n, n, k);

  ModelVerdict verdict;
  verdict.t_n = t_n;
  verdict.k = k;
  verdict.statistic_exponential = expo.statistic;
  verdict.statistic_normal = norm.statistic;
  if (t_n == 0.0) {
    verdict.score_exponential = -std::numeric_limits<double>::infinity();
    verdict.score_normal = -std::numeric_limits<double>::infinity();
    verdict.chosen = ModelChoice::Inconclusive;
    return verdict;
  }
  verdict.score_exponential = expo.score;
  verdict.score_normal = norm.score;
  // Equal scores first: both can be -inf far out in the left tail.
  if (norm.score == expo.score || std::abs(norm.score - expo.score) <= kTieTolerance) {
    verdict.chosen = ModelChoice::Inconclusive;
  } else {
    verdict.chosen = norm.score > expo.score ? ModelChoice::Normal : ModelChoice::Exponential;
  }
  return verdict;
}

}  // namespace drtail
