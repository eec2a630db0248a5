#pragma once

#include <string_view>

#include "drtail/k_policy.hpp"
#include "drtail/sample.hpp"

namespace drtail {

enum class ModelChoice { Normal, Exponential, Inconclusive };

std::string_view to_string(ModelChoice choice);

struct ModelVerdict {
  ModelChoice chosen = ModelChoice::Inconclusive;
  double score_normal = 0.0;
  double score_exponential = 0.0;
  double statistic_normal = 0.0;
  double statistic_exponential = 0.0;
  double t_n = 0.0;
  std::size_t k = 0;
};

/// Normal-versus-exponential test on a positive sample.
///
/// With T the log-scale De Haan-Resnick estimate, the exponential hypothesis
/// predicts (ln n / 2) T -> ln 2 and the normal hypothesis (ln n) T -> ln 2.
/// Each scaled value is centered at ln 2 and divided by its fluctuation scale
/// under that hypothesis (the log-scale auxiliary function at k/n, carried
/// through the scaling). The score is the log-likelihood of T under the
/// lambda-scaled Gumbel limit: the Gumbel log-density at the statistic plus
/// the log-Jacobian of the map from T. The larger score wins; a gap of at
/// most 1e-9 is Inconclusive, as is T = 0, which neither law can produce.
///
/// This scoring rule is our own construction for turning the two limits into
/// a decision; the limits themselves only say where each model centers.
ModelVerdict classify(const SortedSample& sample, const KPolicy& policy);

}  // namespace drtail
