#include "drtail/report.hpp"

#include <iomanip>
#include <limits>

namespace drtail {

void write_replicates_csv(std::ostream& out, const ReplicateSet& set) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "replicate,t_n,normalized\n";
  for (std::size_t i = 0; i < set.M; ++i) {
    out << i << ',' << set.raw_t[i] << ',' << set.normalized[i] << '\n';
  }
  out.precision(old_precision);
}

nlohmann::json to_json(const NormingConstants& nc) {
  nlohmann::json j;
  j["a_n"] = nc.a_n;
  j["b_n"] = nc.b_n;
  j["lambda"] = nc.lambda ? nlohmann::json(*nc.lambda) : nlohmann::json(nullptr);
  j["n"] = nc.n;
  j["k"] = nc.k;
  return j;
}

nlohmann::json to_json(const KsReport& report) {
  return {{"ks", report.ks},
          {"M", report.M},
          {"threshold", report.threshold},
          {"pass", report.pass},
          {"scale_lambda", report.scale_lambda}};
}

nlohmann::json summary_json(const ReplicateSet& set, const std::optional<KsReport>& ks) {
  nlohmann::json j;
  j["schema"] = kJsonSchema;
  j["model"] = set.model_name;
  j["n"] = set.n;
  j["k"] = set.k;
  j["reps"] = set.M;
  j["seed"] = set.rng.seed;
  j["stream_id"] = set.rng.stream_id;
  j["norming"] = to_json(set.norming);
  j["mean"] = mean(set.raw_t);
  j["median"] = median(set.raw_t);
  j["mean_normalized"] = mean(set.normalized);
  j["median_normalized"] = median(set.normalized);
  if (ks) {
    j["ks"] = ks->ks;
    j["ks_threshold"] = ks->threshold;
    j["pass"] = ks->pass;
    j["scale_lambda"] = ks->scale_lambda;
  } else {
    j["ks"] = nullptr;
    j["pass"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const ModelVerdict& verdict) {
  return {{"schema", kJsonSchema},
          {"chosen", std::string(to_string(verdict.chosen))},
          {"score_normal", verdict.score_normal},
          {"score_exponential", verdict.score_exponential},
          {"statistic_normal", verdict.statistic_normal},
          {"statistic_exponential", verdict.statistic_exponential},
          {"t_n", verdict.t_n},
          {"k", verdict.k}};
}

nlohmann::json to_json(const SimulationTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"k", r.k},
                    {"half_log_n_t1", r.half_log_n_t1},
                    {"log_n_t2", r.log_n_t2},
                    {"t3", r.t3},
                    {"uniform", r.uniform}});
  }
  return {{"schema", kJsonSchema},
          {"seed", table.rng.seed},
          {"n_total", table.n_total},
          {"max_identity_residual", table.max_identity_residual},
          {"rows", rows}};
}

}  // namespace drtail
