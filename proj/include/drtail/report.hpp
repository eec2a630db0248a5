#pragma once

#include <optional>
#include <ostream>

#include <json.hpp>

#include "drtail/mc_engine.hpp"
#include "drtail/model_select.hpp"

namespace drtail {

inline constexpr int kJsonSchema = 1;

/// `replicate,t_n,normalized`, one row per replicate, full double precision.
void write_replicates_csv(std::ostream& out, const ReplicateSet& set);

/// Summary of a replicate run: mean/median of T_n and of the normalized
/// statistic, norming constants and, when given, the KS report.
nlohmann::json summary_json(const ReplicateSet& set, const std::optional<KsReport>& ks);

nlohmann::json to_json(const KsReport& report);
nlohmann::json to_json(const ModelVerdict& verdict);
nlohmann::json to_json(const SimulationTable& table);
nlohmann::json to_json(const NormingConstants& nc);

}  // namespace drtail
