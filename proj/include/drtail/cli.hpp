#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace drtail::cli {

/// Everything a subcommand needs; echoed into every output so a run can be
/// repeated from its own header.
struct RunConfig {
  std::string command;
  std::string model;
  std::size_t n = 4000;
  std::string k_policy = "sqrt";
  std::size_t reps = 200;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::string format;
  std::string out;
  std::string input;
  std::size_t n_total = 4000;
  unsigned threads = 0;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs one subcommand: estimate, norming, simulate, ks, table or test.
/// Returns 0 on success, 1 on a usage error and 2 on a domain error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Newline-delimited decimal numbers; blank lines and lines starting with '#'
/// are skipped.
std::vector<double> read_values(const std::string& path);

}  // namespace drtail::cli
