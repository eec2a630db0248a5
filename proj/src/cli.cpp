#include "drtail/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "drtail/error.hpp"
#include "drtail/estimators.hpp"
#include "drtail/mc_engine.hpp"
#include "drtail/model_select.hpp"
#include "drtail/report.hpp"
#include "drtail/tail_models.hpp"

namespace drtail::cli {
namespace {

// Raised for invalid flag combinations found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void header(std::ostream& os, const RunConfig& config) { os << "# config " << to_json(config).dump() << '\n'; }

void print_json(std::ostream& os, nlohmann::json j, const RunConfig& config) {
  j["config"] = to_json(config);
  os << j.dump(2) << '\n';
}

KPolicy resolve_policy(const RunConfig& config) {
  try {
    return parse_k_policy(config.k_policy);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

TailModel resolve_model(const RunConfig& config) {
  if (config.model.empty()) throw UsageError("--model is required");
  try {
    return make_model(config.model);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownModel) throw UsageError(e.what());
    throw;
  }
}

void require_format(const RunConfig& config, std::initializer_list<std::string_view> allowed) {
  for (auto f : allowed) {
    if (config.format == f) return;
  }
  throw UsageError("format '" + config.format + "' is not available for '" + config.command + "'");
}

int run_estimate(const RunConfig& config, std::ostream& out) {
  require_format(config, {"text", "json"});
  const KPolicy policy = resolve_policy(config);
  const auto sample = SortedSample::from_unsorted(read_values(config.input));
  const auto k = select_k(policy, sample.size());
  const auto t = de_haan_resnick(sample, k);
  const double h = hill(sample, k);
  Output os(config.out, out);
  if (config.format == "json") {
    print_json(*os, {{"schema", kJsonSchema}, {"n", sample.size()}, {"k", k}, {"t_n", t.t_n}, {"h_n", h}}, config);
  } else {
    header(*os, config);
    *os << "n " << sample.size() << "\nk " << k << "\nt_n " << fixed6(t.t_n) << "\nh_n " << fixed6(h) << '\n';
  }
  return kExitOk;
}

int run_norming(const RunConfig& config, std::ostream& out) {
  require_format(config, {"text", "json"});
  const KPolicy policy = resolve_policy(config);
  const TailModel model = resolve_model(config);
  const auto k = select_k(policy, config.n);
  const auto nc = norming(model, config.n, k);

  nlohmann::json probe = nlohmann::json::array();
  for (std::size_t n = config.n, step = 0; step < 4; ++step, n *= 10) {
    try {
      probe.push_back({{"n", n}, {"k", select_k(policy, n)}, {"lambda", lambda_ratio(model, policy, n)}});
    } catch (const Error&) {
      break;
    }
  }
  Output os(config.out, out);
  if (config.format == "json") {
    auto j = to_json(nc);
    j["schema"] = kJsonSchema;
    j["model"] = model.name;
    j["lambda_probe"] = probe;
    print_json(*os, j, config);
  } else {
    header(*os, config);
    *os << "model " << model.name << "\nn " << config.n << "\nk " << k << "\na_n " << fixed6(nc.a_n)
        << "\nb_n " << fixed6(nc.b_n) << "\nlambda " << (nc.lambda ? fixed6(*nc.lambda) : "unknown") << '\n';
    for (const auto& p : probe) {
      *os << "lambda_probe n=" << p["n"].get<std::size_t>() << " k=" << p["k"].get<std::size_t>() << " "
          << fixed6(p["lambda"].get<double>()) << '\n';
    }
  }
  return kExitOk;
}

std::optional<KsReport> gumbel_check(const ReplicateSet& set) {
  if (!set.norming.lambda || !(*set.norming.lambda > 0.0)) return std::nullopt;
  return ks_distance(set.normalized, *set.norming.lambda);
}

int run_simulate(const RunConfig& config, std::ostream& out, bool ks_only) {
  require_format(config, ks_only ? std::initializer_list<std::string_view>{"text", "json"}
                                 : std::initializer_list<std::string_view>{"csv", "json"});
  if (config.reps == 0) throw UsageError("--reps must be positive");
  const KPolicy policy = resolve_policy(config);
  const TailModel model = resolve_model(config);
  const auto set = run_replicates(model, config.n, policy, config.reps, {config.seed, config.stream}, config.threads);
  const auto ks = gumbel_check(set);
  Output os(config.out, out);
  if (config.format == "json") {
    print_json(*os, summary_json(set, ks), config);
  } else if (config.format == "csv") {
    header(*os, config);
    write_replicates_csv(*os, set);
  } else {
    header(*os, config);
    *os << "model " << set.model_name << "\nn " << set.n << "\nk " << set.k << "\nreps " << set.M
        << "\nmean_t_n " << fixed6(mean(set.raw_t)) << "\nmedian_t_n " << fixed6(median(set.raw_t));
    if (ks) {
      *os << "\nlambda " << fixed6(ks->scale_lambda) << "\nks " << fixed6(ks->ks) << "\nthreshold "
          << fixed6(ks->threshold) << "\npass " << (ks->pass ? "true" : "false");
    } else {
      *os << "\nks unavailable (lambda unknown)";
    }
    *os << '\n';
  }
  return kExitOk;
}

int run_table(const RunConfig& config, std::ostream& out) {
  require_format(config, {"text", "json"});
  const auto table = reproduce_table({config.seed, config.stream}, config.n_total);
  Output os(config.out, out);
  if (config.format == "json") {
    print_json(*os, to_json(table), config);
    return kExitOk;
  }
  header(*os, config);
  *os << "n\t(1/2 log n)T_n1\t(log n)T_n2\tT_n3\tu_{N-n+1}\n";
  for (const auto& r : table.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu\t%.4f\t%.4f\t%.5f\t%.6f\n", r.n, r.half_log_n_t1, r.log_n_t2, r.t3,
                  r.uniform);
    *os << buf;
  }
  return kExitOk;
}

int run_test(const RunConfig& config, std::ostream& out) {
  require_format(config, {"text", "json"});
  const KPolicy policy = resolve_policy(config);
  const auto sample = SortedSample::from_unsorted(read_values(config.input));
  const auto verdict = classify(sample, policy);
  Output os(config.out, out);
  if (config.format == "json") {
    print_json(*os, to_json(verdict), config);
  } else {
    header(*os, config);
    *os << "chosen " << to_string(verdict.chosen) << "\nscore_normal " << fixed6(verdict.score_normal)
        << "\nscore_exponential " << fixed6(verdict.score_exponential) << '\n';
  }
  return kExitOk;
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command}, {"model", c.model},   {"n", c.n},          {"k_policy", c.k_policy},
          {"reps", c.reps},       {"seed", c.seed},     {"stream", c.stream}, {"format", c.format},
          {"out", c.out},         {"input", c.input},   {"n_total", c.n_total}, {"threads", c.threads}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.model = j.at("model").get<std::string>();
  c.n = j.at("n").get<std::size_t>();
  c.k_policy = j.at("k_policy").get<std::string>();
  c.reps = j.at("reps").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.stream = j.at("stream").get<std::uint64_t>();
  c.format = j.at("format").get<std::string>();
  c.out = j.at("out").get<std::string>();
  c.input = j.at("input").get<std::string>();
  c.n_total = j.at("n_total").get<std::size_t>();
  c.threads = j.at("threads").get<unsigned>();
  return c;
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
    }
    values.push_back(v);
  }
  return values;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"De Haan-Resnick tail estimation, norming and Monte Carlo checks", "drtail"};
  app.require_subcommand(1);
  RunConfig config;
  std::optional<std::size_t> fixed_k;
  std::string policy_flag;

  auto add_policy = [&](CLI::App* sub) {
    auto* k_opt = sub->add_option("--k", fixed_k, "fixed k (shorthand for --k-policy fixed:<k>)");
    auto* p_opt = sub->add_option("--k-policy", policy_flag, "sqrt | logpow:<l> | fixed:<k>");
    k_opt->excludes(p_opt);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "output format");
    sub->add_option("--out", config.out, "output path (default: stdout)");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", config.model, "model name")->required();
    sub->add_option("--n", config.n, "sample size");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--reps", config.reps, "replicate count");
    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--stream", config.stream, "first RNG stream id");
    sub->add_option("--threads", config.threads, "worker threads (0 = all cores)");
  };

  auto* estimate = app.add_subcommand("estimate", "T_n and H_n of a data file");
  estimate->add_option("file", config.input, "newline-delimited numbers")->required();
  add_policy(estimate);
  add_output(estimate);

  auto* norming_cmd = app.add_subcommand("norming", "a_n, b_n and a lambda probe for a model");
  add_model(norming_cmd);
  add_policy(norming_cmd);
  add_output(norming_cmd);

  auto* simulate = app.add_subcommand("simulate", "replicate T_n and the normalized statistic");
  add_model(simulate);
  add_policy(simulate);
  add_sim(simulate);
  add_output(simulate);

  auto* ks = app.add_subcommand("ks", "simulate and compare against the scaled Gumbel law");
  add_model(ks);
  add_policy(ks);
  add_sim(ks);
  add_output(ks);

  auto* table = app.add_subcommand("table", "the ten-row exponential/normal/Pareto table");
  table->add_option("--seed", config.seed, "RNG seed");
  table->add_option("--stream", config.stream, "RNG stream id");
  table->add_option("--n-total", config.n_total, "size of the uniform sample");
  add_output(table);

  auto* test = app.add_subcommand("test", "normal-versus-exponential test on a data file");
  test->add_option("file", config.input, "newline-delimited positive numbers")->required();
  add_policy(test);
  add_output(test);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    config.command = sub->get_name();
    if (fixed_k) {
      config.k_policy = "fixed:" + std::to_string(*fixed_k);
    } else if (!policy_flag.empty()) {
      config.k_policy = policy_flag;
    }
    if (config.format.empty()) {
      config.format = config.command == "simulate" ? "csv" : config.command == "test" ? "json" : "text";
    }
    if (config.command == "estimate") return run_estimate(config, out);
    if (config.command == "norming") return run_norming(config, out);
    if (config.command == "simulate") return run_simulate(config, out, false);
    if (config.command == "ks") return run_simulate(config, out, true);
    if (config.command == "table") return run_table(config, out);
    if (config.command == "test") return run_test(config, out);
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("drtail");
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace drtail::cli
