#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "meshsoc/attack.hpp"
#include "meshsoc/centrality.hpp"
#include "meshsoc/csv.hpp"
#include "meshsoc/error.hpp"
#include "meshsoc/graph.hpp"
#include "meshsoc/stdma.hpp"
#include "meshsoc/topology_io.hpp"

#ifndef MESHSOC_VERSION
#define MESHSOC_VERSION "0.0.0"
#endif

namespace meshsoc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view tool_version() noexcept { return MESHSOC_VERSION; }

json to_json(const RunManifest& m) {
  return json{{"command", m.command},       {"config", m.config},
              {"seed", m.seed},             {"output_dir", m.output_dir},
              {"tool_version", m.tool_version}, {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const json& j) {
  for (const char* key : {"command", "config"})
    if (!j.contains(key)) throw InvalidArgument(std::string("manifest lacks '") + key + "'");
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config = j.at("config");
  m.seed = j.value("seed", std::uint64_t{0});
  m.output_dir = j.value("output_dir", std::string{});
  m.tool_version = j.value("tool_version", std::string{});
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

RunManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  try {
    return manifest_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed manifest '" + path.string() + "': " + e.what());
  }
}

namespace {

// Flags that steer where and how a run reports, not what it computes.
const std::vector<std::string> kRunFlags = {"out", "config", "quiet", "help"};

struct Common {
  std::string out;
  std::string config;
  bool quiet = false;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--out", common.out,
                  std::string("Output directory (default: $") + kOutputDirEnv + " or .)");
  sub->add_option("--config", common.config,
                  "JSON file of flag values (or a run manifest); explicit flags win");
  sub->add_flag("--quiet", common.quiet, "Suppress progress messages");
}

fs::path resolve_output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

std::string flag_name(const std::string& arg) {
  if (arg.rfind("--", 0) != 0) return {};
  const auto eq = arg.find('=');
  return arg.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

std::string json_scalar_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Appends "--key value" for every config key not already given explicitly.
std::vector<std::string> merge_config(std::vector<std::string> args, const json& config) {
  std::vector<std::string> present;
  for (const auto& a : args)
    if (auto name = flag_name(a); !name.empty()) present.push_back(std::move(name));
  for (const auto& [key, value] : config.items()) {
    if (std::find(kRunFlags.begin(), kRunFlags.end(), key) != kRunFlags.end()) continue;
    if (std::find(present.begin(), present.end(), key) != present.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    if (value.is_null()) continue;
    args.push_back("--" + key);
    args.push_back(json_scalar_to_arg(value));
  }
  return args;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
  // A run manifest nests its flags under "config".
  if (j.contains("command") && j.contains("config")) return j.at("config");
  return j;
}

// Resolved value of every computational flag of `sub`.
json capture_config(const CLI::App* sub) {
  json config = json::object();
  for (const auto* opt : sub->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty()) continue;
    const auto& name = names.front();
    if (std::find(kRunFlags.begin(), kRunFlags.end(), name) != kRunFlags.end()) continue;
    if (opt->get_type_size() == 0) {
      config[name] = opt->count() > 0;
      continue;
    }
    if (opt->count() > 0) {
      config[name] = opt->results().front();
    } else if (const auto def = opt->get_default_str(); !def.empty()) {
      config[name] = def;
    }
  }
  return config;
}

std::vector<CentralityMetric> parse_metrics(const std::string& text) {
  if (text == "all") return {std::begin(kAllMetrics), std::end(kAllMetrics)};
  std::vector<CentralityMetric> metrics;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto m = parse_metric(item);
    if (!m) throw InvalidArgument("unknown metric '" + item + "'");
    if (std::find(metrics.begin(), metrics.end(), *m) == metrics.end()) metrics.push_back(*m);
  }
  if (metrics.empty()) throw InvalidArgument("no metrics given");
  return metrics;
}

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  const auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("bad rate '" + s + "' in '" + text + "'");
    }
  };
  if (const auto c1 = text.find(':'); c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("rate range must be start:stop:step");
    const double start = to_double(text.substr(0, c1));
    const double stop = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = to_double(text.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) throw InvalidArgument("empty rate range '" + text + "'");
    for (std::size_t k = 0;; ++k) {
      const double r = start + static_cast<double>(k) * step;
      if (r > stop + 1e-9 * step) break;
      rates.push_back(r);
    }
    return rates;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) rates.push_back(to_double(item));
  if (rates.empty()) throw InvalidArgument("no rates given");
  return rates;
}

std::map<std::string, NodeId> label_index(const Graph& g) {
  std::map<std::string, NodeId> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.emplace(g.label(i), g.id(i));
  return out;
}

// Lines "<src> <dst> [rate]"; `#` comments.
std::vector<stdma::Flow> load_flows(const std::string& path, const Graph& g, double default_rate) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open flow file '" + path + "'");
  const auto labels = label_index(g);
  std::vector<stdma::Flow> flows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string src, dst, rate;
    if (!(fields >> src) || src.front() == '#') continue;
    if (!(fields >> dst)) throw ParseError(line_no, "flow needs a source and a destination");
    fields >> rate;
    const auto s = labels.find(src);
    const auto d = labels.find(dst);
    if (s == labels.end() || d == labels.end())
      throw ParseError(line_no, "flow endpoint not in topology");
    double r = default_rate;
    if (!rate.empty()) {
      try {
        r = std::stod(rate);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad rate '" + rate + "'");
      }
    }
    flows.push_back({s->second, d->second, r});
  }
  return flows;
}

class Progress {
 public:
  Progress(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}
  void operator()(const std::string& message) const {
    if (!quiet_) err_ << message << '\n';
  }

 private:
  std::ostream& err_;
  bool quiet_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void write_manifest(const fs::path& dir, RunManifest manifest) {
  manifest.output_dir = dir.string();
  manifest.tool_version = std::string(tool_version());
  write_text(dir / kManifestName, to_json(manifest).dump(2) + "\n");
}

std::uint64_t config_seed(const json& config) {
  if (!config.contains("seed")) return 0;
  const auto& v = config.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  return std::stoull(json_scalar_to_arg(v));
}

// ---- command parameter blocks ------------------------------------------

struct CentralityArgs {
  std::string topo;
  std::string metrics = "all";
  std::size_t top = 0;
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
};

struct AttackArgs {
  std::string topo;
  std::string metrics = "betweenness,closeness,degree";
  std::optional<std::size_t> removals;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  bool recompute = false;
};

struct StdmaArgs {
  std::string topo;
  std::string mode = "social";
  double rate = 1000.0;
  std::size_t frame = 20;
  std::uint32_t scale = 10;
  double duration = 60.0;
  std::uint64_t seed = 1;
  std::string flows = "all-pairs";
  double packet = 500.0;
  double slot = 0.005;
};

struct SweepArgs {
  std::string topo;
  std::string rates = "650:1350:100";
  std::size_t seeds = 20;
  std::size_t frame = 20;
  std::uint32_t scale = 10;
  double duration = 60.0;
  std::uint64_t seed = 1;
  std::string flows = "all-pairs";
  double packet = 500.0;
  double slot = 0.005;
};

struct GenTopoArgs {
  std::size_t n = 200;
  double degree = 8.0;
  std::uint64_t seed = 1;
};

void add_stdma_shared(CLI::App* sub, std::size_t& frame, std::uint32_t& scale, double& duration,
                      std::uint64_t& seed, std::string& flows, double& packet, double& slot) {
  sub->add_option("--frame", frame, "Slots per frame")->check(CLI::PositiveNumber);
  sub->add_option("--scale", scale, "Tickets granted to closeness 1.0")->check(CLI::PositiveNumber);
  sub->add_option("--duration", duration, "Simulated seconds")->check(CLI::PositiveNumber);
  sub->add_option("--seed", seed, "Run seed");
  sub->add_option("--flows", flows, "all-pairs, or a file of '<src> <dst> [rate]' lines");
  sub->add_option("--packet", packet, "Packet size in bits")->check(CLI::PositiveNumber);
  sub->add_option("--slot", slot, "Slot duration in seconds")->check(CLI::PositiveNumber);
}

stdma::StdmaConfig stdma_base(const Graph& g, std::size_t frame, std::uint32_t scale,
                              double duration, std::uint64_t seed, const std::string& flows,
                              double packet, double slot, double rate) {
  stdma::StdmaConfig cfg;
  cfg.graph = g;
  cfg.frame_size = frame;
  cfg.ticket_scale = scale;
  cfg.sim_duration = duration;
  cfg.seed = seed;
  cfg.packet_bits = packet;
  cfg.slot_duration = slot;
  cfg.flows = flows == "all-pairs" ? stdma::all_pairs_flows(g, rate) : load_flows(flows, g, rate);
  return cfg;
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err, int depth);

int run_replay(const std::string& manifest_path, const std::string& out_flag, bool quiet,
               std::ostream& out, std::ostream& err, int depth) {
  if (depth > 0) throw InvalidArgument("a manifest cannot replay another replay");
  const auto manifest = read_manifest(manifest_path);
  if (manifest.command == "replay") throw InvalidArgument("cannot replay a replay manifest");
  std::vector<std::string> args{manifest.command};
  args = merge_config(std::move(args), manifest.config);
  args.push_back("--out");
  args.push_back(out_flag.empty() ? manifest.output_dir : out_flag);
  if (quiet) args.push_back("--quiet");
  return dispatch(std::move(args), out, err, depth + 1);
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err, int depth) {
  if (!args.empty()) {
    if (const auto path = find_config_path(args)) args = merge_config(args, load_config_file(*path));
  }

  CLI::App app{"Social centrality analysis and experiments for wireless mesh topologies",
               "meshsoc"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(tool_version()));

  Common common;

  CentralityArgs c;
  auto* centrality = app.add_subcommand("centrality", "Score and rank nodes by centrality");
  centrality->add_option("--topo", c.topo, "Edge-list topology file")->required();
  centrality->add_option("--metrics", c.metrics,
                         "all, or a comma list of degree,closeness,betweenness,eigenvector");
  centrality->add_option("--top", c.top, "Also write the top-K ranking per metric");
  centrality->add_option("--tol", c.tol, "Eigenvector convergence tolerance")
      ->check(CLI::PositiveNumber);
  centrality->add_option("--max-iter", c.max_iter, "Eigenvector iteration cap");
  add_common(centrality, common);

  AttackArgs a;
  auto* attack_cmd = app.add_subcommand("attack", "Targeted node-removal experiment");
  attack_cmd->add_option("--topo", a.topo, "Edge-list topology file")->required();
  attack_cmd->add_option("--metrics", a.metrics, "Comma list of metrics to target, or all");
  attack_cmd->add_option("--removals", a.removals,
                         "Nodes to remove (default: 5, or 20% of n above 25 nodes)");
  attack_cmd->add_option("--trials", a.trials, "Random-baseline trials")
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--seed", a.seed, "Random-baseline seed");
  attack_cmd->add_flag("--recompute", a.recompute, "Re-rank the residual graph after each removal");
  add_common(attack_cmd, common);

  StdmaArgs s;
  auto* stdma_cmd = app.add_subcommand("stdma", "One socially-aware or random STDMA run");
  stdma_cmd->add_option("--topo", s.topo, "Edge-list topology file")->required();
  stdma_cmd->add_option("--mode", s.mode, "social or random")
      ->check(CLI::IsMember({"social", "random"}));
  stdma_cmd->add_option("--rate", s.rate, "Per-flow CBR rate in bits/s")
      ->check(CLI::PositiveNumber);
  add_stdma_shared(stdma_cmd, s.frame, s.scale, s.duration, s.seed, s.flows, s.packet, s.slot);
  add_common(stdma_cmd, common);

  SweepArgs w;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Delay-vs-throughput table for both modes across rates");
  sweep_cmd->add_option("--topo", w.topo, "Edge-list topology file")->required();
  sweep_cmd->add_option("--rates", w.rates, "start:stop:step or a comma list, in bits/s");
  sweep_cmd->add_option("--seeds", w.seeds, "Seeds averaged per cell")->check(CLI::PositiveNumber);
  add_stdma_shared(sweep_cmd, w.frame, w.scale, w.duration, w.seed, w.flows, w.packet, w.slot);
  add_common(sweep_cmd, common);

  GenTopoArgs t;
  auto* gen = app.add_subcommand("gen-topo", "Connected random geometric topology");
  gen->add_option("--n", t.n, "Node count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  gen->add_option("--degree", t.degree, "Target mean degree")->check(CLI::PositiveNumber);
  gen->add_option("--seed", t.seed, "Generator seed");
  add_common(gen, common);

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "manifest.json of an earlier run")->required();
  replay->add_option("--out", common.out, "Output directory (default: the recorded one)");
  replay->add_flag("--quiet", common.quiet, "Suppress progress messages");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  const Progress progress(err, common.quiet);

  if (replay->parsed()) return run_replay(manifest_path, common.out, common.quiet, out, err, depth);

  const auto dir = resolve_output_dir(common.out);
  fs::create_directories(dir);

  CLI::App* const sub = app.get_subcommands().front();
  RunManifest manifest;
  manifest.command = sub->get_name();
  manifest.config = capture_config(sub);
  manifest.seed = config_seed(manifest.config);

  if (centrality->parsed()) {
    const auto g = load_edge_list(c.topo);
    const auto metrics = parse_metrics(c.metrics);
    const EigenvectorOptions eig{c.tol, c.max_iter};
    CsvTable scores_table{{"node_label", "metric", "value"}, 2, {}};
    CsvTable ranking_table{{"metric", "rank", "node_label", "value"}, 2, {}};
    for (const auto metric : metrics) {
      const auto scores = compute_centrality(g, metric, eig);
      for (std::size_t i = 0; i < scores.size(); ++i)
        scores_table.rows.push_back(
            {g.label(i), std::string(to_string(metric)), scores.values[i]});
      if (c.top > 0) {
        const auto ranked = rank_nodes(scores, std::min(c.top, scores.size()));
        for (std::size_t r = 0; r < ranked.order.size(); ++r)
          ranking_table.rows.push_back({std::string(to_string(metric)),
                                        static_cast<std::int64_t>(r + 1),
                                        g.label(g.index(ranked.order[r].first)),
                                        ranked.order[r].second});
      }
    }
    write_csv(scores_table, dir / "centrality.csv");
    manifest.outputs.push_back("centrality.csv");
    if (c.top > 0) {
      write_csv(ranking_table, dir / "ranking.csv");
      manifest.outputs.push_back("ranking.csv");
    }
    progress("centrality: " + std::to_string(g.size()) + " nodes, " +
             std::to_string(metrics.size()) + " metric(s) -> " + (dir / "centrality.csv").string());
  } else if (attack_cmd->parsed()) {
    attack::AttackConfig cfg;
    cfg.graph = load_edge_list(a.topo);
    cfg.metrics = parse_metrics(a.metrics);
    cfg.max_removals = a.removals.value_or(attack::default_max_removals(cfg.graph.size()));
    cfg.random_trials = a.trials;
    cfg.seed = a.seed;
    cfg.mode = a.recompute ? attack::RecomputeMode::Recompute : attack::RecomputeMode::Static;
    const auto result = attack::run_attack_experiment(cfg);
    write_csv(attack::to_csv(result), dir / "attack.csv");
    manifest.outputs.push_back("attack.csv");
    progress("attack: " + std::to_string(cfg.max_removals) + " removals over " +
             std::to_string(cfg.graph.size()) + " nodes -> " + (dir / "attack.csv").string());
  } else if (stdma_cmd->parsed()) {
    const auto g = load_edge_list(s.topo);
    auto cfg = stdma_base(g, s.frame, s.scale, s.duration, s.seed, s.flows, s.packet, s.slot,
                          s.rate);
    cfg.mode = s.mode == "social" ? stdma::Mode::SociallyAware : stdma::Mode::RandomBaseline;
    const auto result = stdma::simulate(cfg);
    auto table = stdma::result_table();
    stdma::append_result(table, cfg.mode, s.rate, result);
    write_csv(table, dir / "stdma.csv");
    manifest.outputs.push_back("stdma.csv");
    progress("stdma " + s.mode + ": delivered " + std::to_string(result.delivered) + "/" +
             std::to_string(result.generated) + " packets -> " + (dir / "stdma.csv").string());
  } else if (sweep_cmd->parsed()) {
    const auto g = load_edge_list(w.topo);
    const auto rates = parse_rates(w.rates);
    auto base = stdma_base(g, w.frame, w.scale, w.duration, w.seed, w.flows, w.packet, w.slot,
                           rates.front());
    if (w.flows == "all-pairs") base.flows.clear();
    const auto rows = stdma::sweep(base, rates, w.seeds);
    write_csv(stdma::sweep_table(rows), dir / "sweep.csv");
    manifest.outputs.push_back("sweep.csv");
    progress("sweep: " + std::to_string(rates.size()) + " rates x " + std::to_string(w.seeds) +
             " seeds x 2 modes -> " + (dir / "sweep.csv").string());
  } else if (gen->parsed()) {
    const auto g = random_geometric_graph(t.n, t.degree, t.seed);
    write_text(dir / "topology.txt", format_edge_list(g));
    manifest.outputs.push_back("topology.txt");
    progress("gen-topo: " + std::to_string(g.size()) + " nodes, " +
             std::to_string(g.edge_count()) + " edges -> " + (dir / "topology.txt").string());
  }

  write_manifest(dir, std::move(manifest));
  return kOk;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, 0);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace meshsoc::cli
