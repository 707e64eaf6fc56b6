#include "spinlink/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spinlink/chainopt.hpp"
#include "spinlink/disorder.hpp"
#include "spinlink/error.hpp"
#include "spinlink/inverse.hpp"
#include "spinlink/kernels.hpp"
#include "spinlink/probing.hpp"
#include "spinlink/receiver.hpp"
#include "spinlink/reference_values.hpp"
#include "spinlink/reproduce.hpp"

namespace spinlink::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Artifacts are buffered and written only after the command succeeded, each
// through a temporary file and a rename.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  std::string stdout_text;

  void emit(const json& config, const std::string& key, std::string content) {
    if (config.contains(key) && config.at(key).is_string()) {
      files.emplace_back(config.at(key).get<std::string>(), std::move(content));
    } else if (key == "out") {
      stdout_text += content;
    }
  }
};

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot open {} for writing", tmp.string()));
    f << content;
    f.flush();
    if (!f) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError(fmt::format("write to {} failed", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot move output into {}", path));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(fmt::format("cannot read {}", path));
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{} is not valid JSON: {}", path, e.what()));
  }
}

std::string provenance(const json& config) {
  return fmt::format("spinlink {}\nconfig: {}", kVersion, config.dump());
}

// ---- config access ------------------------------------------------------

template <class T>
T get(const json& config, const char* key) {
  if (!config.contains(key)) throw ConfigError(fmt::format("missing required field '{}'", key));
  try {
    return config.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("field '{}' has the wrong type", key));
  }
}

template <class T>
T get_or(const json& config, const char* key, T fallback) {
  return config.contains(key) && !config.at(key).is_null() ? get<T>(config, key) : fallback;
}

std::uint64_t require_seed(const json& config) {
  if (!config.contains("seed") || config.at("seed").is_null()) {
    throw ConfigError(fmt::format("'{}' is stochastic and needs an explicit seed", get<std::string>(config, "command")));
  }
  return get<std::uint64_t>(config, "seed");
}

void check_keys(const json& config, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : config.items()) {
    bool ok = key == "command" || key == "threads";
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(fmt::format("unknown field '{}' for {}", key, config.at("command").get<std::string>()));
  }
}

struct ResolvedChain {
  ChainSpec spec = ChainSpec::uniform(2);
  double t = 0.0;
  json info;
};

void validate_chain_block(const json& config) {
  if (!config.contains("chain") || !config.at("chain").is_object()) {
    throw ConfigError("missing 'chain' object");
  }
  const json& c = config.at("chain");
  if (c.contains("preset")) {
    const int n = get<int>(c, "preset");
    if (n != 20 && n != 60) throw ConfigError(fmt::format("no published chain for n = {}", n));
  } else if (c.contains("optimize")) {
    if (get<int>(c, "optimize") < kMinBoundaryControlledNodes) {
      throw ConfigError(fmt::format("optimisation needs n >= {}", kMinBoundaryControlledNodes));
    }
  } else {
    try {
      chain_from_json(c);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (config.contains("t") && !config.at("t").is_number()) throw ConfigError("'t' must be a number");
}

ResolvedChain resolve_chain(const json& config, int threads) {
  const json& c = config.at("chain");
  ResolvedChain out;
  std::optional<double> t;
  if (config.contains("t")) t = config.at("t").get<double>();
  if (c.contains("preset")) {
    const auto preset = published_preset(c.at("preset").get<int>());
    out.spec = ChainSpec::boundary_controlled(preset.n_nodes, preset.delta1, preset.delta2);
    out.t = t.value_or(preset.t0);
  } else if (c.contains("optimize")) {
    BoundaryOptions options;
    options.threads = threads;
    options.grid_step = get_or(c, "grid_step", options.grid_step);
    const int n = c.at("optimize").get<int>();
    const auto opt = optimize_boundary(n, options);
    out.spec = ChainSpec::boundary_controlled(n, opt.delta1, opt.delta2);
    out.t = t.value_or(opt.t0);
  } else {
    out.spec = chain_from_json(c);
    if (t) {
      out.t = *t;
    } else {
      const auto n = out.spec.n_nodes();
      out.t = first_maximum(single_excitation_spectrum(out.spec), 3.0 * n).t0;
    }
  }
  to_json(out.info, out.spec);
  out.info["t"] = out.t;
  return out;
}

LineParams load_or_compute_params(const json& config, int threads, json& info) {
  if (config.contains("params")) {
    const std::string path = get<std::string>(config, "params");
    std::istringstream in(read_file(path));
    info = {{"params", path}};
    return read_params_csv(in, 4);
  }
  const auto chain = resolve_chain(config, threads);
  info = chain.info;
  return line_params_for_chain(chain.spec, chain.t, get_or(config, "n_sender", 4));
}

void validate_params_source(const json& config) {
  if (config.contains("params")) {
    get<std::string>(config, "params");
  } else {
    validate_chain_block(config);
  }
}

json sender_to_json(const SenderState& s) {
  json single = json::array();
  for (const auto& v : s.single) single.push_back({v.real(), v.imag()});
  json pairs = json::array();
  const ExcitationBasis sender(s.n_sender);
  for (std::size_t q = 0; q < s.pair.size(); ++q) {
    const auto p = sender.pair(q);
    pairs.push_back({{"n", p.first}, {"m", p.second}, {"re", s.pair[q].real()}, {"im", s.pair[q].imag()}});
  }
  return {{"a0", s.a0.real()}, {"single", single}, {"pair", pairs}};
}

json matrix_to_json(const Eigen::Matrix4cd& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < 4; ++r) {
    json rr = json::array(), ii = json::array();
    for (int c = 0; c < 4; ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

std::string dump(const json& j) {
  // 17 significant digits round-trip doubles; nlohmann already prints the
  // shortest exact representation.
  return j.dump(2) + "\n";
}

json with_provenance(json body, const json& config) {
  body["provenance"] = {{"tool", fmt::format("spinlink {}", kVersion)}, {"config", config}};
  return body;
}

// ---- commands -----------------------------------------------------------

void validate(const json& config) {
  const std::string command = get<std::string>(config, "command");
  if (config.contains("threads") && get<int>(config, "threads") < 0) throw ConfigError("threads must be >= 0");
  if (command == "optimize-chain") {
    check_keys(config, {"n", "grid_step", "t_max", "dt", "out"});
    if (get<int>(config, "n") < kMinBoundaryControlledNodes) {
      throw ConfigError(fmt::format("optimize-chain needs n >= {}", kMinBoundaryControlledNodes));
    }
    if (get_or(config, "grid_step", 0.01) <= 0.0) throw ConfigError("grid_step must be positive");
  } else if (command == "compute-params") {
    check_keys(config, {"chain", "t", "n_sender", "out", "amplitudes_out"});
    validate_chain_block(config);
  } else if (command == "probe-params") {
    check_keys(config, {"chain", "t", "probes", "n", "out", "probes_out"});
    if (config.contains("probes")) {
      get<std::string>(config, "probes");
    } else {
      validate_chain_block(config);
    }
  } else if (command == "create-state") {
    check_keys(config, {"chain", "t", "params", "target", "seed", "starts", "approximate", "selection", "out"});
    validate_params_source(config);
    require_seed(config);
    const json& target = config.contains("target") ? config.at("target") : json();
    if (!target.is_object() || (!target.contains("werner") && !target.contains("file"))) {
      throw ConfigError("target must be {\"werner\": p} or {\"file\": path}");
    }
    if (target.contains("werner")) {
      const double p = get<double>(target, "werner");
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("Werner p must lie in [0, 1]");
    }
    const auto sel = get_or<std::string>(config, "selection", "first");
    if (sel != "first" && sel != "reference") throw ConfigError("selection must be 'first' or 'reference'");
    if (sel == "reference" && !get_or(config, "approximate", false)) {
      throw ConfigError("selection 'reference' needs approximate = true");
    }
    if (get_or(config, "starts", 64) < 1) throw ConfigError("starts must be positive");
  } else if (command == "feasibility") {
    check_keys(config, {"chain", "t", "params", "seed", "grid", "resolution", "starts", "out"});
    validate_params_source(config);
    require_seed(config);
    if (get_or(config, "resolution", 1e-4) <= 0.0) throw ConfigError("resolution must be positive");
  } else if (command == "disorder-study") {
    check_keys(config, {"chain", "t", "seed", "epsilon", "chains", "p_grid", "out", "params_csv", "werner_csv"});
    validate_chain_block(config);
    require_seed(config);
    if (get<double>(config, "epsilon") < 0.0) throw ConfigError("epsilon must be >= 0");
    if (get_or(config, "chains", kDefaultChainCount) < 2) throw ConfigError("chains must be >= 2");
  } else if (command == "reproduce-paper") {
    check_keys(config, {"n", "seed", "chains", "skip_disorder", "out"});
    const int n = get<int>(config, "n");
    if (n != 20 && n != 60) throw ConfigError("reproduce-paper supports n = 20 and n = 60");
    require_seed(config);
  } else {
    throw ConfigError(fmt::format("unknown command '{}'", command));
  }
}

int run_optimize(const json& config, Artifacts& art) {
  BoundaryOptions options;
  options.grid_step = get_or(config, "grid_step", options.grid_step);
  options.t_max = get_or(config, "t_max", 0.0);
  options.dt = get_or(config, "dt", options.dt);
  options.threads = get_or(config, "threads", 0);
  const auto opt = optimize_boundary(get<int>(config, "n"), options);
  const json body{{"delta1", opt.delta1},
                  {"delta2", opt.delta2},
                  {"t0", opt.t0},
                  {"amplitude", opt.amplitude},
                  {"coarse", {{"delta1", opt.coarse_delta1}, {"delta2", opt.coarse_delta2}, {"amplitude", opt.coarse_amplitude}}},
                  {"evaluations", opt.evaluations}};
  art.emit(config, "out", dump(with_provenance(body, config)));
  return kExitOk;
}

std::string params_csv(const LineParams& params, const json& config) {
  std::vector<Family> tags;
  if (params.n_sender() == 4) tags = classify_families(params).tags;
  std::ostringstream s;
  write_params_csv(s, params, tags, provenance(config));
  return s.str();
}

int run_compute_params(const json& config, Artifacts& art) {
  const int threads = get_or(config, "threads", 0);
  const auto chain = resolve_chain(config, threads);
  const int ns = get_or(config, "n_sender", 4);
  const ExcitationBasis basis(chain.spec.n_nodes());
  const auto amps = propagators(diagonalize(build_blocks(chain.spec, basis)), chain.t, ns);
  const auto params = compute_line_params(amps, ns);
  json cfg = config;
  cfg["resolved_chain"] = chain.info;
  art.emit(config, "out", params_csv(params, cfg));
  if (config.contains("amplitudes_out")) {
    std::ostringstream s;
    write_amplitudes_csv(s, amps);
    art.emit(config, "amplitudes_out", s.str());
  }
  return kExitOk;
}

int run_probe_params(const json& config, Artifacts& art) {
  std::vector<ProbeOutput> outputs;
  int n_nodes = get_or(config, "n", 0);
  double t = get_or(config, "t", 0.0);
  json cfg = config;
  if (config.contains("probes")) {
    outputs = probe_outputs_from_json(read_json_file(get<std::string>(config, "probes")));
  } else {
    const auto chain = resolve_chain(config, get_or(config, "threads", 0));
    cfg["resolved_chain"] = chain.info;
    n_nodes = chain.spec.n_nodes();
    t = chain.t;
    const auto truth = line_params_for_chain(chain.spec, chain.t);
    outputs = simulate_probes(truth, probe_set(4));
    if (config.contains("probes_out")) {
      art.emit(config, "probes_out", probe_outputs_to_json(outputs).dump(2) + "\n");
    }
  }
  const auto params = extract_params(outputs, n_nodes, t);
  art.emit(config, "out", params_csv(params, cfg));
  return kExitOk;
}

InverseOptions inverse_options(const json& config, int default_starts) {
  InverseOptions o;
  o.seed = require_seed(config);
  o.starts = get_or(config, "starts", default_starts);
  o.threads = get_or(config, "threads", 0);
  return o;
}

int run_create_state(const json& config, Artifacts& art) {
  json source;
  const LineParams params = load_or_compute_params(config, get_or(config, "threads", 0), source);
  const json& target_cfg = config.at("target");
  const bool approximate = get_or(config, "approximate", false);
  LineParams solving = params;
  if (approximate) solving = keep_families(params, classify_families(params), {Family::I, Family::II});

  InverseSolution sol;
  TargetState target;
  if (target_cfg.contains("werner")) {
    const double p = target_cfg.at("werner").get<double>();
    target = TargetState::werner(p);
    InverseOptions o = inverse_options(config, 64);
    if (approximate) {
      o.reference = &params;
      if (get_or<std::string>(config, "selection", "first") == "reference") o.selection = SolutionSelection::closest_reference;
    }
    sol = solve_werner(solving, p, o);
  } else {
    target = target_from_json(read_json_file(target_cfg.at("file").get<std::string>()));
    target.validate();
    InverseOptions o = inverse_options(config, 32);
    o.tolerance = 1e-12;
    if (approximate) o.reference = &params;
    sol = solve_general(solving, target, o);
  }
  json body{{"controls", sender_to_json(sol.a)},
            {"residual", sol.residual},
            {"discrepancy", sol.discrepancy},
            {"discrepancy_rounded_controls", sol.rounded_discrepancy},
            {"start", sol.start},
            {"converged_starts", sol.converged_starts},
            {"rho", matrix_to_json(assemble_rho(solving, sol.a).rho)},
            {"source", source}};
  if (sol.reference_discrepancy >= 0.0) body["discrepancy_full_params"] = sol.reference_discrepancy;
  if (target_cfg.contains("werner")) {
    json aij;
    const ExcitationBasis sender(4);
    for (std::size_t q = 0; q < sol.a.pair.size(); ++q) {
      const auto p = sender.pair(q);
      aij[fmt::format("a{}{}", p.first, p.second)] = sol.a.pair[q].real();
    }
    body["a_ij"] = aij;
  }
  art.emit(config, "out", dump(with_provenance(body, config)));
  return kExitOk;
}

int run_feasibility(const json& config, Artifacts& art) {
  json source;
  const LineParams params = load_or_compute_params(config, get_or(config, "threads", 0), source);
  std::vector<double> grid = get_or(config, "grid", std::vector<double>{});
  if (grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  }
  const auto res = feasibility_scan(params, grid, get_or(config, "resolution", 1e-4), inverse_options(config, 64));
  json points = json::array();
  for (std::size_t i = 0; i < res.grid.size(); ++i) points.push_back({{"p", res.grid[i]}, {"feasible", static_cast<bool>(res.feasible[i])}});
  const json body{{"boundary", res.boundary},
                  {"last_feasible", res.last_feasible},
                  {"first_infeasible", res.first_infeasible},
                  {"grid", points},
                  {"source", source}};
  art.emit(config, "out", dump(with_provenance(body, config)));
  return kExitOk;
}

int run_disorder(const json& config, Artifacts& art) {
  const int threads = get_or(config, "threads", 0);
  const auto chain = resolve_chain(config, threads);
  const std::uint64_t seed = require_seed(config);
  std::vector<double> p_grid = get_or(config, "p_grid", std::vector<double>{});
  if (p_grid.empty()) {
    for (int i = 0; i <= 8; ++i) p_grid.push_back(0.1 * i);
  }
  const LineParams unperturbed = line_params_for_chain(chain.spec, chain.t);
  InverseOptions o;
  o.seed = seed;
  o.threads = threads;
  std::vector<WernerControl> controls;
  for (double p : p_grid) controls.push_back({p, solve_werner(unperturbed, p, o).a});

  const auto study = run_disorder_study(chain.spec, chain.t, get<double>(config, "epsilon"),
                                        get_or(config, "chains", kDefaultChainCount), seed, controls, threads);
  json body = study_to_json(study);
  json ctl = json::array();
  for (const auto& c : controls) ctl.push_back({{"p", c.p}, {"controls", sender_to_json(c.a)}});
  body["werner_controls"] = ctl;
  art.emit(config, "out", dump(with_provenance(body, config)));
  if (config.contains("params_csv")) {
    std::ostringstream s;
    write_param_statistics_csv(s, study.params, provenance(config));
    art.emit(config, "params_csv", s.str());
  }
  if (config.contains("werner_csv")) {
    std::ostringstream s;
    write_werner_csv(s, study.werner, provenance(config));
    art.emit(config, "werner_csv", s.str());
  }
  return kExitOk;
}

int run_reproduce(const json& config, Artifacts& art) {
  ReproduceOptions o;
  o.n_nodes = get<int>(config, "n");
  o.seed = require_seed(config);
  o.threads = get_or(config, "threads", 0);
  o.n_chains = get_or(config, "chains", kDefaultChainCount);
  o.include_disorder = !get_or(config, "skip_disorder", false);
  const auto results = reproduce_paper(o);
  std::ostringstream s;
  std::istringstream header(provenance(config));
  for (std::string line; std::getline(header, line);) fmt::print(s, "# {}\n", line);
  fmt::print(s, "# kernels: {}\n", kernels::active().name);
  print_report(s, results);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  fmt::print(s, "{}\n", all ? "all checks passed" : "some checks FAILED");
  art.emit(config, "out", s.str());
  if (config.contains("out")) art.stdout_text += s.str();
  return all ? kExitOk : kExitCheckFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io: return kExitIo;
    case ErrorCode::eigensolver_failure:
    case ErrorCode::no_arrival:
    case ErrorCode::incomplete_extraction:
    case ErrorCode::ill_conditioned:
    case ErrorCode::infeasible_target: return kExitNumeric;
    default: return kExitInvalidConfig;
  }
}

}  // namespace

int execute(const json& config, std::ostream& out, std::ostream& err) {
  Artifacts art;
  int status = kExitOk;
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    validate(config);
    const std::string command = config.at("command").get<std::string>();
    if (command == "optimize-chain") status = run_optimize(config, art);
    else if (command == "compute-params") status = run_compute_params(config, art);
    else if (command == "probe-params") status = run_probe_params(config, art);
    else if (command == "create-state") status = run_create_state(config, art);
    else if (command == "feasibility") status = run_feasibility(config, art);
    else if (command == "disorder-study") status = run_disorder(config, art);
    else status = run_reproduce(config, art);
    for (const auto& [path, content] : art.files) write_atomically(path, content);
  } catch (const ConfigError& e) {
    fmt::print(err, "error: invalid config: {}\n", e.what());
    return kExitInvalidConfig;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    fmt::print(err, "error ({}): {}\n", to_string(e.code()), e.what());
    return exit_code_for(e.code());
  }
  out << art.stdout_text;
  return status;
}

int main(int argc, char** argv) {
  CLI::App app{"Remote two-qubit state creation through boundary-controlled XY spin chains", "spinlink"};
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  bool print_config = false;
  int threads = 0;
  app.add_option("--config", config_path, "Run the JSON config in FILE instead of flags");
  app.add_flag("--print-config", print_config, "Print the resolved config and exit");
  app.add_option("--threads", threads, "Worker threads (0 = SPINLINK_THREADS or all cores)")->check(CLI::NonNegativeNumber);
  app.require_subcommand(0, 1);

  json config;

  // Chain selection shared by several commands.
  struct ChainFlags {
    std::optional<int> n;
    bool tuned = false;
    bool optimize = false;
    std::optional<double> delta1, delta2, t;
    std::string chain_file;
  };
  auto add_chain_flags = [](CLI::App* sub, ChainFlags& f) {
    sub->add_option("--n", f.n, "Chain length");
    sub->add_flag("--tuned", f.tuned, "Use the published boundary couplings and t0 (N = 20 or 60)");
    sub->add_flag("--optimize", f.optimize, "Optimise the boundary couplings first");
    sub->add_option("--delta1", f.delta1, "Outer boundary coupling");
    sub->add_option("--delta2", f.delta2, "Inner boundary coupling");
    sub->add_option("--chain", f.chain_file, "Chain JSON file");
    sub->add_option("--t", f.t, "Registration time (default: t0 of the chain)");
  };
  auto chain_json = [](const ChainFlags& f, json& cfg) {
    if (!f.chain_file.empty()) {
      cfg["chain"] = read_json_file(f.chain_file);
    } else {
      if (!f.n) throw ConfigError("--n or --chain is required");
      if (f.delta1 || f.delta2) {
        if (!f.delta1 || !f.delta2) throw ConfigError("--delta1 and --delta2 go together");
        cfg["chain"] = {{"n", *f.n}, {"delta1", *f.delta1}, {"delta2", *f.delta2}};
      } else if (f.optimize || (!f.tuned && *f.n != 20 && *f.n != 60)) {
        cfg["chain"] = {{"optimize", *f.n}};
      } else {
        cfg["chain"] = {{"preset", *f.n}};
      }
    }
    if (f.t) cfg["t"] = *f.t;
  };

  // optimize-chain
  auto* opt = app.add_subcommand("optimize-chain", "Optimise delta1, delta2 for the first maximum of |p_N1|");
  int opt_n = 0;
  double grid_step = 0.01, t_max = 0.0, dt = kDefaultScanStep;
  std::string opt_out;
  opt->add_option("--n", opt_n, "Chain length")->required();
  opt->add_option("--grid-step", grid_step, "Coarse grid step");
  opt->add_option("--t-max", t_max, "Scan horizon (default 3N)");
  opt->add_option("--dt", dt, "Scan step");
  opt->add_option("--out", opt_out, "Output JSON (default stdout)");

  // compute-params
  auto* cp = app.add_subcommand("compute-params", "Compute the line parameters of a chain");
  ChainFlags cp_chain;
  int n_sender = 4;
  std::string cp_out, amps_out;
  add_chain_flags(cp, cp_chain);
  cp->add_option("--n-sender", n_sender, "Sender size");
  cp->add_option("--out", cp_out, "Output CSV (default stdout)");
  cp->add_option("--amplitudes-out", amps_out, "Also dump the propagator columns as CSV");

  // probe-params
  auto* pp = app.add_subcommand("probe-params", "Recover the line parameters from probe-state receiver outputs");
  ChainFlags pp_chain;
  std::string probes_in, probes_out, pp_out;
  add_chain_flags(pp, pp_chain);
  pp->add_option("--probes", probes_in, "Probe outputs JSON to extract from (instead of simulating)");
  pp->add_option("--probes-out", probes_out, "Write simulated probe outputs JSON");
  pp->add_option("--out", pp_out, "Output CSV (default stdout)");

  // create-state
  auto* cs = app.add_subcommand("create-state", "Solve for sender controls creating a target receiver state");
  ChainFlags cs_chain;
  std::string target, params_path, cs_out, selection = "first";
  std::optional<double> werner_p;
  std::optional<std::uint64_t> cs_seed;
  int starts = 0;
  bool approximate = false;
  add_chain_flags(cs, cs_chain);
  cs->add_option("--target", target, "'werner' or file:TARGET.json")->required();
  cs->add_option("--p", werner_p, "Werner parameter");
  cs->add_option("--params", params_path, "Line parameter CSV (instead of a chain)");
  cs->add_option("--seed", cs_seed, "Multi-start seed")->required();
  cs->add_option("--starts", starts, "Number of starts");
  cs->add_flag("--approximate", approximate, "Solve with Family III set to zero");
  cs->add_option("--selection", selection, "first | reference");
  cs->add_option("--out", cs_out, "Output JSON (default stdout)");

  // feasibility
  auto* fs = app.add_subcommand("feasibility", "Largest Werner p reachable with real pair controls");
  ChainFlags fs_chain;
  std::string fs_params, fs_out;
  std::optional<std::uint64_t> fs_seed;
  double resolution = 1e-4;
  std::vector<double> fs_grid;
  add_chain_flags(fs, fs_chain);
  fs->add_option("--params", fs_params, "Line parameter CSV (instead of a chain)");
  fs->add_option("--seed", fs_seed, "Multi-start seed")->required();
  fs->add_option("--grid", fs_grid, "Increasing p values (default 0, 0.05, ..., 1)");
  fs->add_option("--resolution", resolution, "Bisection resolution");
  fs->add_option("--out", fs_out, "Output JSON (default stdout)");

  // disorder-study
  auto* ds = app.add_subcommand("disorder-study", "Monte-Carlo study of random bulk couplings");
  ChainFlags ds_chain;
  double epsilon = 0.0;
  int chains = kDefaultChainCount;
  std::optional<std::uint64_t> ds_seed;
  std::string ds_out, params_csv_out, werner_csv_out;
  std::vector<double> p_grid;
  add_chain_flags(ds, ds_chain);
  ds->add_option("--epsilon", epsilon, "Disorder amplitude")->required();
  ds->add_option("--chains", chains, "Number of random chains");
  ds->add_option("--seed", ds_seed, "Random seed")->required();
  ds->add_option("--p-grid", p_grid, "Werner p values (default 0, 0.1, ..., 0.8)");
  ds->add_option("--out", ds_out, "Output JSON (default stdout)");
  ds->add_option("--params-csv", params_csv_out, "Per-parameter statistics CSV");
  ds->add_option("--werner-csv", werner_csv_out, "Per-p discrepancy statistics CSV");

  // reproduce-paper
  auto* rp = app.add_subcommand("reproduce-paper", "Recompute the published tables and print a pass/fail report");
  int rp_n = 20;
  std::uint64_t rp_seed = 7;
  int rp_chains = kDefaultChainCount;
  bool skip_disorder = false;
  std::string rp_out;
  rp->add_option("--n", rp_n, "Chain length (20 or 60)");
  rp->add_option("--seed", rp_seed, "Seed for multi-start solves and disorder sampling (default 7)");
  rp->add_option("--chains", rp_chains, "Random chains per disorder level");
  rp->add_flag("--skip-disorder", skip_disorder, "Skip the disorder study");
  rp->add_option("--out", rp_out, "Also write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (!config_path.empty()) {
      config = read_json_file(config_path);
    } else if (opt->parsed()) {
      config = {{"command", "optimize-chain"}, {"n", opt_n}, {"grid_step", grid_step}, {"t_max", t_max}, {"dt", dt}};
      if (!opt_out.empty()) config["out"] = opt_out;
    } else if (cp->parsed()) {
      config = {{"command", "compute-params"}, {"n_sender", n_sender}};
      chain_json(cp_chain, config);
      if (!cp_out.empty()) config["out"] = cp_out;
      if (!amps_out.empty()) config["amplitudes_out"] = amps_out;
    } else if (pp->parsed()) {
      config = {{"command", "probe-params"}};
      if (!probes_in.empty()) {
        config["probes"] = probes_in;
        if (pp_chain.n) config["n"] = *pp_chain.n;
        if (pp_chain.t) config["t"] = *pp_chain.t;
      } else {
        chain_json(pp_chain, config);
      }
      if (!probes_out.empty()) config["probes_out"] = probes_out;
      if (!pp_out.empty()) config["out"] = pp_out;
    } else if (cs->parsed()) {
      config = {{"command", "create-state"}, {"seed", *cs_seed}, {"approximate", approximate}, {"selection", selection}};
      if (target == "werner") {
        if (!werner_p) throw ConfigError("--target werner needs --p");
        config["target"] = {{"werner", *werner_p}};
      } else if (target.rfind("file:", 0) == 0) {
        config["target"] = {{"file", target.substr(5)}};
      } else {
        throw ConfigError("--target must be 'werner' or file:PATH");
      }
      if (!params_path.empty()) config["params"] = params_path;
      else chain_json(cs_chain, config);
      if (starts > 0) config["starts"] = starts;
      if (!cs_out.empty()) config["out"] = cs_out;
    } else if (fs->parsed()) {
      config = {{"command", "feasibility"}, {"seed", *fs_seed}, {"resolution", resolution}};
      if (!fs_params.empty()) config["params"] = fs_params;
      else chain_json(fs_chain, config);
      if (!fs_grid.empty()) config["grid"] = fs_grid;
      if (!fs_out.empty()) config["out"] = fs_out;
    } else if (ds->parsed()) {
      config = {{"command", "disorder-study"}, {"seed", *ds_seed}, {"epsilon", epsilon}, {"chains", chains}};
      chain_json(ds_chain, config);
      if (!p_grid.empty()) config["p_grid"] = p_grid;
      if (!ds_out.empty()) config["out"] = ds_out;
      if (!params_csv_out.empty()) config["params_csv"] = params_csv_out;
      if (!werner_csv_out.empty()) config["werner_csv"] = werner_csv_out;
    } else if (rp->parsed()) {
      config = {{"command", "reproduce-paper"}, {"n", rp_n}, {"seed", rp_seed}, {"chains", rp_chains},
                {"skip_disorder", skip_disorder}};
      if (!rp_out.empty()) config["out"] = rp_out;
    } else {
      fmt::print(std::cerr, "{}", app.help());
      return kExitInvalidConfig;
    }
  } catch (const ConfigError& e) {
    fmt::print(std::cerr, "error: invalid config: {}\n", e.what());
    return kExitInvalidConfig;
  } catch (const IoError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitIo;
  }
  if (threads > 0 && config.is_object() && !config.contains("threads")) config["threads"] = threads;
  if (print_config) {
    fmt::print("{}\n", config.dump(2));
    return kExitOk;
  }
  return execute(config, std::cout, std::cerr);
}

}  // namespace spinlink::cli
