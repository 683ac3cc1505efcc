#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyber_egt/cyber_egt.h"
#include "json.hpp"

namespace cyber_egt::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"params", {"w", "c_a", "c_d", "b_a", "b_d", "v", "m", "n", "p", "s", "f_u", "f_s"}},
      {"sampler", {"count", "seed", "b_a_upper", "f_u", "f_s", "threads"}},
      {"integrator", {"step", "horizon", "tol", "record_stride"}},
      {"abm",
       {"population_size", "selection_strength", "mutation_rate", "steps", "burn_in", "seed", "initial_beta",
        "initial_alpha", "record_every"}},
      {"phase", {"resolution", "starts"}},
      {"fines", {"levels"}},
      {"output", {"dir", "formats"}},
  };
  return keys;
}

void check_keys(const json& doc) {
  if (!doc.is_object()) throw UsageError("config document must be a JSON object");
  const auto& keys = allowed_keys();
  for (const auto& [section, body] : doc.items()) {
    auto it = keys.find(section);
    if (it == keys.end()) throw UsageError("unknown config section '" + section + "'");
    if (!body.is_object()) throw UsageError("config section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items())
      if (!it->second.count(key)) throw UsageError("unknown config key '" + section + "." + key + "'");
  }
}

template <class T>
T get_or(const json& doc, const char* section, const char* key, T fallback) {
  if (!doc.contains(section) || !doc[section].contains(key)) return fallback;
  try {
    return doc[section][key].get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + section + "." + key + "' has the wrong type");
  }
}

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::string> out;
  std::vector<std::string> formats;
  std::optional<unsigned> threads;
  std::map<std::string, double> params;
  std::optional<int> resolution;
  std::vector<std::string> starts;
  std::vector<double> levels;
  std::optional<std::size_t> population, steps, burn_in;
  std::optional<double> selection, mutation, b_a_upper;
};

json load_config(const Options& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw UsageError("cannot read config file " + o.config_path);
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
  }
  check_keys(doc);
  return doc;
}

// Flags override file values.
void apply_flags(json& doc, const Options& o) {
  for (const auto& [k, v] : o.params) doc["params"][k] = v;
  if (o.seed) {
    doc["sampler"]["seed"] = *o.seed;
    doc["abm"]["seed"] = *o.seed;
  }
  if (o.count) doc["sampler"]["count"] = *o.count;
  if (o.params.count("f_u")) doc["sampler"]["f_u"] = o.params.at("f_u");
  if (o.params.count("f_s")) doc["sampler"]["f_s"] = o.params.at("f_s");
  if (o.b_a_upper) doc["sampler"]["b_a_upper"] = *o.b_a_upper;
  if (o.threads) doc["sampler"]["threads"] = *o.threads;
  if (o.out) doc["output"]["dir"] = *o.out;
  if (!o.formats.empty()) doc["output"]["formats"] = o.formats;
  if (o.resolution) doc["phase"]["resolution"] = *o.resolution;
  if (!o.starts.empty()) {
    json arr = json::array();
    for (const auto& s : o.starts) {
      double b = 0, a = 0;
      char extra = 0;
      if (std::sscanf(s.c_str(), "%lf,%lf%c", &b, &a, &extra) != 2) throw UsageError("--start expects BETA,ALPHA");
      arr.push_back({b, a});
    }
    doc["phase"]["starts"] = arr;
  }
  if (!o.levels.empty()) doc["fines"]["levels"] = o.levels;
  if (o.population) doc["abm"]["population_size"] = *o.population;
  if (o.steps) doc["abm"]["steps"] = *o.steps;
  if (o.burn_in) doc["abm"]["burn_in"] = *o.burn_in;
  if (o.selection) doc["abm"]["selection_strength"] = *o.selection;
  if (o.mutation) doc["abm"]["mutation_rate"] = *o.mutation;
}

struct CodeError : std::runtime_error {
  int code;
  CodeError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

int exit_code_for(cegt_status s) {
  switch (s) {
    case CEGT_OK: return kExitOk;
    case CEGT_ERR_CONSTRAINT: return kExitConstraint;
    case CEGT_ERR_COMPUTE: return kExitCompute;
    case CEGT_ERR_IO: return kExitIo;
    case CEGT_ERR_INTERNAL: return kExitCompute;
    default: return kExitConfig;
  }
}

void check(cegt_status s) {
  if (s == CEGT_OK) return;
  std::string msg = cegt_last_error();
  if (s == CEGT_ERR_CONSTRAINT) msg = std::string("constraint violated: ") + cegt_last_constraint();
  throw CodeError(exit_code_for(s), msg);
}

struct GameHandle {
  cegt_game* g = nullptr;
  ~GameHandle() { cegt_game_destroy(g); }
};

json resolve_params(const json& doc) {
  json p = json::object();
  for (const char* k : {"w", "c_a", "c_d", "b_a", "b_d", "v"}) {
    if (!doc.contains("params") || !doc["params"].contains(k))
      throw UsageError(std::string("missing game parameter '") + k + "'");
    p[k] = get_or<double>(doc, "params", k, 0.0);
  }
  for (const char* k : {"m", "n", "p", "s"}) p[k] = get_or<double>(doc, "params", k, 0.0);
  const bool fines = doc.contains("params") && (doc["params"].contains("f_u") || doc["params"].contains("f_s"));
  if (fines) {
    p["f_u"] = get_or<double>(doc, "params", "f_u", 0.0);
    p["f_s"] = get_or<double>(doc, "params", "f_s", 0.0);
  }
  return p;
}

void make_game(const json& p, GameHandle& out) {
  cegt_params c{p["w"], p["c_a"], p["c_d"], p["b_a"], p["b_d"], p["v"], p["m"], p["n"], p["p"], p["s"]};
  GameHandle base;
  check(cegt_game_create(&c, &base.g));
  if (p.contains("f_u")) {
    check(cegt_game_with_fines(base.g, p["f_u"], p["f_s"], &out.g));
  } else {
    out.g = base.g;
    base.g = nullptr;
  }
}

unsigned resolve_formats(const json& doc, unsigned fallback) {
  if (!doc.contains("output") || !doc["output"].contains("formats")) return fallback;
  unsigned bits = 0;
  for (const auto& f : doc["output"]["formats"]) {
    const std::string s = f.is_string() ? f.get<std::string>() : "";
    if (s == "csv") bits |= CEGT_FORMAT_CSV;
    else if (s == "json") bits |= CEGT_FORMAT_JSON;
    else if (s == "svg") bits |= CEGT_FORMAT_SVG;
    else throw UsageError("unknown output format '" + s + "' (expected csv, json or svg)");
  }
  return bits;
}

std::string resolve_dir(const json& doc) { return get_or<std::string>(doc, "output", "dir", "out"); }

json resolve_integrator(const json& doc) {
  cegt_integrator d;
  cegt_default_integrator(&d);
  return {{"step", get_or<double>(doc, "integrator", "step", d.step)},
          {"horizon", get_or<double>(doc, "integrator", "horizon", d.horizon)},
          {"tol", get_or<double>(doc, "integrator", "tol", d.convergence_tol)},
          {"record_stride", get_or<std::size_t>(doc, "integrator", "record_stride", 10)}};
}

cegt_integrator to_integrator(const json& j) {
  return {j["step"].get<double>(), j["horizon"].get<double>(), j["tol"].get<double>(),
          j["record_stride"].get<std::size_t>()};
}

// Threads never enter the echoed config so outputs match across worker counts.
json resolve_sampler(const json& doc, cegt_sampler& out) {
  cegt_default_sampler(&out);
  const auto count = get_or<long long>(doc, "sampler", "count", static_cast<long long>(out.count));
  if (count < 1) throw UsageError("sampler.count must be >= 1");
  out.count = static_cast<std::size_t>(count);
  out.master_seed = get_or<std::uint64_t>(doc, "sampler", "seed", out.master_seed);
  out.b_a_upper = get_or<double>(doc, "sampler", "b_a_upper", out.b_a_upper);
  out.f_u = get_or<double>(doc, "sampler", "f_u", out.f_u);
  out.f_s = get_or<double>(doc, "sampler", "f_s", out.f_s);
  const auto threads = get_or<long long>(doc, "sampler", "threads", 1);
  if (threads < 1) throw UsageError("sampler.threads must be >= 1");
  out.threads = static_cast<unsigned>(threads);
  return {{"count", out.count}, {"seed", out.master_seed}, {"b_a_upper", out.b_a_upper},
          {"f_u", out.f_u},     {"f_s", out.f_s}};
}

json resolve_abm(const json& doc, cegt_abm_config& out) {
  cegt_default_abm(&out);
  auto size_key = [&](const char* key, std::size_t fallback) {
    const auto v = get_or<long long>(doc, "abm", key, static_cast<long long>(fallback));
    if (v < 0) throw UsageError(std::string("abm.") + key + " must be >= 0");
    return static_cast<std::size_t>(v);
  };
  out.population_size = size_key("population_size", out.population_size);
  out.selection_strength = get_or<double>(doc, "abm", "selection_strength", out.selection_strength);
  out.mutation_rate = get_or<double>(doc, "abm", "mutation_rate", out.mutation_rate);
  out.steps = size_key("steps", out.steps);
  out.burn_in = size_key("burn_in", out.burn_in);
  out.seed = get_or<std::uint64_t>(doc, "abm", "seed", out.seed);
  out.initial_state.beta = get_or<double>(doc, "abm", "initial_beta", out.initial_state.beta);
  out.initial_state.alpha = get_or<double>(doc, "abm", "initial_alpha", out.initial_state.alpha);
  out.record_every = size_key("record_every", out.record_every);
  return {{"population_size", out.population_size},
          {"selection_strength", out.selection_strength},
          {"mutation_rate", out.mutation_rate},
          {"steps", out.steps},
          {"burn_in", out.burn_in},
          {"seed", out.seed},
          {"initial_beta", out.initial_state.beta},
          {"initial_alpha", out.initial_state.alpha},
          {"record_every", out.record_every}};
}

void prepare(const std::string& dir) { check(cegt_prepare_output(dir.c_str())); }

int cmd_analyze(const json& doc, bool write, std::ostream& out) {
  const json params = resolve_params(doc);
  GameHandle game;
  make_game(params, game);
  std::size_t needed = 0;
  check(cegt_analyze_text(game.g, nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(cegt_analyze_text(game.g, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  out << text;
  if (write) {
    const std::string dir = resolve_dir(doc);
    prepare(dir);
    const json echo = {{"command", "analyze"}, {"params", params}};
    check(cegt_analyze_write(game.g, dir.c_str(), echo.dump().c_str(), 0,
                             resolve_formats(doc, CEGT_FORMAT_CSV | CEGT_FORMAT_JSON)));
    out << "wrote " << dir << "\n";
  }
  return kExitOk;
}

struct EnsembleHandle {
  cegt_ensemble* e = nullptr;
  ~EnsembleHandle() { cegt_ensemble_destroy(e); }
};

int cmd_ensemble(const json& doc, std::ostream& out) {
  cegt_sampler sampler;
  const json echo = {{"command", "ensemble"}, {"sampler", resolve_sampler(doc, sampler)}};
  const std::string dir = resolve_dir(doc);
  prepare(dir);
  EnsembleHandle ens;
  check(cegt_ensemble_run(&sampler, &ens.e));
  check(cegt_ensemble_write(ens.e, dir.c_str(), echo.dump().c_str(),
                            resolve_formats(doc, CEGT_FORMAT_CSV | CEGT_FORMAT_JSON)));
  cegt_summary s;
  check(cegt_ensemble_summary(ens.e, &s));
  char buf[256];
  std::snprintf(buf, sizeof buf, "games=%zu one_stable=%.4f two_stable=%.4f E2=%.4f E3=%.4f E4=%.4f\n", s.count,
                static_cast<double>(s.stable_count_distribution[1]) / s.count,
                static_cast<double>(s.stable_count_distribution[2]) / s.count, s.kind_ratios[1], s.kind_ratios[2],
                s.kind_ratios[3]);
  out << buf << "wrote " << dir << "\n";
  return kExitOk;
}

int cmd_fines(const json& doc, std::ostream& out) {
  cegt_sampler sampler;
  json sampler_echo = resolve_sampler(doc, sampler);
  std::vector<double> levels = get_or<std::vector<double>>(doc, "fines", "levels", {0.1, 0.5});
  if (levels.empty()) throw UsageError("fines.levels must not be empty");
  const json echo = {{"command", "fines"}, {"sampler", sampler_echo}, {"levels", levels}};
  const std::string dir = resolve_dir(doc);
  prepare(dir);
  check(cegt_fines_write(&sampler, levels.data(), levels.size(), dir.c_str(), echo.dump().c_str(),
                         resolve_formats(doc, CEGT_FORMAT_CSV | CEGT_FORMAT_JSON)));
  out << "wrote " << levels.size() << " fine levels to " << dir << "\n";
  return kExitOk;
}

int cmd_phase(const json& doc, std::ostream& out) {
  const json params = resolve_params(doc);
  const int resolution = get_or<int>(doc, "phase", "resolution", 21);
  if (resolution < 2) throw UsageError("phase.resolution must be >= 2");
  std::vector<cegt_state> starts;
  json starts_echo = json::array();
  if (doc.contains("phase") && doc["phase"].contains("starts")) {
    for (const auto& s : doc["phase"]["starts"]) {
      if (!s.is_array() || s.size() != 2) throw UsageError("phase.starts entries must be [beta, alpha]");
      starts.push_back({s[0].get<double>(), s[1].get<double>()});
    }
  } else {
    for (double b : {0.1, 0.5, 0.9})
      for (double a : {0.1, 0.5, 0.9}) starts.push_back({b, a});
  }
  for (const auto& s : starts) starts_echo.push_back({s.beta, s.alpha});
  const json integ = resolve_integrator(doc);
  const json echo = {{"command", "phase"},
                     {"params", params},
                     {"phase", {{"resolution", resolution}, {"starts", starts_echo}}},
                     {"integrator", integ}};
  GameHandle game;
  make_game(params, game);
  const std::string dir = resolve_dir(doc);
  prepare(dir);
  const cegt_integrator settings = to_integrator(integ);
  check(cegt_phase_write(game.g, resolution, starts.data(), starts.size(), &settings, dir.c_str(),
                         echo.dump().c_str(), resolve_formats(doc, CEGT_FORMAT_CSV | CEGT_FORMAT_SVG)));
  out << "wrote " << dir << "\n";
  return kExitOk;
}

struct AbmHandle {
  cegt_abm_result* r = nullptr;
  ~AbmHandle() { cegt_abm_destroy(r); }
};

int cmd_abm(const json& doc, std::ostream& out) {
  const json params = resolve_params(doc);
  cegt_abm_config cfg;
  const json abm_echo = resolve_abm(doc, cfg);
  const json echo = {{"command", "abm"}, {"params", params}, {"abm", abm_echo}};
  GameHandle game;
  make_game(params, game);
  const std::string dir = resolve_dir(doc);
  prepare(dir);
  AbmHandle res;
  check(cegt_abm_run(game.g, &cfg, &res.r));
  check(cegt_abm_write(res.r, dir.c_str(), echo.dump().c_str(), cfg.seed,
                       resolve_formats(doc, CEGT_FORMAT_CSV | CEGT_FORMAT_JSON)));
  double mb = 0, ma = 0;
  check(cegt_abm_means(res.r, &mb, &ma));
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean_beta=%.6f mean_alpha=%.6f\n", mb, ma);
  out << buf << "wrote " << dir << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attacker-defender evolutionary game analysis", "cyber-egt"};
  app.set_version_flag("--version", std::string(cegt_version()));
  app.require_subcommand(1);
  Options o;

  std::map<std::string, std::optional<double>> param_flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--seed", o.seed, "master RNG seed");
    sub->add_option("--count", o.count, "number of sampled games");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.formats, "output formats (csv, json, svg)")->check(CLI::IsMember({"csv", "json", "svg"}));
    sub->add_option("--threads", o.threads, "worker threads");
  };
  auto add_params = [&](CLI::App* sub) {
    const std::pair<const char*, const char*> flags[] = {{"--w", "w"},   {"--ca", "c_a"}, {"--cd", "c_d"},
                                                         {"--ba", "b_a"}, {"--bd", "b_d"}, {"--v", "v"},
                                                         {"--fu", "f_u"}, {"--fs", "f_s"}};
    for (const auto& [flag, key] : flags) sub->add_option(flag, param_flags[key], std::string("parameter ") + key);
  };

  auto* analyze = app.add_subcommand("analyze", "equilibria, stability and welfare for one game");
  add_common(analyze);
  add_params(analyze);
  auto* ensemble = app.add_subcommand("ensemble", "random-game ensemble study");
  add_common(ensemble);
  ensemble->add_option("--fu", param_flags["f_u"], "fine for unsuccessful attack");
  ensemble->add_option("--fs", param_flags["f_s"], "fine for successful attack");
  ensemble->add_option("--ba-upper", o.b_a_upper, "upper bound of the b_a draw");
  auto* phase = app.add_subcommand("phase", "phase portrait data and SVG");
  add_common(phase);
  add_params(phase);
  phase->add_option("--resolution", o.resolution, "lattice resolution");
  phase->add_option("--start", o.starts, "trajectory start BETA,ALPHA (repeatable)");
  auto* abm = app.add_subcommand("abm", "finite-population agent simulation");
  add_common(abm);
  add_params(abm);
  abm->add_option("--population", o.population, "individuals per population");
  abm->add_option("--selection", o.selection, "selection strength");
  abm->add_option("--mutation", o.mutation, "mutation rate");
  abm->add_option("--steps", o.steps, "simulation steps");
  abm->add_option("--burn-in", o.burn_in, "steps discarded before averaging");
  auto* fines = app.add_subcommand("fines", "ensembles under attacker-fine scenarios");
  add_common(fines);
  fines->add_option("--levels", o.levels, "fine levels (f_u = f_s = level)");
  fines->add_option("--ba-upper", o.b_a_upper, "upper bound of the b_a draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << cegt_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    for (const auto& [k, v] : param_flags)
      if (v) o.params[k] = *v;
    json doc = load_config(o);
    apply_flags(doc, o);
    if (*analyze) return cmd_analyze(doc, o.out.has_value() || doc.contains("output"), out);
    if (*ensemble) return cmd_ensemble(doc, out);
    if (*phase) return cmd_phase(doc, out);
    if (*abm) return cmd_abm(doc, out);
    if (*fines) return cmd_fines(doc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CodeError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitConfig;
}

}  // namespace cyber_egt::cli
