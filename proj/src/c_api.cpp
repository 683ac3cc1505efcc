#include "cyber_egt/cyber_egt.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "cyber_egt/abm.hpp"
#include "cyber_egt/dynamics.hpp"
#include "cyber_egt/ensemble.hpp"
#include "cyber_egt/equilibria.hpp"
#include "cyber_egt/error.hpp"
#include "cyber_egt/game.hpp"
#include "cyber_egt/output.hpp"

namespace ce = cyber_egt;

struct cegt_game {
  ce::GameParams params;
};

struct cegt_trajectory {
  ce::Trajectory trajectory;
};

struct cegt_ensemble {
  ce::EnsembleResult result;
};

struct cegt_abm_result {
  ce::AbmResult result;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_constraint;

cegt_status fail(cegt_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Maps core exceptions onto status codes.
template <class Fn>
cegt_status guarded(Fn&& fn) {
  g_last_error.clear();
  g_last_constraint.clear();
  try {
    fn();
    return CEGT_OK;
  } catch (const ce::ConstraintViolation& e) {
    g_last_constraint = e.constraint();
    return fail(CEGT_ERR_CONSTRAINT, e.what());
  } catch (const ce::ConfigError& e) {
    return fail(CEGT_ERR_CONFIG, e.what());
  } catch (const ce::IntegrationFailure& e) {
    return fail(CEGT_ERR_COMPUTE, e.what());
  } catch (const ce::GameAnalysisFailure& e) {
    return fail(CEGT_ERR_COMPUTE, e.what());
  } catch (const ce::OutputError& e) {
    return fail(CEGT_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CEGT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CEGT_ERR_INTERNAL, "unknown error");
  }
}

cegt_status null_arg(const char* what) { return fail(CEGT_ERR_INVALID_ARGUMENT, std::string(what) + " is null"); }

ce::ParamValues to_values(const cegt_params& p) { return {p.w, p.c_a, p.c_d, p.b_a, p.b_d, p.v, p.m, p.n, p.p, p.s}; }

cegt_params from_values(const ce::ParamValues& x) { return {x.w, x.c_a, x.c_d, x.b_a, x.b_d, x.v, x.m, x.n, x.p, x.s}; }

ce::IntegratorSettings to_settings(const cegt_integrator* s) {
  ce::IntegratorSettings out;
  if (s) {
    out.step = s->step;
    out.horizon = s->horizon;
    out.convergence_tol = s->convergence_tol;
    out.record_stride = s->record_stride;
  }
  return out;
}

ce::SamplerConfig to_sampler(const cegt_sampler& s) {
  ce::SamplerConfig out;
  out.count = s.count;
  out.master_seed = s.master_seed;
  out.scenario = {s.f_u, s.f_s};
  out.b_a_upper = s.b_a_upper;
  out.threads = s.threads;
  return out;
}

ce::OutputFormats to_formats(unsigned bits) {
  return {(bits & CEGT_FORMAT_CSV) != 0, (bits & CEGT_FORMAT_JSON) != 0, (bits & CEGT_FORMAT_SVG) != 0};
}

ce::Provenance to_provenance(const char* json, uint64_t seed) { return {json ? json : "{}", seed}; }

cegt_status check_moves(int defence, int attack) {
  if ((defence != 0 && defence != 1) || (attack != 0 && attack != 1))
    return fail(CEGT_ERR_INVALID_ARGUMENT, "strategy moves must be 0 or 1");
  return CEGT_OK;
}

ce::StrategyPair to_pair(int defence, int attack) {
  return {static_cast<ce::DefenderMove>(defence), static_cast<ce::AttackerMove>(attack)};
}

cegt_equilibrium to_c(const ce::EquilibriumReport& r) {
  cegt_equilibrium e;
  e.kind = static_cast<int>(r.kind);
  e.location = {r.location.beta, r.location.alpha};
  e.j11 = r.jacobian.j11;
  e.j12 = r.jacobian.j12;
  e.j21 = r.jacobian.j21;
  e.j22 = r.jacobian.j22;
  e.lambda1_re = r.eigen.lambda1.real();
  e.lambda1_im = r.eigen.lambda1.imag();
  e.lambda2_re = r.eigen.lambda2.real();
  e.lambda2_im = r.eigen.lambda2.imag();
  e.classification = static_cast<int>(r.classification);
  return e;
}

}  // namespace

extern "C" {

const char* cegt_version(void) { return ce::kVersion; }
const char* cegt_last_error(void) { return g_last_error.c_str(); }
const char* cegt_last_constraint(void) { return g_last_constraint.c_str(); }

void cegt_default_integrator(cegt_integrator* out) {
  if (!out) return;
  const ce::IntegratorSettings d;
  *out = {d.step, d.horizon, d.convergence_tol, d.record_stride};
}

void cegt_default_sampler(cegt_sampler* out) {
  if (!out) return;
  const ce::SamplerConfig d;
  *out = {d.count, d.master_seed, d.scenario.f_u, d.scenario.f_s, d.b_a_upper, d.threads};
}

void cegt_default_abm(cegt_abm_config* out) {
  if (!out) return;
  const ce::AbmConfig d;
  *out = {d.population_size, d.selection_strength, d.mutation_rate, d.steps, d.burn_in, d.seed,
          {d.initial_state.beta, d.initial_state.alpha}, d.record_every};
}

cegt_status cegt_game_create(const cegt_params* params, cegt_game** out) {
  if (!params) return null_arg("params");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new cegt_game{ce::GameParams(to_values(*params))}; });
}

void cegt_game_destroy(cegt_game* game) { delete game; }

cegt_status cegt_game_params(const cegt_game* game, cegt_params* out) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  *out = from_values(game->params.values());
  return CEGT_OK;
}

cegt_status cegt_game_with_fines(const cegt_game* game, double f_u, double f_s, cegt_game** out) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new cegt_game{game->params.with_fines({f_u, f_s})}; });
}

cegt_status cegt_payoff(const cegt_game* game, int defence, int attack, double* defender, double* attacker) {
  if (!game) return null_arg("game");
  if (!defender || !attacker) return null_arg("output");
  if (auto s = check_moves(defence, attack); s != CEGT_OK) return s;
  const ce::Payoff p = ce::build_payoff_matrix(game->params).at(to_pair(defence, attack));
  *defender = p.defender;
  *attacker = p.attacker;
  return CEGT_OK;
}

cegt_status cegt_welfare(const cegt_game* game, int defence, int attack, double* out) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  if (auto s = check_moves(defence, attack); s != CEGT_OK) return s;
  *out = ce::social_welfare(game->params, to_pair(defence, attack));
  return CEGT_OK;
}

cegt_status cegt_fitness_at(const cegt_game* game, cegt_state state, cegt_fitness* out) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  const ce::FitnessProfile f = ce::fitness_profile(game->params, {state.beta, state.alpha});
  *out = {f.f_no_defence, f.f_defence, f.f_no_attack, f.f_attack, f.mean_defender, f.mean_attacker};
  return CEGT_OK;
}

cegt_status cegt_field(const cegt_game* game, cegt_state state, double* d_beta, double* d_alpha) {
  if (!game) return null_arg("game");
  if (!d_beta || !d_alpha) return null_arg("output");
  const ce::FieldValue f = ce::replicator_field(game->params, {state.beta, state.alpha});
  *d_beta = f.d_beta;
  *d_alpha = f.d_alpha;
  return CEGT_OK;
}

cegt_status cegt_field_grid(const cegt_game* game, int resolution, double* out, size_t capacity) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  if (resolution >= 2 && capacity / 4 / static_cast<size_t>(resolution) < static_cast<size_t>(resolution))
    return fail(CEGT_ERR_INVALID_ARGUMENT, "field grid buffer too small");
  return guarded([&] {
    const auto grid = ce::field_grid(game->params, resolution);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out[4 * i] = grid[i].state.beta;
      out[4 * i + 1] = grid[i].state.alpha;
      out[4 * i + 2] = grid[i].value.d_beta;
      out[4 * i + 3] = grid[i].value.d_alpha;
    }
  });
}

cegt_status cegt_analyze(const cegt_game* game, cegt_equilibrium out[5], size_t* count) {
  if (!game) return null_arg("game");
  if (!out || !count) return null_arg("output");
  const auto reports = ce::analyze_equilibria(game->params);
  for (std::size_t i = 0; i < reports.size(); ++i) out[i] = to_c(reports[i]);
  *count = reports.size();
  return CEGT_OK;
}

cegt_status cegt_stable_mask(const cegt_game* game, uint32_t* mask) {
  if (!game) return null_arg("game");
  if (!mask) return null_arg("mask");
  *mask = ce::stable_set(game->params).bits();
  return CEGT_OK;
}

cegt_status cegt_interior(const cegt_game* game, int* present, cegt_state* out) {
  if (!game) return null_arg("game");
  if (!present || !out) return null_arg("output");
  const auto interior = ce::interior_equilibrium(game->params);
  *present = interior ? 1 : 0;
  *out = interior ? cegt_state{interior->beta, interior->alpha} : cegt_state{0.0, 0.0};
  return CEGT_OK;
}

cegt_status cegt_integrate(const cegt_game* game, cegt_state start, const cegt_integrator* settings,
                           cegt_trajectory** out) {
  if (!game) return null_arg("game");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new cegt_trajectory{ce::integrate(game->params, {start.beta, start.alpha}, to_settings(settings))};
  });
}

void cegt_trajectory_destroy(cegt_trajectory* t) { delete t; }

size_t cegt_trajectory_size(const cegt_trajectory* t) { return t ? t->trajectory.samples.size() : 0; }

cegt_status cegt_trajectory_sample(const cegt_trajectory* t, size_t i, double* time, cegt_state* state) {
  if (!t) return null_arg("trajectory");
  if (!time || !state) return null_arg("output");
  if (i >= t->trajectory.samples.size()) return fail(CEGT_ERR_INVALID_ARGUMENT, "sample index out of range");
  const auto& s = t->trajectory.samples[i];
  *time = s.t;
  *state = {s.state.beta, s.state.alpha};
  return CEGT_OK;
}

int cegt_trajectory_converged(const cegt_trajectory* t) { return t && t->trajectory.converged ? 1 : 0; }

cegt_state cegt_trajectory_final(const cegt_trajectory* t) {
  if (!t) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  return {t->trajectory.final_state.beta, t->trajectory.final_state.alpha};
}

cegt_status cegt_ensemble_run(const cegt_sampler* config, cegt_ensemble** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new cegt_ensemble{ce::run_ensemble(to_sampler(*config))}; });
}

void cegt_ensemble_destroy(cegt_ensemble* e) { delete e; }

size_t cegt_ensemble_size(const cegt_ensemble* e) { return e ? e->result.records.size() : 0; }

cegt_status cegt_ensemble_record(const cegt_ensemble* e, size_t i, cegt_game_record* out) {
  if (!e) return null_arg("ensemble");
  if (!out) return null_arg("out");
  if (i >= e->result.records.size()) return fail(CEGT_ERR_INVALID_ARGUMENT, "record index out of range");
  const ce::GameRecord& r = e->result.records[i];
  out->index = r.index;
  out->params = from_values(r.params.values());
  out->stable_mask = r.stable_kinds.bits();
  for (int k = 0; k < 4; ++k) out->welfare[k] = r.welfare[k];
  out->interior_present = r.interior_present ? 1 : 0;
  out->hyperbolic = r.hyperbolic ? 1 : 0;
  return CEGT_OK;
}

cegt_status cegt_ensemble_summary(const cegt_ensemble* e, cegt_summary* out) {
  if (!e) return null_arg("ensemble");
  if (!out) return null_arg("out");
  const ce::EnsembleSummary& s = e->result.summary;
  std::memset(out, 0, sizeof *out);
  out->count = s.count;
  for (int i = 0; i < 4; ++i) out->stable_count_distribution[i] = s.stable_count_distribution[i];
  for (int i = 0; i < 5; ++i) {
    out->kind_counts[i] = s.kind_counts[i];
    out->kind_ratios[i] = s.kind_ratios[i];
    for (int b = 0; b < 10; ++b) out->v_curves[i][b] = s.v_curves[i][b];
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out->correlation[i][j] = s.correlation[i][j].value_or(std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < 4; ++i) out->welfare_pair_means[i] = s.welfare.pair_means[i];
  return CEGT_OK;
}

uint64_t cegt_ensemble_digest(const cegt_ensemble* e) { return e ? ce::digest(e->result.records) : 0; }

cegt_status cegt_abm_run(const cegt_game* game, const cegt_abm_config* config, cegt_abm_result** out) {
  if (!game) return null_arg("game");
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    ce::AbmConfig cfg;
    cfg.population_size = config->population_size;
    cfg.selection_strength = config->selection_strength;
    cfg.mutation_rate = config->mutation_rate;
    cfg.steps = config->steps;
    cfg.burn_in = config->burn_in;
    cfg.seed = config->seed;
    cfg.initial_state = {config->initial_state.beta, config->initial_state.alpha};
    cfg.record_every = config->record_every;
    *out = new cegt_abm_result{ce::simulate(game->params, cfg)};
  });
}

void cegt_abm_destroy(cegt_abm_result* r) { delete r; }

cegt_status cegt_abm_means(const cegt_abm_result* r, double* mean_beta, double* mean_alpha) {
  if (!r) return null_arg("result");
  if (!mean_beta || !mean_alpha) return null_arg("output");
  *mean_beta = r->result.mean_beta;
  *mean_alpha = r->result.mean_alpha;
  return CEGT_OK;
}

size_t cegt_abm_samples(const cegt_abm_result* r) { return r ? r->result.trajectory_thinned.size() : 0; }

cegt_status cegt_prepare_output(const char* dir) {
  if (!dir) return null_arg("dir");
  return guarded([&] { ce::prepare_output_dir(dir); });
}

cegt_status cegt_analyze_text(const cegt_game* game, char* buf, size_t capacity, size_t* needed) {
  if (!game) return null_arg("game");
  const std::string text = ce::analyze_report_text(game->params);
  if (needed) *needed = text.size() + 1;
  if (!buf || capacity == 0) return CEGT_OK;
  if (capacity < text.size() + 1) return fail(CEGT_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return CEGT_OK;
}

cegt_status cegt_analyze_write(const cegt_game* game, const char* dir, const char* provenance_json, uint64_t seed,
                               unsigned formats) {
  if (!game) return null_arg("game");
  if (!dir) return null_arg("dir");
  return guarded([&] { ce::write_analyze(game->params, dir, to_provenance(provenance_json, seed), to_formats(formats)); });
}

cegt_status cegt_ensemble_write(const cegt_ensemble* e, const char* dir, const char* provenance_json, unsigned formats) {
  if (!e) return null_arg("ensemble");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    ce::write_ensemble(e->result, dir, to_provenance(provenance_json, e->result.config.master_seed), to_formats(formats));
  });
}

cegt_status cegt_fines_write(const cegt_sampler* base, const double* levels, size_t n_levels, const char* dir,
                             const char* provenance_json, unsigned formats) {
  if (!base) return null_arg("base");
  if (!levels && n_levels) return null_arg("levels");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    const ce::SamplerConfig cfg = to_sampler(*base);
    cfg.validate();
    const std::vector<double> lv(levels, levels + n_levels);
    const auto study = ce::fines_study(cfg.count, cfg.master_seed, lv, cfg.b_a_upper, cfg.threads);
    ce::write_fines(study, dir, to_provenance(provenance_json, cfg.master_seed), to_formats(formats));
  });
}

cegt_status cegt_phase_write(const cegt_game* game, int resolution, const cegt_state* starts, size_t n_starts,
                             const cegt_integrator* settings, const char* dir, const char* provenance_json,
                             unsigned formats) {
  if (!game) return null_arg("game");
  if (!starts && n_starts) return null_arg("starts");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    std::vector<ce::PopulationState> s;
    for (size_t i = 0; i < n_starts; ++i) s.push_back({starts[i].beta, starts[i].alpha});
    const auto portrait = ce::build_phase_portrait(game->params, resolution, s, to_settings(settings));
    ce::write_phase(portrait, dir, to_provenance(provenance_json, 0), to_formats(formats));
  });
}

cegt_status cegt_abm_write(const cegt_abm_result* r, const char* dir, const char* provenance_json, uint64_t seed,
                           unsigned formats) {
  if (!r) return null_arg("result");
  if (!dir) return null_arg("dir");
  return guarded([&] { ce::write_abm(r->result, dir, to_provenance(provenance_json, seed), to_formats(formats)); });
}

}  // extern "C"
