#include "cyber_egt/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cyber_egt/error.hpp"

namespace cyber_egt {

double defender_advantage(const GameParams& g, double alpha) {
  const double v = g.v();
  return g.b_d() - g.c_d() - g.b_d() * alpha + v * g.b_d() * alpha + v * g.w() * alpha;
}

double attacker_advantage(const GameParams& g, double beta) {
  const double v = g.v();
  const double mp = g.fine_successful();
  const double ns = g.fine_unsuccessful();
  return -g.c_a() + g.b_a() - mp - g.b_a() * v * beta - v * ns * beta + v * mp * beta;
}

FieldValue replicator_field(const GameParams& params, PopulationState s) {
  return {s.beta * (1.0 - s.beta) * defender_advantage(params, s.alpha),
          s.alpha * (1.0 - s.alpha) * attacker_advantage(params, s.beta)};
}

void IntegratorSettings::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("integrator step must be > 0");
  if (!(horizon >= step) || !std::isfinite(horizon)) throw ConfigError("integrator horizon must be >= step");
  if (!(convergence_tol > 0.0)) throw ConfigError("integrator convergence_tol must be > 0");
  if (settle_steps == 0) throw ConfigError("integrator settle_steps must be >= 1");
  if (record_stride == 0) throw ConfigError("integrator record_stride must be >= 1");
}

namespace {

PopulationState rk4_step(const GameParams& g, PopulationState s, double h) {
  const FieldValue k1 = replicator_field(g, s);
  const FieldValue k2 = replicator_field(g, {s.beta + 0.5 * h * k1.d_beta, s.alpha + 0.5 * h * k1.d_alpha});
  const FieldValue k3 = replicator_field(g, {s.beta + 0.5 * h * k2.d_beta, s.alpha + 0.5 * h * k2.d_alpha});
  const FieldValue k4 = replicator_field(g, {s.beta + h * k3.d_beta, s.alpha + h * k3.d_alpha});
  return {s.beta + h / 6.0 * (k1.d_beta + 2.0 * (k2.d_beta + k3.d_beta) + k4.d_beta),
          s.alpha + h / 6.0 * (k1.d_alpha + 2.0 * (k2.d_alpha + k3.d_alpha) + k4.d_alpha)};
}

double overshoot(double x) { return x < 0.0 ? -x : (x > 1.0 ? x - 1.0 : 0.0); }

Trajectory run(const GameParams& params, PopulationState start, const IntegratorSettings& settings, bool record) {
  settings.validate();
  if (!std::isfinite(start.beta) || !std::isfinite(start.alpha) || !start.in_unit_square())
    throw ConfigError("integration start must lie in the unit square");

  const auto total = static_cast<std::size_t>(std::floor(settings.horizon / settings.step + 1e-9));
  Trajectory out;
  if (record) {
    out.samples.reserve(total / settings.record_stride + 2);
    out.samples.push_back({0.0, start});
  }

  PopulationState s = start;
  std::size_t below = 0;
  std::size_t i = 0;
  while (i < total) {
    PopulationState next = rk4_step(params, s, settings.step);
    ++i;
    if (!std::isfinite(next.beta) || !std::isfinite(next.alpha)) throw IntegrationFailure(i);
    out.max_overshoot = std::max({out.max_overshoot, overshoot(next.beta), overshoot(next.alpha)});
    next.beta = std::clamp(next.beta, 0.0, 1.0);
    next.alpha = std::clamp(next.alpha, 0.0, 1.0);
    s = next;

    const FieldValue f = replicator_field(params, s);
    const double magnitude = std::max(std::abs(f.d_beta), std::abs(f.d_alpha));
    below = magnitude < settings.convergence_tol ? below + 1 : 0;
    if (below >= settings.settle_steps) out.converged = true;

    const bool finished = i == total || (out.converged && settings.stop_on_convergence);
    if (record && (i % settings.record_stride == 0 || finished))
      out.samples.push_back({static_cast<double>(i) * settings.step, s});
    if (finished) break;
  }
  out.final_state = s;
  out.steps_taken = i;
  return out;
}

}  // namespace

Trajectory integrate(const GameParams& params, PopulationState start, const IntegratorSettings& settings) {
  return run(params, start, settings, true);
}

Trajectory integrate_endpoint(const GameParams& params, PopulationState start, const IntegratorSettings& settings) {
  return run(params, start, settings, false);
}

std::vector<FieldSample> field_grid(const GameParams& params, int resolution) {
  if (resolution < 2) throw ConfigError("field grid resolution must be >= 2");
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  const double denom = resolution - 1;
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      const PopulationState s{col / denom, row / denom};
      out.push_back({s, replicator_field(params, s)});
    }
  }
  return out;
}

}  // namespace cyber_egt
