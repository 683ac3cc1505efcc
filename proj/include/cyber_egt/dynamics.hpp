#pragma once

#include <cstddef>
#include <vector>

#include "cyber_egt/game.hpp"

namespace cyber_egt {

struct FieldValue {
  double d_beta = 0.0;
  double d_alpha = 0.0;
};

// The brackets multiplying beta(1-beta) and alpha(1-alpha) in the replicator equations.
double defender_advantage(const GameParams& params, double alpha);
double attacker_advantage(const GameParams& params, double beta);

FieldValue replicator_field(const GameParams& params, PopulationState state);

struct IntegratorSettings {
  double step = 0.01;
  double horizon = 1000.0;
  double convergence_tol = 1e-9;
  // Consecutive sub-tolerance steps required before declaring convergence.
  std::size_t settle_steps = 100;
  // Keep every n-th sample (the start and final states are always kept).
  std::size_t record_stride = 1;
  // Stop as soon as convergence is declared instead of running to the horizon.
  bool stop_on_convergence = true;

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  PopulationState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool converged = false;
  PopulationState final_state;
  std::size_t steps_taken = 0;
  // Largest per-step distance the unclamped update moved outside the unit square.
  double max_overshoot = 0.0;
};

// Fixed-step classical RK4 with per-step clamping to the unit square.
// Throws IntegrationFailure on a non-finite state.
Trajectory integrate(const GameParams& params, PopulationState start, const IntegratorSettings& settings);

// Same integration without storing samples.
Trajectory integrate_endpoint(const GameParams& params, PopulationState start, const IntegratorSettings& settings);

struct FieldSample {
  PopulationState state;
  FieldValue value;
};

// Uniform resolution x resolution lattice over [0,1]^2, row-major with alpha as the row
// coordinate (alpha = 0 first) and beta varying fastest.
std::vector<FieldSample> field_grid(const GameParams& params, int resolution);

}  // namespace cyber_egt
