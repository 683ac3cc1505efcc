#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cyber_egt/game.hpp"

namespace cyber_egt {

struct AbmConfig {
  std::size_t population_size = 1000;
  double selection_strength = 10.0;
  double mutation_rate = 0.001;
  std::size_t steps = 2000000;
  std::size_t burn_in = 500000;
  std::uint64_t seed = 1;
  PopulationState initial_state{0.5, 0.5};
  // Trajectory thinning interval; 0 picks steps / 1000.
  std::size_t record_every = 0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct AbmSample {
  std::size_t step = 0;
  double beta = 0.0;
  double alpha = 0.0;
};

struct AbmResult {
  double mean_beta = 0.0;
  double mean_alpha = 0.0;
  std::vector<AbmSample> trajectory_thinned;
};

// Finite two-population pairwise-comparison process. Each step updates one defender,
// then one attacker, against the opposite population's current mix.
AbmResult simulate(const GameParams& params, const AbmConfig& config);

}  // namespace cyber_egt
