#include "cyber_egt/abm.hpp"

#include <algorithm>
#include <cmath>

#include "cyber_egt/error.hpp"
#include "cyber_egt/rng.hpp"

namespace cyber_egt {

void AbmConfig::validate() const {
  if (population_size < 2) throw ConfigError("abm.population_size must be >= 2");
  if (!std::isfinite(selection_strength) || selection_strength < 0.0)
    throw ConfigError("abm.selection_strength must be >= 0");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("abm.mutation_rate must lie in [0, 1]");
  if (steps < 1) throw ConfigError("abm.steps must be >= 1");
  if (burn_in >= steps) throw ConfigError("abm.burn_in must be < abm.steps");
  if (!initial_state.in_unit_square()) throw ConfigError("abm.initial_state must lie in the unit square");
}

namespace {

// Number of strategy-1 individuals in one population of size n.
struct Population {
  std::size_t n;
  std::size_t ones;

  double frequency() const { return static_cast<double>(ones) / static_cast<double>(n); }
};

double imitation_probability(double selection, double peer_payoff, double own_payoff) {
  return 1.0 / (1.0 + std::exp(-selection * (peer_payoff - own_payoff)));
}

// payoff_one / payoff_zero: expected payoff of each strategy against the opponent mix.
void update(Population& pop, double payoff_zero, double payoff_one, const AbmConfig& cfg, Stream& rng) {
  const bool focal_one = rng.below(pop.n) < pop.ones;
  bool next = focal_one;
  if (cfg.mutation_rate > 0.0 && rng.bernoulli(cfg.mutation_rate)) {
    next = rng.below(2) == 1;
  } else {
    // Peer drawn uniformly from the other n-1 individuals.
    const std::size_t peers_one = pop.ones - (focal_one ? 1 : 0);
    const bool peer_one = rng.below(pop.n - 1) < peers_one;
    if (peer_one != focal_one) {
      const double own = focal_one ? payoff_one : payoff_zero;
      const double peer = peer_one ? payoff_one : payoff_zero;
      if (rng.bernoulli(imitation_probability(cfg.selection_strength, peer, own))) next = peer_one;
    }
  }
  if (next != focal_one) {
    if (next) ++pop.ones;
    else --pop.ones;
  }
}

}  // namespace

AbmResult simulate(const GameParams& params, const AbmConfig& cfg) {
  cfg.validate();
  Stream rng(splitmix64(cfg.seed));
  const std::size_t n = cfg.population_size;
  auto initial = [n](double x) { return static_cast<std::size_t>(std::llround(x * static_cast<double>(n))); };
  Population defenders{n, initial(cfg.initial_state.beta)};
  Population attackers{n, initial(cfg.initial_state.alpha)};
  const std::size_t every = cfg.record_every ? cfg.record_every : std::max<std::size_t>(1, cfg.steps / 1000);

  AbmResult out;
  out.trajectory_thinned.push_back({0, defenders.frequency(), attackers.frequency()});
  double sum_beta = 0.0, sum_alpha = 0.0;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    {
      const FitnessProfile f = fitness_profile(params, {defenders.frequency(), attackers.frequency()});
      update(defenders, f.f_no_defence, f.f_defence, cfg, rng);
    }
    {
      const FitnessProfile f = fitness_profile(params, {defenders.frequency(), attackers.frequency()});
      update(attackers, f.f_no_attack, f.f_attack, cfg, rng);
    }
    if (step > cfg.burn_in) {
      sum_beta += defenders.frequency();
      sum_alpha += attackers.frequency();
    }
    if (step % every == 0 || step == cfg.steps)
      out.trajectory_thinned.push_back({step, defenders.frequency(), attackers.frequency()});
  }
  const auto kept = static_cast<double>(cfg.steps - cfg.burn_in);
  out.mean_beta = sum_beta / kept;
  out.mean_alpha = sum_alpha / kept;
  return out;
}

}  // namespace cyber_egt
