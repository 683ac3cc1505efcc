#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace cyber_egt {

// Raw parameter values; validated when turned into GameParams.
struct ParamValues {
  double w = 0.0;    // asset value
  double c_a = 0.0;  // attack cost
  double c_d = 0.0;  // defence cost
  double b_a = 0.0;  // attacker benefit
  double b_d = 0.0;  // defender benefit
  double v = 0.0;    // probability of successful defence
  double m = 0.0;    // catch probability, unsecured system
  double n = 0.0;    // catch probability, secured system
  double p = 0.0;    // penalty, successful attack
  double s = 0.0;    // penalty, unsuccessful attack
};

// Composite attacker fines: f_u = n*s, f_s = m*p.
struct FineScenario {
  double f_u = 0.0;
  double f_s = 0.0;

  // Throws ConfigError when either fine is negative or non-finite.
  void validate() const;
};

class GameParams {
public:
  // Throws ConstraintViolation naming the first violated inequality.
  explicit GameParams(const ParamValues& values);

  const ParamValues& values() const noexcept { return values_; }

  double w() const noexcept { return values_.w; }
  double c_a() const noexcept { return values_.c_a; }
  double c_d() const noexcept { return values_.c_d; }
  double b_a() const noexcept { return values_.b_a; }
  double b_d() const noexcept { return values_.b_d; }
  double v() const noexcept { return values_.v; }

  // The payoffs see m, n, p, s only through these products.
  double fine_successful() const noexcept { return values_.m * values_.p; }
  double fine_unsuccessful() const noexcept { return values_.n * values_.s; }

  // Replaces (m, p, n, s) by (1, f_s, 1, f_u).
  GameParams with_fines(const FineScenario& fines) const;

private:
  ParamValues values_;
};

enum class DefenderMove : int { NoDefence = 0, Defence = 1 };
enum class AttackerMove : int { NoAttack = 0, Attack = 1 };

struct StrategyPair {
  DefenderMove defender = DefenderMove::NoDefence;
  AttackerMove attacker = AttackerMove::NoAttack;

  // 0..3 in the order (NoD,NoA), (NoD,A), (D,NoA), (D,A).
  constexpr std::size_t index() const noexcept {
    return static_cast<std::size_t>(defender) * 2 + static_cast<std::size_t>(attacker);
  }

  friend constexpr bool operator==(StrategyPair, StrategyPair) = default;
};

inline constexpr std::array<StrategyPair, 4> kAllStrategyPairs{{
    {DefenderMove::NoDefence, AttackerMove::NoAttack},
    {DefenderMove::NoDefence, AttackerMove::Attack},
    {DefenderMove::Defence, AttackerMove::NoAttack},
    {DefenderMove::Defence, AttackerMove::Attack},
}};

std::string_view to_string(StrategyPair pair);

struct Payoff {
  double defender = 0.0;
  double attacker = 0.0;
};

struct PayoffMatrix {
  std::array<Payoff, 4> entries{};

  const Payoff& at(StrategyPair pair) const { return entries[pair.index()]; }
};

// beta = frequency of Defence, alpha = frequency of Attack.
struct PopulationState {
  double beta = 0.0;
  double alpha = 0.0;

  bool in_unit_square() const noexcept {
    return beta >= 0.0 && beta <= 1.0 && alpha >= 0.0 && alpha <= 1.0;
  }
};

struct FitnessProfile {
  double f_no_defence = 0.0;
  double f_defence = 0.0;
  double f_no_attack = 0.0;
  double f_attack = 0.0;
  double mean_defender = 0.0;
  double mean_attacker = 0.0;
};

PayoffMatrix build_payoff_matrix(const GameParams& params);

FitnessProfile fitness_profile(const GameParams& params, PopulationState state);

double social_welfare(const GameParams& params, StrategyPair pair);

std::array<double, 4> welfare_table(const GameParams& params);

}  // namespace cyber_egt
