#include "cyber_egt/game.hpp"

#include <cmath>

#include "cyber_egt/error.hpp"

namespace cyber_egt {

namespace {

void require(bool ok, const char* constraint) {
  if (!ok) throw ConstraintViolation(constraint);
}

}  // namespace

void FineScenario::validate() const {
  if (!std::isfinite(f_u) || f_u < 0.0) throw ConfigError("fine f_u must be a finite value >= 0");
  if (!std::isfinite(f_s) || f_s < 0.0) throw ConfigError("fine f_s must be a finite value >= 0");
}

GameParams::GameParams(const ParamValues& values) : values_(values) {
  const auto& x = values_;
  for (double q : {x.w, x.c_a, x.c_d, x.b_a, x.b_d, x.v, x.m, x.n, x.p, x.s})
    require(std::isfinite(q), "all parameters finite");
  require(0.0 < x.w, "0 < w");
  require(x.w <= 1.0, "w <= 1");
  require(0.0 < x.c_a, "0 < c_a");
  require(x.c_a < x.w, "c_a < w");
  require(0.0 < x.c_d, "0 < c_d");
  require(x.c_d < x.w, "c_d < w");
  require(x.c_a < x.b_a, "c_a < b_a");
  require(x.c_d < x.b_d, "c_d < b_d");
  require(x.b_d <= x.w, "b_d <= w");
  require(0.0 < x.v, "0 < v");
  require(x.v <= 1.0, "v <= 1");
  require(0.0 <= x.m && x.m <= 1.0, "0 <= m <= 1");
  require(0.0 <= x.n && x.n <= 1.0, "0 <= n <= 1");
  require(x.p >= 0.0, "p >= 0");
  require(x.s >= 0.0, "s >= 0");
}

GameParams GameParams::with_fines(const FineScenario& fines) const {
  fines.validate();
  ParamValues next = values_;
  next.m = 1.0;
  next.p = fines.f_s;
  next.n = 1.0;
  next.s = fines.f_u;
  return GameParams(next);
}

std::string_view to_string(StrategyPair pair) {
  switch (pair.index()) {
    case 0: return "NoDefence,NoAttack";
    case 1: return "NoDefence,Attack";
    case 2: return "Defence,NoAttack";
    default: return "Defence,Attack";
  }
}

PayoffMatrix build_payoff_matrix(const GameParams& g) {
  const double mp = g.fine_successful();
  const double ns = g.fine_unsuccessful();
  const double v = g.v();
  PayoffMatrix out;
  out.entries[0] = {0.0, 0.0};
  out.entries[1] = {-g.w(), -g.c_a() + g.b_a() - mp};
  out.entries[2] = {-g.c_d() + g.b_d(), 0.0};
  out.entries[3] = {-g.c_d() + v * g.b_d() - g.w() * (1.0 - v),
                    -g.c_a() + g.b_a() * (1.0 - v) - v * ns - (1.0 - v) * mp};
  return out;
}

FitnessProfile fitness_profile(const GameParams& g, PopulationState state) {
  const double mp = g.fine_successful();
  const double ns = g.fine_unsuccessful();
  const double v = g.v();
  const double beta = state.beta;
  const double alpha = state.alpha;

  FitnessProfile f;
  f.f_no_defence = -g.w() * alpha;
  f.f_defence = alpha * (-g.b_d() + v * g.b_d() - g.w() + v * g.w()) - g.c_d() + g.b_d();
  f.f_no_attack = 0.0;
  f.f_attack = beta * (v * mp - g.b_a() * v - v * ns) - g.c_a() + g.b_a() - mp;
  f.mean_defender = beta * f.f_defence + (1.0 - beta) * f.f_no_defence;
  f.mean_attacker = alpha * f.f_attack + (1.0 - alpha) * f.f_no_attack;
  return f;
}

double social_welfare(const GameParams& params, StrategyPair pair) {
  const Payoff p = build_payoff_matrix(params).at(pair);
  return p.defender + p.attacker;
}

std::array<double, 4> welfare_table(const GameParams& params) {
  const PayoffMatrix matrix = build_payoff_matrix(params);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = matrix.entries[i].defender + matrix.entries[i].attacker;
  return out;
}

}  // namespace cyber_egt
