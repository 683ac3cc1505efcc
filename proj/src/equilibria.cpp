#include "cyber_egt/equilibria.hpp"

#include <cmath>

#include "cyber_egt/dynamics.hpp"

namespace cyber_egt {

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::E1_00: return "E1";
    case EquilibriumKind::E2_01: return "E2";
    case EquilibriumKind::E3_10: return "E3";
    case EquilibriumKind::E4_11: return "E4";
    case EquilibriumKind::E5_interior: return "E5";
  }
  return "?";
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Saddle: return "Saddle";
    case Stability::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

PopulationState corner_location(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::E2_01: return {0.0, 1.0};
    case EquilibriumKind::E3_10: return {1.0, 0.0};
    case EquilibriumKind::E4_11: return {1.0, 1.0};
    default: return {0.0, 0.0};
  }
}

Jacobian2 jacobian(const GameParams& g, PopulationState s) {
  const double v = g.v();
  const double mp = g.fine_successful();
  const double ns = g.fine_unsuccessful();
  Jacobian2 j;
  j.j11 = (1.0 - 2.0 * s.beta) * defender_advantage(g, s.alpha);
  j.j12 = s.beta * (1.0 - s.beta) * (g.b_d() * (v - 1.0) + v * g.w());
  j.j21 = s.alpha * (1.0 - s.alpha) * (v * (mp - g.b_a() - ns));
  j.j22 = (1.0 - 2.0 * s.alpha) * attacker_advantage(g, s.beta);
  return j;
}

EigenPair eigenvalues(const Jacobian2& j) {
  using cd = std::complex<double>;
  // Triangular matrices (every corner) have their diagonal as exact eigenvalues.
  if (j.j12 == 0.0 || j.j21 == 0.0) {
    cd a{j.j11, 0.0}, b{j.j22, 0.0};
    if (b.real() > a.real()) std::swap(a, b);
    return {a, b};
  }
  const double half_tr = 0.5 * j.trace();
  // (j11 - j22)^2/4 + j12 j21 avoids cancellation in tr^2/4 - det.
  const double half_diff = 0.5 * (j.j11 - j.j22);
  const double disc = half_diff * half_diff + j.j12 * j.j21;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return {cd{half_tr + r, 0.0}, cd{half_tr - r, 0.0}};
  }
  const double im = std::sqrt(-disc);
  return {cd{half_tr, im}, cd{half_tr, -im}};
}

Stability classify(const EigenPair& e, double tol) {
  const double r1 = e.lambda1.real();
  const double r2 = e.lambda2.real();
  if (std::abs(r1) <= tol || std::abs(r2) <= tol) return Stability::NonHyperbolic;
  if (r1 < 0.0 && r2 < 0.0) return Stability::Stable;
  if (r1 > 0.0 && r2 > 0.0) return Stability::Unstable;
  return Stability::Saddle;
}

std::optional<PopulationState> interior_equilibrium(const GameParams& g) {
  const double v = g.v();
  const double mp = g.fine_successful();
  const double ns = g.fine_unsuccessful();
  const double beta_den = v * (g.b_a() - mp + ns);
  const double alpha_den = v * g.b_d() - g.b_d() + v * g.w();
  if (std::abs(beta_den) <= kDenominatorFloor || std::abs(alpha_den) <= kDenominatorFloor) return std::nullopt;
  const double beta = (g.b_a() - g.c_a() - mp) / beta_den;
  const double alpha = (g.c_d() - g.b_d()) / alpha_den;
  auto inside = [](double x) { return x > kInteriorMargin && x < 1.0 - kInteriorMargin; };
  if (!inside(beta) || !inside(alpha)) return std::nullopt;
  return PopulationState{beta, alpha};
}

namespace {

EquilibriumReport report_at(const GameParams& g, EquilibriumKind kind, PopulationState where) {
  EquilibriumReport r;
  r.kind = kind;
  r.location = where;
  r.jacobian = jacobian(g, where);
  r.eigen = eigenvalues(r.jacobian);
  r.classification = classify(r.eigen);
  return r;
}

}  // namespace

std::vector<EquilibriumReport> analyze_equilibria(const GameParams& g) {
  std::vector<EquilibriumReport> out;
  out.reserve(5);
  for (EquilibriumKind k : {EquilibriumKind::E1_00, EquilibriumKind::E2_01, EquilibriumKind::E3_10,
                            EquilibriumKind::E4_11})
    out.push_back(report_at(g, k, corner_location(k)));
  if (auto interior = interior_equilibrium(g)) out.push_back(report_at(g, EquilibriumKind::E5_interior, *interior));
  return out;
}

KindSet stable_set(const std::vector<EquilibriumReport>& reports) {
  KindSet out;
  for (const auto& r : reports)
    if (r.classification == Stability::Stable) out.insert(r.kind);
  return out;
}

KindSet stable_set(const GameParams& params) { return stable_set(analyze_equilibria(params)); }

}  // namespace cyber_egt
