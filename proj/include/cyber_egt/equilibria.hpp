#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cyber_egt/game.hpp"

namespace cyber_egt {

// E(beta, alpha): E2 = (0,1) and E3 = (1,0).
enum class EquilibriumKind : int { E1_00 = 0, E2_01 = 1, E3_10 = 2, E4_11 = 3, E5_interior = 4 };

inline constexpr std::array<EquilibriumKind, 5> kAllKinds{
    EquilibriumKind::E1_00, EquilibriumKind::E2_01, EquilibriumKind::E3_10, EquilibriumKind::E4_11,
    EquilibriumKind::E5_interior};

std::string_view to_string(EquilibriumKind kind);

PopulationState corner_location(EquilibriumKind kind);

enum class Stability : int { Stable = 0, Unstable = 1, Saddle = 2, NonHyperbolic = 3 };

std::string_view to_string(Stability s);

struct Jacobian2 {
  double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;

  double trace() const noexcept { return j11 + j22; }
  double determinant() const noexcept { return j11 * j22 - j12 * j21; }
};

struct EigenPair {
  std::complex<double> lambda1;
  std::complex<double> lambda2;
};

struct EquilibriumReport {
  EquilibriumKind kind = EquilibriumKind::E1_00;
  PopulationState location;
  Jacobian2 jacobian;
  EigenPair eigen;
  Stability classification = Stability::NonHyperbolic;
};

inline constexpr double kHyperbolicityTol = 1e-9;
inline constexpr double kInteriorMargin = 1e-9;
inline constexpr double kDenominatorFloor = 1e-12;

Jacobian2 jacobian(const GameParams& params, PopulationState state);

// Roots of x^2 - tr x + det, ordered by descending real part then descending imaginary part.
EigenPair eigenvalues(const Jacobian2& j);

Stability classify(const EigenPair& eigen, double tol = kHyperbolicityTol);

std::optional<PopulationState> interior_equilibrium(const GameParams& params);

// Four corner reports in E1..E4 order, then E5 when it exists.
std::vector<EquilibriumReport> analyze_equilibria(const GameParams& params);

// Bit i set <=> kind i is Stable.
class KindSet {
public:
  constexpr KindSet() = default;
  constexpr explicit KindSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool contains(EquilibriumKind k) const noexcept { return bits_ & bit(k); }
  constexpr void insert(EquilibriumKind k) noexcept { bits_ = static_cast<std::uint8_t>(bits_ | bit(k)); }
  constexpr int size() const noexcept {
    int n = 0;
    for (std::uint8_t b = bits_; b; b &= static_cast<std::uint8_t>(b - 1)) ++n;
    return n;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  friend constexpr bool operator==(KindSet, KindSet) = default;

private:
  static constexpr std::uint8_t bit(EquilibriumKind k) { return static_cast<std::uint8_t>(1u << static_cast<int>(k)); }
  std::uint8_t bits_ = 0;
};

KindSet stable_set(const GameParams& params);
KindSet stable_set(const std::vector<EquilibriumReport>& reports);

}  // namespace cyber_egt
