#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "cyber_egt/dynamics.hpp"
#include "cyber_egt/equilibria.hpp"
#include "cyber_egt/game.hpp"

namespace cyber_egt::test {

inline GameParams fig4a() { return GameParams({0.98, 0.51, 0.20, 0.90, 0.79, 0.26}); }
inline GameParams fig4b() { return GameParams({0.43, 0.29, 0.34, 0.52, 0.37, 0.24}); }
inline GameParams fig5a() { return GameParams({0.98, 0.69, 0.54, 0.79, 0.72, 0.15}); }
inline GameParams fig5b() { return GameParams({0.47, 0.18, 0.41, 0.24, 0.47, 0.54}); }
// Two simultaneously stable corners.
inline GameParams fig6_example() { return GameParams({0.59, 0.32, 0.48, 0.44, 0.49, 0.42}); }

// Rejection sampler over a box, independent of the library's ensemble sampler.
class ParamGenerator {
public:
  explicit ParamGenerator(unsigned seed, bool with_fines = false) : rng_(seed), with_fines_(with_fines) {}

  GameParams next() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
      ParamValues x;
      x.w = u(rng_);
      x.c_a = u(rng_);
      x.c_d = u(rng_);
      x.b_a = 2.0 * u(rng_);
      x.b_d = u(rng_);
      x.v = u(rng_);
      if (with_fines_) {
        x.m = u(rng_);
        x.n = u(rng_);
        x.p = u(rng_);
        x.s = u(rng_);
      }
      if (x.w > 0 && x.c_a > 0 && x.c_a < x.w && x.c_d > 0 && x.c_d < x.w && x.c_a < x.b_a && x.c_d < x.b_d &&
          x.b_d <= x.w && x.v > 0)
        return GameParams(x);
    }
  }

  PopulationState state() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {u(rng_), u(rng_)};
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  bool with_fines_;
};

// Central differences of the replicator field.
inline Jacobian2 finite_difference_jacobian(const GameParams& g, PopulationState s, double h = 1e-6) {
  auto f = [&](double b, double a) { return replicator_field(g, {b, a}); };
  const FieldValue bp = f(s.beta + h, s.alpha), bm = f(s.beta - h, s.alpha);
  const FieldValue ap = f(s.beta, s.alpha + h), am = f(s.beta, s.alpha - h);
  return {(bp.d_beta - bm.d_beta) / (2 * h), (ap.d_beta - am.d_beta) / (2 * h), (bp.d_alpha - bm.d_alpha) / (2 * h),
          (ap.d_alpha - am.d_alpha) / (2 * h)};
}

// Symbolic corner eigenvalues {lambda1, lambda2} per corner, in E1..E4 order.
struct CornerForms {
  double l1, l2;
};

inline CornerForms corner_forms(const GameParams& g, EquilibriumKind k) {
  const double mp = g.fine_successful(), ns = g.fine_unsuccessful();
  const double ba = g.b_a(), bd = g.b_d(), ca = g.c_a(), cd = g.c_d(), w = g.w(), v = g.v();
  switch (k) {
    case EquilibriumKind::E1_00: return {bd - cd, ba - ca - mp};
    case EquilibriumKind::E2_01: return {ca - ba + mp, bd * v - cd + w * v};
    case EquilibriumKind::E3_10: return {cd - bd, ba - ca - mp - ba * v - v * ns + v * mp};
    default: return {ca - ba + mp + ba * v + v * ns - v * mp, cd - bd * v - w * v};
  }
}


// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("cyber_egt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace cyber_egt::test
