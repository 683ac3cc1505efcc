#include <algorithm>
#include <cmath>
#include <vector>

#include "cyber_egt/abm.hpp"
#include "cyber_egt/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyber_egt;

namespace {

AbmConfig quick(std::size_t n, std::uint64_t seed) {
  AbmConfig c;
  c.population_size = n;
  c.steps = 200000;
  c.burn_in = 50000;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("abm") {
  TEST_CASE("config validation names the field") {
    AbmConfig c;
    c.burn_in = c.steps;
    try {
      c.validate();
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("burn_in") != std::string::npos);
    }
    c = AbmConfig{};
    c.population_size = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AbmConfig{};
    c.mutation_rate = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AbmConfig{};
    c.selection_strength = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("pure drift with full mutation centres on one half") {
    AbmConfig c = quick(500, 3);
    c.selection_strength = 0;
    c.mutation_rate = 1;
    const AbmResult r = simulate(test::fig4a(), c);
    CHECK(std::abs(r.mean_beta - 0.5) < 0.05);
    CHECK(std::abs(r.mean_alpha - 0.5) < 0.05);
  }

  TEST_CASE("monomorphic corners absorb without mutation") {
    for (PopulationState corner : {PopulationState{0, 0}, PopulationState{0, 1}, PopulationState{1, 0},
                                   PopulationState{1, 1}}) {
      AbmConfig c = quick(100, 5);
      c.steps = 5000;
      c.burn_in = 100;
      c.selection_strength = 0;
      c.mutation_rate = 0;
      c.initial_state = corner;
      const AbmResult r = simulate(test::fig5a(), c);
      CHECK(r.mean_beta == corner.beta);
      CHECK(r.mean_alpha == corner.alpha);
    }
  }

  TEST_CASE("seed determinism") {
    const AbmConfig c = quick(200, 11);
    const AbmResult a = simulate(test::fig4b(), c);
    const AbmResult b = simulate(test::fig4b(), c);
    CHECK(a.mean_beta == b.mean_beta);
    CHECK(a.mean_alpha == b.mean_alpha);
    REQUIRE(a.trajectory_thinned.size() == b.trajectory_thinned.size());
    for (std::size_t i = 0; i < a.trajectory_thinned.size(); ++i) {
      CHECK(a.trajectory_thinned[i].beta == b.trajectory_thinned[i].beta);
      CHECK(a.trajectory_thinned[i].alpha == b.trajectory_thinned[i].alpha);
    }
    CHECK(simulate(test::fig4b(), quick(200, 12)).trajectory_thinned.back().step == 200000);
  }

  TEST_CASE("trajectory thinning") {
    AbmConfig c = quick(100, 1);
    c.steps = 1000;
    c.burn_in = 0;
    c.record_every = 100;
    const AbmResult r = simulate(test::fig4a(), c);
    CHECK(r.trajectory_thinned.size() == 11);
    CHECK(r.trajectory_thinned.front().step == 0);
    for (const auto& s : r.trajectory_thinned) {
      CHECK(s.beta >= 0);
      CHECK(s.beta <= 1);
    }
  }

  TEST_CASE("Fig 4(a) defaults approach the stable corner") {
    const AbmResult r = simulate(test::fig4a(), AbmConfig{});
    CHECK(std::abs(r.mean_beta - 1.0) < 0.05);
    CHECK(std::abs(r.mean_alpha - 1.0) < 0.05);
    CHECK(r.mean_beta <= 1.0);
  }

  TEST_CASE("deviation shrinks with population size") {
    // Fig 4(b): E2 (no defence, attack) is the unique stable corner.
    auto median_dev = [](std::size_t n) {
      std::vector<double> devs;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const AbmResult r = simulate(test::fig4b(), quick(n, seed));
        devs.push_back(0.5 * (std::abs(r.mean_beta - 0.0) + std::abs(r.mean_alpha - 1.0)));
      }
      std::nth_element(devs.begin(), devs.begin() + 5, devs.end());
      return devs[5];
    };
    const double small = median_dev(100);
    const double mid = median_dev(200);
    const double large = median_dev(1000);
    CHECK(mid <= small + 1e-3);
    CHECK(large <= mid + 1e-3);
  }
}
