#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cyber_egt/cyber_egt.h"
#include "doctest.h"

namespace {

cegt_params fig4a() { return {0.98, 0.51, 0.20, 0.90, 0.79, 0.26, 0, 0, 0, 0}; }
cegt_params fig5a() { return {0.98, 0.69, 0.54, 0.79, 0.72, 0.15, 0, 0, 0, 0}; }

struct Game {
  cegt_game* g = nullptr;
  explicit Game(cegt_params p) { REQUIRE(cegt_game_create(&p, &g) == CEGT_OK); }
  ~Game() { cegt_game_destroy(g); }
};

}  // namespace

TEST_SUITE("c api") {
  TEST_CASE("version and defaults") {
    CHECK(std::string(cegt_version()) == "1.0.0");
    cegt_integrator i;
    cegt_default_integrator(&i);
    CHECK(i.step == 0.01);
    CHECK(i.horizon == 1000);
    cegt_sampler s;
    cegt_default_sampler(&s);
    CHECK(s.count == 100000);
    CHECK(s.master_seed == 1);
    cegt_abm_config a;
    cegt_default_abm(&a);
    CHECK(a.population_size == 1000);
  }

  TEST_CASE("constraint errors") {
    cegt_params p = fig4a();
    p.c_a = 1.2;
    cegt_game* g = nullptr;
    CHECK(cegt_game_create(&p, &g) == CEGT_ERR_CONSTRAINT);
    CHECK(g == nullptr);
    CHECK(std::string(cegt_last_constraint()) == "c_a < w");
    CHECK(std::strlen(cegt_last_error()) > 0);
    CHECK(cegt_game_create(nullptr, &g) == CEGT_ERR_INVALID_ARGUMENT);
    cegt_game_destroy(nullptr);
  }

  TEST_CASE("payoffs, welfare and analysis") {
    Game g(fig4a());
    double d = 0, a = 0;
    REQUIRE(cegt_payoff(g.g, 1, 1, &d, &a) == CEGT_OK);
    CHECK(d == doctest::Approx(-0.7198));
    CHECK(a == doctest::Approx(0.156));
    double w = 0;
    REQUIRE(cegt_welfare(g.g, 1, 0, &w) == CEGT_OK);
    CHECK(std::abs(w - 0.59) < 1e-9);
    CHECK(cegt_welfare(g.g, 2, 0, &w) == CEGT_ERR_INVALID_ARGUMENT);
    uint32_t mask = 0;
    REQUIRE(cegt_stable_mask(g.g, &mask) == CEGT_OK);
    CHECK(mask == (1u << CEGT_E4));
    cegt_equilibrium eq[5];
    std::size_t n = 0;
    REQUIRE(cegt_analyze(g.g, eq, &n) == CEGT_OK);
    CHECK(n == 4);
    CHECK(eq[3].kind == CEGT_E4);
    CHECK(eq[3].classification == CEGT_STABLE);
    double db = 0, da = 0;
    REQUIRE(cegt_field(g.g, {0.5, 0.5}, &db, &da) == CEGT_OK);
    CHECK(db == doctest::Approx(0.106275));
    CHECK(da == doctest::Approx(0.068250));
  }

  TEST_CASE("interior and field grid") {
    Game g(fig5a());
    int present = 0;
    cegt_state s;
    REQUIRE(cegt_interior(g.g, &present, &s) == CEGT_OK);
    CHECK(present == 1);
    CHECK(s.beta == doctest::Approx(0.843882).epsilon(1e-6));
    cegt_equilibrium eq[5];
    std::size_t n = 0;
    REQUIRE(cegt_analyze(g.g, eq, &n) == CEGT_OK);
    REQUIRE(n == 5);
    CHECK(std::abs(eq[4].lambda1_re - 0.041501) < 1e-5);
    CHECK(eq[4].classification == CEGT_SADDLE);
    std::vector<double> grid(4 * 9);
    REQUIRE(cegt_field_grid(g.g, 3, grid.data(), grid.size()) == CEGT_OK);
    CHECK(grid[0] == 0.0);
    CHECK(grid[4 * 8] == 1.0);
    CHECK(grid[4 * 8 + 1] == 1.0);
    CHECK(cegt_field_grid(g.g, 3, grid.data(), 4) == CEGT_ERR_INVALID_ARGUMENT);
    CHECK(cegt_field_grid(g.g, 1, grid.data(), grid.size()) == CEGT_ERR_CONFIG);
  }

  TEST_CASE("fines derive a new game") {
    Game g(fig4a());
    cegt_game* f = nullptr;
    REQUIRE(cegt_game_with_fines(g.g, 0.5, 0.5, &f) == CEGT_OK);
    cegt_params p;
    REQUIRE(cegt_game_params(f, &p) == CEGT_OK);
    CHECK(p.m == 1);
    CHECK(p.p == 0.5);
    cegt_game_destroy(f);
    CHECK(cegt_game_with_fines(g.g, -1, 0, &f) == CEGT_ERR_CONFIG);
  }

  TEST_CASE("integration") {
    Game g(fig4a());
    cegt_integrator s;
    cegt_default_integrator(&s);
    s.record_stride = 100;
    cegt_trajectory* t = nullptr;
    REQUIRE(cegt_integrate(g.g, {0.5, 0.5}, &s, &t) == CEGT_OK);
    CHECK(cegt_trajectory_converged(t) == 1);
    const cegt_state end = cegt_trajectory_final(t);
    CHECK(std::abs(end.beta - 1) < 1e-6);
    CHECK(std::abs(end.alpha - 1) < 1e-6);
    CHECK(cegt_trajectory_size(t) > 1);
    double time = -1;
    cegt_state st;
    REQUIRE(cegt_trajectory_sample(t, 0, &time, &st) == CEGT_OK);
    CHECK(time == 0.0);
    CHECK(cegt_trajectory_sample(t, 1u << 30, &time, &st) == CEGT_ERR_INVALID_ARGUMENT);
    cegt_trajectory_destroy(t);
    s.step = 0;
    CHECK(cegt_integrate(g.g, {0.5, 0.5}, &s, &t) == CEGT_ERR_CONFIG);
  }

  TEST_CASE("ensemble handle") {
    cegt_sampler s;
    cegt_default_sampler(&s);
    s.count = 500;
    cegt_ensemble* e = nullptr;
    REQUIRE(cegt_ensemble_run(&s, &e) == CEGT_OK);
    CHECK(cegt_ensemble_size(e) == 500);
    cegt_game_record r;
    REQUIRE(cegt_ensemble_record(e, 7, &r) == CEGT_OK);
    CHECK(r.index == 7);
    CHECK((r.stable_mask & (1u << CEGT_E1)) == 0);
    cegt_summary sum;
    REQUIRE(cegt_ensemble_summary(e, &sum) == CEGT_OK);
    CHECK(sum.count == 500);
    CHECK(sum.correlation[0][0] == 1.0);
    s.threads = 2;
    cegt_ensemble* e2 = nullptr;
    REQUIRE(cegt_ensemble_run(&s, &e2) == CEGT_OK);
    CHECK(cegt_ensemble_digest(e) == cegt_ensemble_digest(e2));
    cegt_ensemble_destroy(e);
    cegt_ensemble_destroy(e2);
    s.count = 0;
    CHECK(cegt_ensemble_run(&s, &e) == CEGT_ERR_CONFIG);
  }

  TEST_CASE("abm handle") {
    Game g(fig4a());
    cegt_abm_config c;
    cegt_default_abm(&c);
    c.steps = 100000;
    c.burn_in = 10000;
    cegt_abm_result* r = nullptr;
    REQUIRE(cegt_abm_run(g.g, &c, &r) == CEGT_OK);
    double mb = 0, ma = 0;
    REQUIRE(cegt_abm_means(r, &mb, &ma) == CEGT_OK);
    CHECK(mb > 0.5);
    CHECK(cegt_abm_samples(r) > 0);
    cegt_abm_destroy(r);
    c.burn_in = c.steps;
    CHECK(cegt_abm_run(g.g, &c, &r) == CEGT_ERR_CONFIG);
  }

  TEST_CASE("text report sizing") {
    Game g(fig4a());
    std::size_t needed = 0;
    REQUIRE(cegt_analyze_text(g.g, nullptr, 0, &needed) == CEGT_OK);
    std::string buf(needed, '\0');
    REQUIRE(cegt_analyze_text(g.g, buf.data(), buf.size(), &needed) == CEGT_OK);
    CHECK(std::string(buf.c_str()).find("E4") != std::string::npos);
    char tiny[4];
    CHECK(cegt_analyze_text(g.g, tiny, sizeof tiny, &needed) == CEGT_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("io errors") {
    CHECK(cegt_prepare_output("/proc/cyber_egt_cannot_write_here") == CEGT_ERR_IO);
    CHECK(cegt_prepare_output(nullptr) == CEGT_ERR_INVALID_ARGUMENT);
  }
}
