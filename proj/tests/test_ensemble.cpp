#include <cmath>
#include <numeric>

#include "cyber_egt/ensemble.hpp"
#include "cyber_egt/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyber_egt;

namespace {

SamplerConfig small(std::size_t count, std::uint64_t seed = 42) {
  SamplerConfig c;
  c.count = count;
  c.master_seed = seed;
  return c;
}

GameRecord record_with(std::size_t index, const GameParams& g, std::initializer_list<EquilibriumKind> kinds) {
  GameRecord r = analyze_game(index, g);
  KindSet s;
  for (auto k : kinds) s.insert(k);
  r.stable_kinds = s;
  return r;
}

}  // namespace

TEST_SUITE("ensemble") {
  TEST_CASE("sampled games satisfy the constraints and are reproducible") {
    const SamplerConfig cfg = small(1);
    const GameParams a = sample_game(0, cfg);
    const GameParams b = sample_game(0, cfg);
    CHECK(a.values().w == b.values().w);
    CHECK(a.values().v == b.values().v);
    CHECK(sample_game(1, cfg).values().w != a.values().w);
    for (std::size_t i = 0; i < 5000; ++i) {
      const auto& x = sample_game(i, cfg).values();  // constructor would throw on violation
      CHECK(x.b_a <= cfg.b_a_upper);
    }
  }

  TEST_CASE("uniform oracle: mean of w") {
    const SamplerConfig cfg = small(1, 7);
    double sum = 0.0;
    for (std::size_t i = 0; i < 10000; ++i) sum += sample_game(i, cfg).w();
    CHECK(std::abs(sum / 10000 - 0.5) < 0.02);
  }

  TEST_CASE("sampler config validation") {
    SamplerConfig c = small(0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small(10);
    c.b_a_upper = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.b_a_upper = 0.9;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small(10);
    c.scenario.f_u = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(sample_base_game(1, 0, -1.0), ConfigError);
  }

  TEST_CASE("single game conserves counts") {
    const EnsembleResult r = run_ensemble(small(1, 3));
    const auto& d = r.summary.stable_count_distribution;
    CHECK(std::accumulate(d.begin(), d.end(), std::size_t{0}) == 1);
  }

  TEST_CASE("invariants over a mid-size run") {
    const EnsembleResult r = run_ensemble(small(20000, 5));
    const auto& s = r.summary;
    CHECK(std::accumulate(s.stable_count_distribution.begin(), s.stable_count_distribution.end(), std::size_t{0}) ==
          20000);
    CHECK(s.stable_count_distribution[3] == 0);
    CHECK(s.kind_counts[static_cast<int>(EquilibriumKind::E1_00)] == 0);
    CHECK(s.kind_counts[static_cast<int>(EquilibriumKind::E5_interior)] == 0);
    for (auto c : s.kind_counts) CHECK(c <= 20000);
    double ratio_sum = 0.0;
    for (double x : s.kind_ratios) ratio_sum += x;
    CHECK(std::abs(ratio_sum - 1.0) < 1e-9);
    for (const auto& rec : r.records) {
      CHECK(rec.stable_kinds.size() < 3);
      CHECK_FALSE(rec.stable_kinds.contains(EquilibriumKind::E1_00));
      CHECK_FALSE(rec.stable_kinds.contains(EquilibriumKind::E5_interior));
    }
    // Correlation matrix is symmetric with unit diagonal.
    for (int i = 0; i < 4; ++i) {
      REQUIRE(s.correlation[i][i].has_value());
      CHECK(*s.correlation[i][i] == 1.0);
      for (int j = 0; j < 4; ++j) CHECK(s.correlation[i][j] == s.correlation[j][i]);
    }
    std::size_t e4 = 0;
    for (auto c : s.v_curves[static_cast<int>(EquilibriumKind::E4_11)]) e4 += c;
    CHECK(e4 == s.kind_counts[static_cast<int>(EquilibriumKind::E4_11)]);
    for (const auto& h : s.parameter_impact)
      CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == e4);
    CHECK(s.parameter_impact[4].parameter == "b_a");
    CHECK(s.parameter_impact[4].counts.size() == 14);
    std::size_t hist = 0;
    for (auto c : s.welfare.histogram) hist += c;
    CHECK(hist == 4 * 20000);
  }

  TEST_CASE("determinism across worker counts") {
    SamplerConfig one = small(5000, 99);
    SamplerConfig four = one;
    four.threads = 4;
    const EnsembleResult a = run_ensemble(one);
    const EnsembleResult b = run_ensemble(four);
    CHECK(digest(a.records) == digest(b.records));
    CHECK(a.summary.kind_counts == b.summary.kind_counts);
    CHECK(digest(run_ensemble(one).records) == digest(a.records));
    CHECK(digest(run_ensemble(small(5000, 100)).records) != digest(a.records));
  }

  TEST_CASE("fine levels share parameter draws") {
    const auto study = fines_study(2000, 8, {0.0, 0.1});
    const EnsembleResult base = run_ensemble(small(2000, 8));
    CHECK(study[0].digest == digest(base.records));
    CHECK(study[0].summary.kind_counts == base.summary.kind_counts);
    // Same w, v, costs per index under the fine.
    SamplerConfig fined = small(3, 8);
    fined.scenario = {0.1, 0.1};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(sample_game(i, fined).w() == sample_game(i, small(3, 8)).w());
      CHECK(sample_game(i, fined).fine_successful() == 0.1);
    }
    CHECK_THROWS_AS(fines_study(10, 1, {-0.1}), ConfigError);
  }

  TEST_CASE("correlation undefined for a constant column") {
    std::vector<GameRecord> recs;
    recs.push_back(record_with(0, test::fig4a(), {EquilibriumKind::E4_11}));
    recs.push_back(record_with(1, test::fig4a(), {EquilibriumKind::E4_11, EquilibriumKind::E3_10}));
    recs.push_back(record_with(2, test::fig4a(), {EquilibriumKind::E4_11, EquilibriumKind::E2_01}));
    const auto m = correlation_matrix(recs);
    CHECK_FALSE(m[2][2].has_value());
    CHECK_FALSE(m[2][0].has_value());
    CHECK_FALSE(m[0][2].has_value());
    REQUIRE(m[0][1].has_value());
    CHECK(*m[0][1] == doctest::Approx(-0.5));
  }

  TEST_CASE("pearson against a hand computation") {
    const auto r = pearson({1, 2, 3, 4}, {2, 4, 5, 9});
    REQUIRE(r.has_value());
    // sxy = 11, sxx = 5, syy = 26
    CHECK(*r == doctest::Approx(11.0 / std::sqrt(5.0 * 26.0)));
    CHECK_FALSE(pearson({1, 1}, {1, 2}).has_value());
  }

  TEST_CASE("binning edges") {
    std::vector<GameRecord> recs;
    recs.push_back(record_with(0, GameParams({1.0, 0.1, 0.3, 0.5, 0.6, 1.0}), {EquilibriumKind::E4_11}));
    recs.push_back(record_with(1, GameParams({1.0, 0.1, 0.3, 0.5, 0.6, 0.3}), {EquilibriumKind::E4_11}));
    const auto curves = v_frequency_curves(recs);
    CHECK(curves[3][9] == 1);  // v = 1.0 falls in the closed top bin
    CHECK(curves[3][3] == 1);  // v = 0.3 is the left edge of [0.3, 0.4)
    const auto h = parameter_impact(recs, "c_d");
    CHECK(h.counts[3] == 2);
    CHECK_THROWS_AS(parameter_impact(recs, "m"), ConfigError);
  }

  TEST_CASE("welfare analytics on known games") {
    std::vector<GameRecord> recs{analyze_game(0, test::fig4a())};
    const WelfareStats w = welfare_analytics(recs);
    CHECK(w.pair_means[2] == doctest::Approx(0.59));
    CHECK(w.pair_means[3] == doctest::Approx(-0.5638));
    std::size_t total = 0;
    for (auto c : w.histogram) total += c;
    CHECK(total == 4);
    // -0.59 -> bin -6, 0.59 -> bin 5
    CHECK(w.histogram_first_bin == -6);
    CHECK(w.histogram.size() == 12);
    REQUIRE(w.binned.size() == 3);
    CHECK(w.binned[0].parameter == "v");
    CHECK(w.binned[0].counts[2] == 1);
    CHECK(w.binned[0].means[2].value() == doctest::Approx((0.0 - 0.59 + 0.59 - 0.5638) / 4));
    CHECK_FALSE(w.binned[0].means[5].has_value());
  }
}
