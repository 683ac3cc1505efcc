#include <filesystem>
#include <string>

#include "cyber_egt/error.hpp"
#include "cyber_egt/output.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace cyber_egt;
namespace fs = std::filesystem;

namespace {

Provenance prov() { return {R"({"params":{"w":0.98}})", 7}; }

PhasePortrait portrait_of(const GameParams& g) {
  IntegratorSettings s;
  s.horizon = 50;
  s.record_stride = 50;
  return build_phase_portrait(g, 11, {{0.5, 0.5}, {0.1, 0.9}}, s);
}

std::string data_rows(const std::string& csv) {
  // Drop the two provenance lines.
  auto first = csv.find('\n');
  auto second = csv.find('\n', first + 1);
  return csv.substr(second + 1);
}

}  // namespace

TEST_SUITE("output") {
  TEST_CASE("fixed formatting") {
    CHECK(format_fixed(0.0) == "0.000000");
    CHECK(format_fixed(-0.5638) == "-0.563800");
    CHECK(format_fixed(-1e-12) == "0.000000");
    CHECK(format_fixed(1.0 / 3.0) == "0.333333");
  }

  TEST_CASE("fines table names") {
    CHECK(fines_table_name(0.1) == "fig15_fines_0p1.csv");
    CHECK(fines_table_name(0.5) == "fig16_fines_0p5.csv");
    CHECK(fines_table_name(0.25) == "fines_0p25.csv");
  }

  TEST_CASE("Fig 4(a) portrait has a single filled marker at (1,1)") {
    const std::string svg = phase_svg(portrait_of(test::fig4a()), prov());
    CHECK(test::count_of(svg, "class=\"marker stable\"") == 1);
    CHECK(test::count_of(svg, "<circle") == 4);
    CHECK(svg.find("class=\"marker stable\" data-kind=\"E4\" cx=\"440.00\" cy=\"40.00\"") != std::string::npos);
    CHECK(svg.find("<metadata>") != std::string::npos);
    CHECK(svg.find("\"version\":\"1.0.0\"") != std::string::npos);
    CHECK(svg.find("\"seed\":7") != std::string::npos);
  }

  TEST_CASE("Fig 5(a) portrait shows the interior as hollow") {
    const std::string svg = phase_svg(portrait_of(test::fig5a()), prov());
    CHECK(test::count_of(svg, "<circle") == 5);
    CHECK(svg.find("class=\"marker hollow\" data-kind=\"E5\"") != std::string::npos);
    CHECK(test::count_of(svg, "class=\"marker stable\"") == 2);
    for (const char* k : {"E1", "E2", "E3", "E4"})
      CHECK(svg.find(std::string("data-kind=\"") + k + "\"") != std::string::npos);
  }

  TEST_CASE("nullclines lie on the bracket zero-sets") {
    const GameParams g = test::fig5a();
    const auto pts = nullclines(g, 21);
    REQUIRE_FALSE(pts.empty());
    for (const auto& p : pts) {
      if (p.curve == 0) CHECK(std::abs(defender_advantage(g, p.state.alpha)) < 1e-12);
      else CHECK(std::abs(attacker_advantage(g, p.state.beta)) < 1e-12);
      CHECK(p.state.in_unit_square());
    }
  }

  TEST_CASE("analyze report") {
    const std::string text = analyze_report_text(test::fig4a());
    CHECK(text.find("E4") != std::string::npos);
    CHECK(text.find("Stable") != std::string::npos);
    CHECK(text.find("-0.5638") != std::string::npos);
    const auto j = nlohmann::json::parse(analyze_report_json(test::fig5a(), prov()));
    CHECK(j["provenance"]["seed"] == 7);
    REQUIRE(j.contains("interior"));
    CHECK(j["interior"]["beta"].get<double>() == doctest::Approx(0.843882).epsilon(1e-6));
  }

  TEST_CASE("ensemble writer is byte-reproducible and carries provenance") {
    SamplerConfig c;
    c.count = 3000;
    c.master_seed = 4;
    const EnsembleResult r = run_ensemble(c);
    test::TempDir a, b;
    write_ensemble(r, a.path(), prov(), {});
    c.threads = 3;
    write_ensemble(run_ensemble(c), b.path(), prov(), {});
    for (const char* name : {"fig6_counts.csv", "fig6_correlation.csv", "fig7_ratios.csv", "fig8_vcurves.csv",
                             "fig9_costs.csv", "fig12_v_w.csv", "fig14_benefits.csv", "fig17_welfare.csv",
                             "fig18_welfare_params.csv", "summary.json"}) {
      INFO(name);
      REQUIRE(fs::exists(a / name));
      const std::string text = test::slurp(a / name);
      CHECK(text == test::slurp(b / name));
      CHECK(text.find("1.0.0") != std::string::npos);
      CHECK(text.find("0.98") != std::string::npos);
    }
    const std::string counts = test::slurp(a / "fig6_counts.csv");
    CHECK(counts.rfind("# cyber_egt 1.0.0 seed=7\n", 0) == 0);
    // Every numeric cell in the ratio table has six decimals.
    const std::string rows = data_rows(test::slurp(a / "fig7_ratios.csv"));
    CHECK(rows.find(".") != std::string::npos);
    const auto summary = nlohmann::json::parse(test::slurp(a / "summary.json"));
    CHECK(summary["provenance"]["config"]["params"]["w"] == 0.98);
    const double ratio = summary["summary"]["kind_ratios"]["E4"].get<double>();
    CHECK(ratio == static_cast<double>(r.summary.kind_ratios[3]));
  }

  TEST_CASE("format selection") {
    const EnsembleResult r = run_ensemble([] {
      SamplerConfig c;
      c.count = 100;
      return c;
    }());
    test::TempDir d;
    write_ensemble(r, d.path(), prov(), {false, true, false});
    CHECK(fs::exists(d / "summary.json"));
    CHECK_FALSE(fs::exists(d / "fig6_counts.csv"));
  }

  TEST_CASE("phase writer") {
    test::TempDir d;
    write_phase(portrait_of(test::fig4a()), d.path(), prov(), {});
    for (const char* name : {"phase_field.csv", "phase_nullclines.csv", "phase_equilibria.csv",
                             "phase_trajectories.csv", "phase.svg"})
      CHECK(fs::exists(d / name));
    const std::string eq = test::slurp(d / "phase_equilibria.csv");
    CHECK(test::count_of(eq, ",filled") == 1);
  }

  TEST_CASE("unwritable output directory") {
    test::TempDir d;
    { std::ofstream(d / "blocker") << "x"; }
    CHECK_THROWS_AS(prepare_output_dir(d / "blocker" / "sub"), OutputError);
    CHECK_NOTHROW(prepare_output_dir(d / "nested" / "ok"));
  }
}
