#include "cyber_egt/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cyber_egt/error.hpp"
#include "json.hpp"

namespace cyber_egt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json provenance_json(const Provenance& prov) {
  json config = json::parse(prov.config_json, nullptr, false);
  if (config.is_discarded()) config = prov.config_json;
  return {{"version", kVersion}, {"seed", prov.seed}, {"config", config}};
}

std::string csv_preamble(const Provenance& prov) {
  json config = json::parse(prov.config_json, nullptr, false);
  std::string compact = config.is_discarded() ? prov.config_json : config.dump();
  std::ostringstream os;
  os << "# cyber_egt " << kVersion << " seed=" << prov.seed << "\n";
  os << "# config=" << compact << "\n";
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

class Csv {
public:
  Csv(const Provenance& prov, std::initializer_list<std::string_view> header) : text_(csv_preamble(prov)) {
    bool first = true;
    for (auto h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  Csv& cell(std::string_view s) {
    sep();
    text_ += s;
    return *this;
  }
  Csv& cell(double x) { return cell(format_fixed(x)); }
  Csv& cell(std::size_t x) { return cell(std::string_view(std::to_string(x))); }
  Csv& cell(int x) { return cell(std::string_view(std::to_string(x))); }
  Csv& cell(const std::optional<double>& x) { return x ? cell(*x) : cell(std::string_view("")); }
  void end_row() {
    text_ += '\n';
    row_open_ = false;
  }

  const std::string& str() const { return text_; }

private:
  void sep() {
    if (row_open_) text_ += ',';
    row_open_ = true;
  }

  std::string text_;
  bool row_open_ = false;
};

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json report_json(const EquilibriumReport& r) {
  return {{"kind", to_string(r.kind)},
          {"beta", r.location.beta},
          {"alpha", r.location.alpha},
          {"jacobian", {r.jacobian.j11, r.jacobian.j12, r.jacobian.j21, r.jacobian.j22}},
          {"lambda1", complex_json(r.eigen.lambda1)},
          {"lambda2", complex_json(r.eigen.lambda2)},
          {"classification", to_string(r.classification)}};
}

json params_json(const GameParams& g) {
  const auto& x = g.values();
  return {{"w", x.w}, {"c_a", x.c_a}, {"c_d", x.c_d}, {"b_a", x.b_a}, {"b_d", x.b_d},
          {"v", x.v}, {"m", x.m},     {"n", x.n},     {"p", x.p},     {"s", x.s}};
}

std::vector<std::string> stable_names(KindSet set) {
  std::vector<std::string> out;
  for (EquilibriumKind k : kAllKinds)
    if (set.contains(k)) out.emplace_back(to_string(k));
  return out;
}

std::string bin_label(int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", k * kBinWidth);
  return buf;
}

json summary_json(const EnsembleSummary& s) {
  json j;
  j["count"] = s.count;
  j["stable_count_distribution"] = {{"0", s.stable_count_distribution[0]},
                                    {"1", s.stable_count_distribution[1]},
                                    {"2", s.stable_count_distribution[2]},
                                    {"3+", s.stable_count_distribution[3]}};
  const double n = static_cast<double>(s.count);
  j["one_stable_fraction"] = s.stable_count_distribution[1] / n;
  j["two_stable_fraction"] = s.stable_count_distribution[2] / n;
  json counts, ratios;
  for (EquilibriumKind k : kAllKinds) {
    counts[std::string(to_string(k))] = s.kind_counts[static_cast<std::size_t>(k)];
    ratios[std::string(to_string(k))] = s.kind_ratios[static_cast<std::size_t>(k)];
  }
  j["kind_counts"] = counts;
  j["kind_ratios"] = ratios;
  j["ratio_normalization"] = "kind_count / number of (game, stable kind) pairs";
  j["e4_ratio"] = s.kind_ratios[static_cast<std::size_t>(EquilibriumKind::E4_11)];
  j["interior_present"] = s.interior_present;
  j["non_hyperbolic_games"] = s.non_hyperbolic;
  json corr = json::array();
  for (const auto& row : s.correlation) {
    json r = json::array();
    for (const auto& c : row) r.push_back(c ? json(*c) : json(nullptr));
    corr.push_back(r);
  }
  j["correlation"] = {{"columns", kCorrelationColumns}, {"matrix", corr}};
  json curves;
  for (EquilibriumKind k : {EquilibriumKind::E2_01, EquilibriumKind::E3_10, EquilibriumKind::E4_11})
    curves[std::string(to_string(k))] = s.v_curves[static_cast<std::size_t>(k)];
  j["v_curves"] = curves;
  json impact;
  for (const auto& h : s.parameter_impact) impact[h.parameter] = h.counts;
  j["parameter_impact_e4"] = impact;
  json welfare;
  for (StrategyPair p : kAllStrategyPairs) welfare["pair_means"][std::string(to_string(p))] = s.welfare.pair_means[p.index()];
  welfare["histogram_first_bin"] = s.welfare.histogram_first_bin;
  welfare["histogram_bin_width"] = kBinWidth;
  welfare["histogram"] = s.welfare.histogram;
  for (const auto& bm : s.welfare.binned) {
    json means = json::array();
    for (const auto& m : bm.means) means.push_back(m ? json(*m) : json(nullptr));
    welfare["binned_mean"][bm.parameter] = means;
  }
  j["welfare"] = welfare;
  j["bin_width"] = kBinWidth;
  return j;
}

const ParameterHistogram& impact_for(const EnsembleSummary& s, std::string_view name) {
  for (const auto& h : s.parameter_impact)
    if (h.parameter == name) return h;
  throw ConfigError("summary lacks parameter " + std::string(name));
}

std::string impact_table(const EnsembleSummary& s, const Provenance& prov, std::string_view a, std::string_view b) {
  const auto& ha = impact_for(s, a);
  const auto& hb = impact_for(s, b);
  Csv csv(prov, {"parameter", "bin_lo", "bin_hi", "e4_stable_games"});
  for (const auto* h : {&ha, &hb}) {
    for (std::size_t k = 0; k < h->counts.size(); ++k) {
      csv.cell(h->parameter).cell(k * kBinWidth).cell((k + 1) * kBinWidth).cell(h->counts[k]);
      csv.end_row();
    }
  }
  return csv.str();
}

std::string kind_table(const EnsembleSummary& s, const Provenance& prov) {
  Csv csv(prov, {"kind", "stable_games", "ratio"});
  for (EquilibriumKind k : kAllKinds) {
    const auto i = static_cast<std::size_t>(k);
    csv.cell(to_string(k)).cell(s.kind_counts[i]).cell(s.kind_ratios[i]);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace

std::string format_fixed(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw OutputError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

std::string analyze_report_text(const GameParams& params) {
  std::ostringstream os;
  os << "equilibria:\n";
  char buf[256];
  const auto reports = analyze_equilibria(params);
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %s (%.6f, %.6f)  lambda1=%.6f%+.6fi  lambda2=%.6f%+.6fi  %s\n",
                  std::string(to_string(r.kind)).c_str(), r.location.beta, r.location.alpha, r.eigen.lambda1.real(),
                  r.eigen.lambda1.imag(), r.eigen.lambda2.real(), r.eigen.lambda2.imag(),
                  std::string(to_string(r.classification)).c_str());
    os << buf;
  }
  auto interior = interior_equilibrium(params);
  if (interior) {
    std::snprintf(buf, sizeof buf, "interior: (%.6f, %.6f)\n", interior->beta, interior->alpha);
    os << buf;
  } else {
    os << "interior: none\n";
  }
  os << "stable:";
  const auto names = stable_names(stable_set(reports));
  if (names.empty()) os << " none";
  for (const auto& n : names) os << ' ' << n;
  os << "\nwelfare:\n";
  for (StrategyPair p : kAllStrategyPairs) {
    std::snprintf(buf, sizeof buf, "  %-20s %.6f (%.2f)\n", std::string(to_string(p)).c_str(),
                  social_welfare(params, p), social_welfare(params, p));
    os << buf;
  }
  return os.str();
}

std::string analyze_report_json(const GameParams& params, const Provenance& prov) {
  json j;
  j["provenance"] = provenance_json(prov);
  j["params"] = params_json(params);
  json reports = json::array();
  const auto all = analyze_equilibria(params);
  for (const auto& r : all) reports.push_back(report_json(r));
  j["equilibria"] = reports;
  j["stable"] = stable_names(stable_set(all));
  auto interior = interior_equilibrium(params);
  j["interior"] = interior ? json{{"beta", interior->beta}, {"alpha", interior->alpha}} : json(nullptr);
  json welfare;
  for (StrategyPair p : kAllStrategyPairs) welfare[std::string(to_string(p))] = social_welfare(params, p);
  j["welfare"] = welfare;
  const PayoffMatrix matrix = build_payoff_matrix(params);
  json payoffs;
  for (StrategyPair p : kAllStrategyPairs)
    payoffs[std::string(to_string(p))] = {matrix.at(p).defender, matrix.at(p).attacker};
  j["payoffs"] = payoffs;
  return j.dump(2) + "\n";
}

void write_analyze(const GameParams& params, const fs::path& dir, const Provenance& prov, const OutputFormats& formats) {
  if (formats.json) write_file(dir / "analyze.json", analyze_report_json(params, prov));
  if (formats.csv) {
    Csv eq(prov, {"kind", "beta", "alpha", "j11", "j12", "j21", "j22", "lambda1_re", "lambda1_im", "lambda2_re",
                  "lambda2_im", "classification"});
    for (const auto& r : analyze_equilibria(params)) {
      eq.cell(to_string(r.kind)).cell(r.location.beta).cell(r.location.alpha);
      eq.cell(r.jacobian.j11).cell(r.jacobian.j12).cell(r.jacobian.j21).cell(r.jacobian.j22);
      eq.cell(r.eigen.lambda1.real()).cell(r.eigen.lambda1.imag()).cell(r.eigen.lambda2.real()).cell(r.eigen.lambda2.imag());
      eq.cell(to_string(r.classification));
      eq.end_row();
    }
    write_file(dir / "analyze_equilibria.csv", eq.str());

    Csv sw(prov, {"defender", "attacker", "defender_payoff", "attacker_payoff", "welfare"});
    const PayoffMatrix matrix = build_payoff_matrix(params);
    for (StrategyPair p : kAllStrategyPairs) {
      sw.cell(p.defender == DefenderMove::Defence ? "Defence" : "NoDefence");
      sw.cell(p.attacker == AttackerMove::Attack ? "Attack" : "NoAttack");
      sw.cell(matrix.at(p).defender).cell(matrix.at(p).attacker).cell(social_welfare(params, p));
      sw.end_row();
    }
    write_file(dir / "analyze_welfare.csv", sw.str());
  }
}

std::string ensemble_summary_json(const EnsembleResult& result, const Provenance& prov) {
  json j;
  j["provenance"] = provenance_json(prov);
  j["sampler"] = {{"count", result.config.count},
                  {"master_seed", result.config.master_seed},
                  {"b_a_upper", result.config.b_a_upper},
                  {"f_u", result.config.scenario.f_u},
                  {"f_s", result.config.scenario.f_s}};
  j["summary"] = summary_json(result.summary);
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest(result.records)));
  j["record_digest"] = hex;
  return j.dump(2) + "\n";
}

void write_ensemble(const EnsembleResult& result, const fs::path& dir, const Provenance& prov,
                    const OutputFormats& formats) {
  const EnsembleSummary& s = result.summary;
  if (formats.json) write_file(dir / "summary.json", ensemble_summary_json(result, prov));
  if (!formats.csv) return;

  {
    Csv csv(prov, {"stable_kinds", "games", "fraction"});
    const char* labels[] = {"0", "1", "2", "3+"};
    for (std::size_t i = 0; i < 4; ++i) {
      csv.cell(labels[i]).cell(s.stable_count_distribution[i]);
      csv.cell(static_cast<double>(s.stable_count_distribution[i]) / static_cast<double>(s.count));
      csv.end_row();
    }
    write_file(dir / "fig6_counts.csv", csv.str());
  }
  {
    Csv csv(prov, {"row", "E3", "E2", "E4", "total"});
    for (std::size_t i = 0; i < 4; ++i) {
      csv.cell(kCorrelationColumns[i]);
      for (std::size_t j = 0; j < 4; ++j) csv.cell(s.correlation[i][j]);
      csv.end_row();
    }
    write_file(dir / "fig6_correlation.csv", csv.str());
  }
  write_file(dir / "fig7_ratios.csv", kind_table(s, prov));
  {
    Csv csv(prov, {"v_lo", "v_hi", "E3", "E2", "E4"});
    for (std::size_t b = 0; b < 10; ++b) {
      csv.cell(b * kBinWidth).cell((b + 1) * kBinWidth);
      for (EquilibriumKind k : {EquilibriumKind::E3_10, EquilibriumKind::E2_01, EquilibriumKind::E4_11})
        csv.cell(s.v_curves[static_cast<std::size_t>(k)][b]);
      csv.end_row();
    }
    write_file(dir / "fig8_vcurves.csv", csv.str());
  }
  write_file(dir / "fig9_costs.csv", impact_table(s, prov, "c_d", "c_a"));
  write_file(dir / "fig12_v_w.csv", impact_table(s, prov, "v", "w"));
  write_file(dir / "fig14_benefits.csv", impact_table(s, prov, "b_a", "b_d"));
  {
    Csv csv(prov, {"section", "label", "bin_lo", "bin_hi", "value"});
    for (StrategyPair p : kAllStrategyPairs) {
      csv.cell("pair_mean").cell(to_string(p)).cell("").cell("").cell(s.welfare.pair_means[p.index()]);
      csv.end_row();
    }
    for (std::size_t i = 0; i < s.welfare.histogram.size(); ++i) {
      const int k = s.welfare.histogram_first_bin + static_cast<int>(i);
      csv.cell("histogram").cell(bin_label(k)).cell(k * kBinWidth).cell((k + 1) * kBinWidth).cell(s.welfare.histogram[i]);
      csv.end_row();
    }
    write_file(dir / "fig17_welfare.csv", csv.str());
  }
  {
    Csv csv(prov, {"parameter", "bin_lo", "bin_hi", "games", "mean_welfare"});
    for (const auto& bm : s.welfare.binned) {
      for (std::size_t b = 0; b < bm.means.size(); ++b) {
        csv.cell(bm.parameter).cell(b * kBinWidth).cell((b + 1) * kBinWidth).cell(bm.counts[b]).cell(bm.means[b]);
        csv.end_row();
      }
    }
    write_file(dir / "fig18_welfare_params.csv", csv.str());
  }
}

std::string fines_table_name(double level) {
  if (level == 0.1) return "fig15_fines_0p1.csv";
  if (level == 0.5) return "fig16_fines_0p5.csv";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", level);
  std::string s = buf;
  for (char& c : s)
    if (c == '.') c = 'p';
  return "fines_" + s + ".csv";
}

void write_fines(const std::vector<FineLevelSummary>& levels, const fs::path& dir, const Provenance& prov,
                 const OutputFormats& formats) {
  if (formats.csv)
    for (const auto& l : levels) write_file(dir / fines_table_name(l.level), kind_table(l.summary, prov));
  if (formats.json) {
    json j;
    j["provenance"] = provenance_json(prov);
    json arr = json::array();
    for (const auto& l : levels) {
      char hex[32];
      std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(l.digest));
      arr.push_back({{"level", l.level}, {"record_digest", hex}, {"summary", summary_json(l.summary)}});
    }
    j["levels"] = arr;
    write_file(dir / "fines_summary.json", j.dump(2) + "\n");
  }
}

std::vector<NullclinePoint> nullclines(const GameParams& params, int resolution) {
  if (resolution < 2) throw ConfigError("nullcline resolution must be >= 2");
  std::vector<NullclinePoint> out;
  // Both brackets are affine in a single coordinate, so each zero-set is a straight line.
  const double d0 = defender_advantage(params, 0.0);
  const double d_slope = defender_advantage(params, 1.0) - d0;
  if (d_slope != 0.0) {
    const double alpha = -d0 / d_slope;
    if (alpha >= 0.0 && alpha <= 1.0)
      for (int i = 0; i < resolution; ++i) out.push_back({0, {i / double(resolution - 1), alpha}});
  }
  const double a0 = attacker_advantage(params, 0.0);
  const double a_slope = attacker_advantage(params, 1.0) - a0;
  if (a_slope != 0.0) {
    const double beta = -a0 / a_slope;
    if (beta >= 0.0 && beta <= 1.0)
      for (int i = 0; i < resolution; ++i) out.push_back({1, {beta, i / double(resolution - 1)}});
  }
  return out;
}

PhasePortrait build_phase_portrait(const GameParams& params, int resolution, const std::vector<PopulationState>& starts,
                                   const IntegratorSettings& settings) {
  PhasePortrait p;
  p.field = field_grid(params, resolution);
  p.nullclines = nullclines(params, resolution);
  p.equilibria = analyze_equilibria(params);
  for (const auto& s : starts) p.trajectories.push_back(integrate(params, s, settings));
  return p;
}

namespace {

constexpr double kViewport = 480.0;
constexpr double kMargin = 40.0;
constexpr double kSide = kViewport - 2 * kMargin;

double sx(double beta) { return kMargin + kSide * beta; }
double sy(double alpha) { return kViewport - kMargin - kSide * alpha; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string phase_svg(const PhasePortrait& portrait, const Provenance& prov) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  json meta = provenance_json(prov);
  std::string meta_text = meta.dump();
  std::string escaped;
  for (char c : meta_text) {
    if (c == '&') escaped += "&amp;";
    else if (c == '<') escaped += "&lt;";
    else if (c == '>') escaped += "&gt;";
    else escaped += c;
  }
  os << "<metadata>" << escaped << "</metadata>\n";
  os << "<rect x=\"40\" y=\"40\" width=\"400\" height=\"400\" fill=\"white\" stroke=\"black\"/>\n";
  os << "<text x=\"240\" y=\"472\" text-anchor=\"middle\" font-size=\"14\">beta (defence)</text>\n";
  os << "<text x=\"14\" y=\"240\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 240)\">alpha (attack)</text>\n";

  double max_mag = 0.0;
  for (const auto& f : portrait.field)
    max_mag = std::max(max_mag, std::hypot(f.value.d_beta, f.value.d_alpha));
  os << "<g class=\"field\" stroke=\"#888888\" stroke-width=\"1\">\n";
  for (const auto& f : portrait.field) {
    const double mag = std::hypot(f.value.d_beta, f.value.d_alpha);
    if (mag <= 0.0 || max_mag <= 0.0) continue;
    const double len = 12.0 * std::sqrt(mag / max_mag);
    const double dx = f.value.d_beta / mag * len;
    const double dy = -f.value.d_alpha / mag * len;
    os << "<line x1=\"" << num(sx(f.state.beta)) << "\" y1=\"" << num(sy(f.state.alpha)) << "\" x2=\""
       << num(sx(f.state.beta) + dx) << "\" y2=\"" << num(sy(f.state.alpha) + dy) << "\"/>\n";
  }
  os << "</g>\n";

  for (int curve = 0; curve < 2; ++curve) {
    std::string pts;
    for (const auto& p : portrait.nullclines) {
      if (p.curve != curve) continue;
      pts += num(sx(p.state.beta)) + "," + num(sy(p.state.alpha)) + " ";
    }
    if (pts.empty()) continue;
    pts.pop_back();
    os << "<polyline class=\"nullcline\" data-curve=\"" << (curve == 0 ? "defender" : "attacker")
       << "\" fill=\"none\" stroke=\"" << (curve == 0 ? "#1f77b4" : "#d62728")
       << "\" stroke-dasharray=\"6 4\" points=\"" << pts << "\"/>\n";
  }

  for (const auto& t : portrait.trajectories) {
    std::string pts;
    for (const auto& s : t.samples) pts += num(sx(s.state.beta)) + "," + num(sy(s.state.alpha)) + " ";
    if (!pts.empty()) pts.pop_back();
    os << "<polyline class=\"trajectory\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"" << pts
       << "\"/>\n";
  }

  for (const auto& e : portrait.equilibria) {
    const bool stable = e.classification == Stability::Stable;
    os << "<circle class=\"marker " << (stable ? "stable" : "hollow") << "\" data-kind=\"" << to_string(e.kind)
       << "\" cx=\"" << num(sx(e.location.beta)) << "\" cy=\"" << num(sy(e.location.alpha)) << "\" r=\"7\" fill=\""
       << (stable ? "black" : "white") << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_phase(const PhasePortrait& portrait, const fs::path& dir, const Provenance& prov,
                 const OutputFormats& formats) {
  if (formats.csv) {
    Csv field(prov, {"beta", "alpha", "d_beta", "d_alpha"});
    for (const auto& f : portrait.field) {
      field.cell(f.state.beta).cell(f.state.alpha).cell(f.value.d_beta).cell(f.value.d_alpha);
      field.end_row();
    }
    write_file(dir / "phase_field.csv", field.str());

    Csv nc(prov, {"curve", "beta", "alpha"});
    for (const auto& p : portrait.nullclines) {
      nc.cell(p.curve == 0 ? "defender" : "attacker").cell(p.state.beta).cell(p.state.alpha);
      nc.end_row();
    }
    write_file(dir / "phase_nullclines.csv", nc.str());

    Csv eq(prov, {"kind", "beta", "alpha", "classification", "marker"});
    for (const auto& e : portrait.equilibria) {
      eq.cell(to_string(e.kind)).cell(e.location.beta).cell(e.location.alpha).cell(to_string(e.classification));
      eq.cell(e.classification == Stability::Stable ? "filled" : "hollow");
      eq.end_row();
    }
    write_file(dir / "phase_equilibria.csv", eq.str());

    Csv tr(prov, {"trajectory", "t", "beta", "alpha"});
    for (std::size_t i = 0; i < portrait.trajectories.size(); ++i) {
      for (const auto& s : portrait.trajectories[i].samples) {
        tr.cell(i).cell(s.t).cell(s.state.beta).cell(s.state.alpha);
        tr.end_row();
      }
    }
    write_file(dir / "phase_trajectories.csv", tr.str());
  }
  if (formats.svg) write_file(dir / "phase.svg", phase_svg(portrait, prov));
}

void write_abm(const AbmResult& result, const fs::path& dir, const Provenance& prov, const OutputFormats& formats) {
  if (formats.csv) {
    Csv means(prov, {"mean_beta", "mean_alpha"});
    means.cell(result.mean_beta).cell(result.mean_alpha);
    means.end_row();
    write_file(dir / "abm_means.csv", means.str());

    Csv tr(prov, {"step", "beta", "alpha"});
    for (const auto& s : result.trajectory_thinned) {
      tr.cell(s.step).cell(s.beta).cell(s.alpha);
      tr.end_row();
    }
    write_file(dir / "abm_trajectory.csv", tr.str());
  }
  if (formats.json) {
    json j;
    j["provenance"] = provenance_json(prov);
    j["mean_beta"] = result.mean_beta;
    j["mean_alpha"] = result.mean_alpha;
    j["samples"] = result.trajectory_thinned.size();
    write_file(dir / "abm.json", j.dump(2) + "\n");
  }
}

}  // namespace cyber_egt
