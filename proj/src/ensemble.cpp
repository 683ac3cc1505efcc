#include "cyber_egt/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <thread>

#include "cyber_egt/error.hpp"
#include "cyber_egt/rng.hpp"

namespace cyber_egt {

void SamplerConfig::validate() const {
  if (count < 1) throw ConfigError("sampler count must be >= 1");
  if (!std::isfinite(b_a_upper) || b_a_upper < 1.0) throw ConfigError("sampler b_a_upper must be >= 1");
  if (threads < 1) throw ConfigError("sampler threads must be >= 1");
  scenario.validate();
}

GameParams sample_base_game(std::uint64_t master_seed, std::size_t index, double b_a_upper) {
  if (!(b_a_upper > 0.0)) throw ConfigError("sampler b_a_upper must be > 0");
  Stream rng(substream_seed(master_seed, index));
  ParamValues x;
  x.w = rng.left_open(0.0, 1.0);
  x.c_a = rng.open(0.0, x.w);
  x.c_d = rng.open(0.0, x.w);
  x.b_a = rng.left_open(x.c_a, b_a_upper);
  x.b_d = rng.left_open(x.c_d, x.w);
  x.v = rng.left_open(0.0, 1.0);
  return GameParams(x);
}

GameParams sample_game(std::size_t index, const SamplerConfig& config) {
  return sample_base_game(config.master_seed, index, config.b_a_upper).with_fines(config.scenario);
}

GameRecord analyze_game(std::size_t index, const GameParams& params) {
  const auto reports = analyze_equilibria(params);
  GameRecord r{index, params, stable_set(reports), welfare_table(params), false, true};
  for (const auto& rep : reports) {
    if (rep.kind == EquilibriumKind::E5_interior) r.interior_present = true;
    if (rep.classification == Stability::NonHyperbolic) r.hyperbolic = false;
  }
  return r;
}

namespace {

std::vector<GameRecord> analyze_all(const SamplerConfig& config) {
  const std::size_t n = config.count;
  std::vector<std::optional<GameRecord>> slots(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(config.threads, n));
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::size_t> failed_at(workers, n);

  auto work = [&](unsigned w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        slots[i].emplace(analyze_game(i, sample_game(i, config)));
      } catch (...) {
        failures[w] = std::current_exception();
        failed_at[w] = i;
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  for (unsigned w = 0; w < workers; ++w) {
    if (!failures[w]) continue;
    try {
      std::rethrow_exception(failures[w]);
    } catch (const std::exception& e) {
      throw GameAnalysisFailure(failed_at[w], e.what());
    }
  }

  std::vector<GameRecord> records;
  records.reserve(n);
  for (auto& s : slots) records.push_back(std::move(*s));
  return records;
}

std::size_t bin_of(double x, std::size_t nbins) {
  const double k = std::floor(x / kBinWidth + 1e-9);
  if (k < 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), nbins - 1);
}

}  // namespace

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix<std::optional<double>> correlation_matrix(const std::vector<GameRecord>& records) {
  std::array<std::vector<double>, 4> cols;
  for (auto& c : cols) c.reserve(records.size());
  for (const auto& r : records) {
    cols[0].push_back(r.stable_kinds.contains(EquilibriumKind::E3_10) ? 1.0 : 0.0);
    cols[1].push_back(r.stable_kinds.contains(EquilibriumKind::E2_01) ? 1.0 : 0.0);
    cols[2].push_back(r.stable_kinds.contains(EquilibriumKind::E4_11) ? 1.0 : 0.0);
    cols[3].push_back(static_cast<double>(r.stable_kinds.size()));
  }
  CorrelationMatrix<std::optional<double>> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      // The diagonal is 1 only where the column has variance.
      auto c = pearson(cols[i], cols[j]);
      if (i == j && c) c = 1.0;
      out[i][j] = out[j][i] = c;
    }
  }
  return out;
}

std::array<std::array<std::size_t, 10>, 5> v_frequency_curves(const std::vector<GameRecord>& records) {
  std::array<std::array<std::size_t, 10>, 5> out{};
  for (const auto& r : records) {
    const std::size_t bin = bin_of(r.params.v(), 10);
    for (EquilibriumKind k : kAllKinds)
      if (r.stable_kinds.contains(k)) ++out[static_cast<std::size_t>(k)][bin];
  }
  return out;
}

double parameter_value(const GameParams& g, std::string_view name) {
  if (name == "c_d") return g.c_d();
  if (name == "c_a") return g.c_a();
  if (name == "v") return g.v();
  if (name == "w") return g.w();
  if (name == "b_a") return g.b_a();
  if (name == "b_d") return g.b_d();
  throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

ParameterHistogram parameter_impact(const std::vector<GameRecord>& records, std::string_view parameter, double upper) {
  if (std::find(kImpactParameters.begin(), kImpactParameters.end(), parameter) == kImpactParameters.end())
    throw ConfigError("unknown parameter '" + std::string(parameter) + "'");
  const auto nbins = static_cast<std::size_t>(std::max(1.0, std::ceil(upper / kBinWidth - 1e-9)));
  ParameterHistogram h{std::string(parameter), std::vector<std::size_t>(nbins, 0)};
  for (const auto& r : records)
    if (r.stable_kinds.contains(EquilibriumKind::E4_11)) ++h.counts[bin_of(parameter_value(r.params, parameter), nbins)];
  return h;
}

WelfareStats welfare_analytics(const std::vector<GameRecord>& records) {
  WelfareStats out;
  if (records.empty()) return out;

  std::array<double, 4> sums{};
  int lo = 0, hi = 0;
  bool first = true;
  auto welfare_bin = [](double x) { return static_cast<int>(std::floor(x / kBinWidth + 1e-9)); };
  for (const auto& r : records) {
    for (std::size_t p = 0; p < 4; ++p) {
      sums[p] += r.welfare[p];
      const int b = welfare_bin(r.welfare[p]);
      if (first) {
        lo = hi = b;
        first = false;
      }
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
  }
  for (std::size_t p = 0; p < 4; ++p) out.pair_means[p] = sums[p] / static_cast<double>(records.size());

  out.histogram_first_bin = lo;
  out.histogram.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& r : records)
    for (double x : r.welfare) ++out.histogram[static_cast<std::size_t>(welfare_bin(x) - lo)];

  // Per-game welfare for the binned trends is the mean over the four strategy pairs.
  for (std::string_view name : {"v", "c_a", "c_d"}) {
    BinnedMean bm{std::string(name), std::vector<std::size_t>(10, 0), std::vector<std::optional<double>>(10)};
    std::vector<double> acc(10, 0.0);
    for (const auto& r : records) {
      const std::size_t b = bin_of(parameter_value(r.params, name), 10);
      ++bm.counts[b];
      acc[b] += 0.25 * (r.welfare[0] + r.welfare[1] + r.welfare[2] + r.welfare[3]);
    }
    for (std::size_t b = 0; b < 10; ++b)
      if (bm.counts[b] > 0) bm.means[b] = acc[b] / static_cast<double>(bm.counts[b]);
    out.binned.push_back(std::move(bm));
  }
  return out;
}

EnsembleSummary summarize(const std::vector<GameRecord>& records, double b_a_upper) {
  EnsembleSummary s;
  s.count = records.size();
  for (const auto& r : records) {
    const int k = r.stable_kinds.size();
    ++s.stable_count_distribution[static_cast<std::size_t>(std::min(k, 3))];
    for (EquilibriumKind kind : kAllKinds)
      if (r.stable_kinds.contains(kind)) ++s.kind_counts[static_cast<std::size_t>(kind)];
    s.stable_pair_total += static_cast<std::size_t>(k);
    if (r.interior_present) ++s.interior_present;
    if (!r.hyperbolic) ++s.non_hyperbolic;
  }
  for (std::size_t i = 0; i < 5; ++i)
    s.kind_ratios[i] = s.stable_pair_total ? static_cast<double>(s.kind_counts[i]) / static_cast<double>(s.stable_pair_total) : 0.0;
  s.correlation = correlation_matrix(records);
  s.v_curves = v_frequency_curves(records);
  for (std::string_view name : kImpactParameters)
    s.parameter_impact.push_back(parameter_impact(records, name, name == "b_a" ? b_a_upper : 1.0));
  s.welfare = welfare_analytics(records);
  return s;
}

EnsembleResult run_ensemble(const SamplerConfig& config) {
  config.validate();
  EnsembleResult out;
  out.config = config;
  out.records = analyze_all(config);
  out.summary = summarize(out.records, config.b_a_upper);
  return out;
}

std::vector<FineLevelSummary> fines_study(std::size_t count, std::uint64_t master_seed, const std::vector<double>& levels,
                                          double b_a_upper, unsigned threads) {
  std::vector<FineLevelSummary> out;
  for (double level : levels) {
    if (!std::isfinite(level) || level < 0.0) throw ConfigError("fine levels must be >= 0");
    SamplerConfig cfg;
    cfg.count = count;
    cfg.master_seed = master_seed;
    cfg.scenario = {level, level};
    cfg.b_a_upper = b_a_upper;
    cfg.threads = threads;
    EnsembleResult r = run_ensemble(cfg);
    out.push_back({level, std::move(r.summary), digest(r.records)});
  }
  return out;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ull;

  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ull;
    }
  }
  void u64(std::uint64_t x) { bytes(&x, sizeof x); }
  void f64(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof b);
    u64(b);
  }
};

}  // namespace

std::uint64_t digest(const std::vector<GameRecord>& records) {
  Fnv1a f;
  for (const auto& r : records) {
    f.u64(r.index);
    const auto& x = r.params.values();
    for (double q : {x.w, x.c_a, x.c_d, x.b_a, x.b_d, x.v, x.m, x.n, x.p, x.s}) f.f64(q);
    f.u64(r.stable_kinds.bits());
    for (double q : r.welfare) f.f64(q);
    f.u64(r.interior_present ? 1 : 0);
    f.u64(r.hyperbolic ? 1 : 0);
  }
  return f.h;
}

}  // namespace cyber_egt
