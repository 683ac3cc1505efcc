#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyber_egt/equilibria.hpp"
#include "cyber_egt/game.hpp"

namespace cyber_egt {

inline constexpr double kDefaultBaUpper = 1.4;
inline constexpr double kBinWidth = 0.1;

struct SamplerConfig {
  std::size_t count = 100000;
  std::uint64_t master_seed = 1;
  FineScenario scenario;
  // b_a ~ U(c_a, b_a_upper]; must be >= 1 so the range is never empty.
  double b_a_upper = kDefaultBaUpper;
  // Worker threads; results do not depend on it.
  unsigned threads = 1;

  void validate() const;
};

struct GameRecord {
  std::size_t index = 0;
  GameParams params;
  KindSet stable_kinds;
  std::array<double, 4> welfare{};
  bool interior_present = false;
  bool hyperbolic = true;
};

template <class T>
using CorrelationMatrix = std::array<std::array<T, 4>, 4>;

struct ParameterHistogram {
  std::string parameter;
  std::vector<std::size_t> counts;  // bin k covers [k*0.1, (k+1)*0.1); the top edge falls in the last bin
};

struct BinnedMean {
  std::string parameter;
  std::vector<std::size_t> counts;
  std::vector<std::optional<double>> means;
};

struct WelfareStats {
  std::array<double, 4> pair_means{};  // indexed by StrategyPair::index()
  int histogram_first_bin = 0;          // bin k covers [k*0.1, (k+1)*0.1)
  std::vector<std::size_t> histogram;
  std::vector<BinnedMean> binned;       // v, c_a, c_d
};

struct EnsembleSummary {
  std::size_t count = 0;
  std::array<std::size_t, 4> stable_count_distribution{};  // 0, 1, 2, 3+
  std::array<std::size_t, 5> kind_counts{};                // indexed by EquilibriumKind
  std::size_t stable_pair_total = 0;
  std::array<double, 5> kind_ratios{};
  std::size_t interior_present = 0;
  std::size_t non_hyperbolic = 0;
  // Columns: E3 stable, E2 stable, E4 stable, total stable count. Absent = undefined.
  CorrelationMatrix<std::optional<double>> correlation{};
  std::array<std::array<std::size_t, 10>, 5> v_curves{};
  std::vector<ParameterHistogram> parameter_impact;  // c_d, c_a, v, w, b_a, b_d
  WelfareStats welfare;
};

struct EnsembleResult {
  SamplerConfig config;
  std::vector<GameRecord> records;
  EnsembleSummary summary;
};

inline constexpr std::array<std::string_view, 4> kCorrelationColumns{"E3", "E2", "E4", "total"};
inline constexpr std::array<std::string_view, 6> kImpactParameters{"c_d", "c_a", "v", "w", "b_a", "b_d"};

// Zero-fine draw for game `index`; fines are applied afterwards so every level sees the
// same base parameters.
GameParams sample_base_game(std::uint64_t master_seed, std::size_t index, double b_a_upper);

GameParams sample_game(std::size_t index, const SamplerConfig& config);

GameRecord analyze_game(std::size_t index, const GameParams& params);

EnsembleResult run_ensemble(const SamplerConfig& config);

EnsembleSummary summarize(const std::vector<GameRecord>& records, double b_a_upper = kDefaultBaUpper);

CorrelationMatrix<std::optional<double>> correlation_matrix(const std::vector<GameRecord>& records);

std::array<std::array<std::size_t, 10>, 5> v_frequency_curves(const std::vector<GameRecord>& records);

// Throws ConfigError for a name outside kImpactParameters.
ParameterHistogram parameter_impact(const std::vector<GameRecord>& records, std::string_view parameter,
                                    double upper = 1.0);

WelfareStats welfare_analytics(const std::vector<GameRecord>& records);

struct FineLevelSummary {
  double level = 0.0;
  EnsembleSummary summary;
  std::uint64_t digest = 0;
};

std::vector<FineLevelSummary> fines_study(std::size_t count, std::uint64_t master_seed,
                                          const std::vector<double>& levels, double b_a_upper = kDefaultBaUpper,
                                          unsigned threads = 1);

// FNV-1a over every record field.
std::uint64_t digest(const std::vector<GameRecord>& records);

double parameter_value(const GameParams& params, std::string_view name);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cyber_egt
