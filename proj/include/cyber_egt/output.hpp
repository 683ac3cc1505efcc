#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cyber_egt/abm.hpp"
#include "cyber_egt/dynamics.hpp"
#include "cyber_egt/ensemble.hpp"
#include "cyber_egt/equilibria.hpp"
#include "cyber_egt/game.hpp"

namespace cyber_egt {

inline constexpr const char* kVersion = "1.0.0";

// Resolved configuration, echoed into every artifact.
struct Provenance {
  std::string config_json = "{}";
  std::uint64_t seed = 0;
};

struct OutputFormats {
  bool csv = true;
  bool json = true;
  bool svg = true;
};

// Creates `dir` and checks it is writable; throws OutputError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);

// Fixed six-decimal rendering used in every tabular file.
std::string format_fixed(double x);

std::string analyze_report_text(const GameParams& params);
std::string analyze_report_json(const GameParams& params, const Provenance& prov);
void write_analyze(const GameParams& params, const std::filesystem::path& dir, const Provenance& prov,
                   const OutputFormats& formats);

std::string ensemble_summary_json(const EnsembleResult& result, const Provenance& prov);
void write_ensemble(const EnsembleResult& result, const std::filesystem::path& dir, const Provenance& prov,
                    const OutputFormats& formats);

// fig15_fines_0p1.csv / fig16_fines_0p5.csv for those levels, fines_<level>.csv otherwise.
std::string fines_table_name(double level);
void write_fines(const std::vector<FineLevelSummary>& levels, const std::filesystem::path& dir, const Provenance& prov,
                 const OutputFormats& formats);

struct NullclinePoint {
  int curve = 0;  // 0: defender bracket zero-set, 1: attacker bracket zero-set
  PopulationState state;
};

// Zero-sets inside the unit square of the two replicator brackets, as polylines.
std::vector<NullclinePoint> nullclines(const GameParams& params, int resolution);

struct PhasePortrait {
  std::vector<FieldSample> field;
  std::vector<NullclinePoint> nullclines;
  std::vector<EquilibriumReport> equilibria;
  std::vector<Trajectory> trajectories;
};

PhasePortrait build_phase_portrait(const GameParams& params, int resolution, const std::vector<PopulationState>& starts,
                                   const IntegratorSettings& settings);
std::string phase_svg(const PhasePortrait& portrait, const Provenance& prov);
void write_phase(const PhasePortrait& portrait, const std::filesystem::path& dir, const Provenance& prov,
                 const OutputFormats& formats);

void write_abm(const AbmResult& result, const std::filesystem::path& dir, const Provenance& prov,
               const OutputFormats& formats);

}  // namespace cyber_egt
