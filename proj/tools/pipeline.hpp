#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "soqft/dipole_encoding.hpp"
#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"
#include "soqft/series.hpp"
#include "soqft/spectrum.hpp"

namespace soqft::app {

/// Error raised by a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Runs f, rethrowing any std::exception as StageError(stage, ...).
template <class F>
auto run_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

GridSpec config_grid(const RunConfig& cfg, const ForceField& ff);

/// The ground-state energy always comes from imaginary-time relaxation; the
/// returned state is that relaxed state or the harmonic product state.
struct PreparedState {
  Wavefunction state;
  std::string kind;
  double E0 = 0.0;
  long iterations = 0;
  bool converged = false;
};
PreparedState prepare_state(const RunConfig& cfg, const ForceField& ff, const GridSpec& g);

struct DipoleOutcome {
  char axis = 'z';
  Wavefunction state;
  double norm_mu_sq = 0.0;
  std::optional<DipoleApplication> record;
};
DipoleOutcome dipole_stage(const RunConfig& cfg, const ForceField& ff, const Wavefunction& psi, char axis);

AutocorrelationSeries propagate_stage(const RunConfig& cfg, const ForceField& ff, const DipoleOutcome& dip, double E0);

struct SpectrumOutcome {
  Spectrum spectrum;
  std::vector<BandReport> bands;
};
/// Damps each series, sums the per-axis cross sections and reports bands in
/// the configured windows (or automatically detected ones).
SpectrumOutcome spectrum_stage(const RunConfig& cfg, const std::vector<AutocorrelationSeries>& series);

struct PipelineResult {
  PreparedState prepared;
  std::vector<DipoleOutcome> dipoles;
  std::vector<AutocorrelationSeries> series;
  SpectrumOutcome spectrum;
  std::map<std::string, double> timings;
};
PipelineResult run_pipeline(const RunConfig& cfg, const ForceField& ff);
/// Writes state, per-axis dipole/series files, spectrum, bands and manifest
/// under cfg.output_dir.
void write_pipeline(const RunConfig& cfg, const ForceField& ff, const PipelineResult& result);

struct ScanRow {
  Scheme scheme;
  ScanPoint point;
  std::size_t band = 0;
  BandReport report;
};
/// Every (scheme, point) combination; the relaxed state and each scheme's
/// dipole-operated states are computed once and reused across points.
std::vector<ScanRow> run_scan(const RunConfig& cfg, const ForceField& ff);
std::string scan_csv(const std::vector<ScanRow>& rows);

/// Published band entry from a fixture file.
struct FixtureRow {
  std::string scheme;
  double T = 0.0;
  long n_t = 0;
  std::string label;
  double centroid = 0.0;
  double ci95 = 0.0;
  double intensity = 0.0;
};
/// Reads any fixture with columns scheme, T_fs, n_t, centroid, ci95 and
/// intensity_km_mol (other columns become the label).
std::vector<FixtureRow> load_fixture(const std::string& path);

struct FixtureComparison {
  FixtureRow published;
  bool matched = false;
  BandReport computed;
  bool within_ci = false;
  double intensity_rel_diff = 0.0;
};
/// Pairs each published band with the nearest computed band of the same
/// scheme and time parameters.
std::vector<FixtureComparison> compare_fixture(const std::vector<FixtureRow>& fixture, const std::vector<ScanRow>& rows);
std::string comparison_csv(const std::vector<FixtureComparison>& cmp);

}  // namespace soqft::app
