#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "soqft/grid.hpp"
#include "soqft/oracle.hpp"
#include "soqft/series.hpp"
#include "soqft/spectrum.hpp"

namespace soqft::app {

inline constexpr int schema_version = 1;
inline constexpr const char* soqft_version = "1.0.0";

std::string format_real(double v);  // %.17g
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

/// JSON sidecar with "schema" = "soqft.<kind>" and "schema_version".
void write_json(const std::string& path, const std::string& kind, nlohmann::json body);
/// Reads a sidecar and checks its schema kind and version.
nlohmann::json read_json(const std::string& path, const std::string& kind);

/// CSV rows (index, re, im).
void write_state(const std::string& path, const Wavefunction& psi);
Wavefunction read_state(const std::string& path, const GridSpec& g);

/// CSV rows (t_fs, re, im) plus std_err_re, std_err_im for sampled series.
void write_series(const std::string& path, const AutocorrelationSeries& s);
/// Times and values only; axis, E0 and norm come from the sidecar.
AutocorrelationSeries read_series(const std::string& path);

/// CSV (E_cm-1, sigma_<axis>..., sigma_total) and a two-column gnuplot file.
void write_spectrum(const std::string& path, const Spectrum& spec);
void write_gnuplot(const std::string& path, const Spectrum& spec);
nlohmann::json bands_json(const std::vector<BandReport>& bands);

void write_eigenvalues(const std::string& path, const std::vector<double>& values);
struct AxisSticks {
  char axis;
  std::vector<Stick> sticks;
};
void write_sticks(const std::string& path, const std::vector<AxisSticks>& sticks,
                  const units::ConstantsBundle& constants = {});

/// Records every produced file with its SHA-256.
class Manifest {
 public:
  explicit Manifest(std::string command);
  void set(const std::string& key, nlohmann::json value) { body_[key] = std::move(value); }
  void add_file(const std::string& path);
  void add_timing(const std::string& stage, double seconds);
  void write(const std::string& path) const;

 private:
  nlohmann::json body_;
  nlohmann::json files_ = nlohmann::json::array();
  nlohmann::json timings_ = nlohmann::json::object();
};

nlohmann::json library_versions();

}  // namespace soqft::app
