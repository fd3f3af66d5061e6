#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "soqft/propagator.hpp"
#include "soqft/spectrum.hpp"

namespace soqft::app {

/// One approximation scheme: dipole truncation order and initial state.
struct Scheme {
  int dipole_order = 3;
  std::string initial_state = "ite";  // "ite" or "harmonic"

  std::string name() const;  // e.g. "mu3_ite"
  bool operator==(const Scheme&) const = default;
};
Scheme parse_scheme(std::string_view name);

struct ScanPoint {
  double T = 0.0;
  long n_t = 0;
  bool operator==(const ScanPoint&) const = default;
};

/// Every setting of a run. Text form is `key = value` per line with `#`
/// comments; list values are comma-separated.
struct RunConfig {
  std::string forcefield;
  int n_qubits = 4;
  double L = 10.0;
  double T = 3950.0;
  long n_t = 60000;
  long record_every = 1;
  Splitting splitting = Splitting::kinetic_half;
  std::vector<char> axes{'x', 'z'};
  int dipole_order = 3;
  std::string dipole_mode = "exact";  // "exact" or "circuit"
  double beta_margin = 20.0;
  std::string initial_state = "ite";
  double ite_dtau = 0.01;
  double ite_tol = 1e-8;
  long shots = 0;
  std::uint64_t seed = 0;
  int pad = 4;
  double threshold = 1e-3;
  double e_min = 0.0;
  double e_max = 12000.0;
  std::vector<Window> windows;  // empty: detect automatically
  std::string output_dir = "soqft_out";
  std::vector<ScanPoint> scan_points;
  std::vector<Scheme> schemes;

  PropagationConfig propagation() const;
  SpectrumOptions spectrum_options() const;
  Scheme scheme() const { return {dipole_order, initial_state}; }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Known keys in canonical order.
const std::vector<std::string>& config_keys();
void set_value(RunConfig& cfg, std::string_view key, std::string_view value);
std::string get_value(const RunConfig& cfg, std::string_view key);

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Canonical `key = value` text covering every key.
std::string serialize_config(const RunConfig& cfg);
nlohmann::json config_json(const RunConfig& cfg);
/// Checks ranges and cross-key constraints; throws ConfigError.
void check_config(const RunConfig& cfg);

}  // namespace soqft::app
