#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soqft::app {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    auto item = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out))
    throw ConfigError("config key '" + std::string(key) + "': expected a number, got '" + s + "'");
  return out;
}

long to_long(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  long out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("config key '" + std::string(key) + "': expected an integer, got '" + s + "'");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string Scheme::name() const { return "mu" + std::to_string(dipole_order) + "_" + initial_state; }

Scheme parse_scheme(std::string_view name) {
  const std::string s = trim(name);
  const auto us = s.find('_');
  if (s.size() < 4 || s.rfind("mu", 0) != 0 || us == std::string::npos)
    throw ConfigError("scheme '" + s + "': expected mu<order>_<ite|harmonic>");
  Scheme sc;
  sc.dipole_order = static_cast<int>(to_long("schemes", s.substr(2, us - 2)));
  sc.initial_state = s.substr(us + 1);
  if (sc.dipole_order < 1 || sc.dipole_order > 3) throw ConfigError("scheme '" + s + "': dipole order must be 1..3");
  if (sc.initial_state != "ite" && sc.initial_state != "harmonic")
    throw ConfigError("scheme '" + s + "': initial state must be ite or harmonic");
  return sc;
}

PropagationConfig RunConfig::propagation() const { return PropagationConfig{T, n_t, splitting, record_every}; }

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions o;
  o.pad = pad;
  o.e_min = e_min;
  o.e_max = e_max;
  return o;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "forcefield",   "n_qubits",    "L",        "T",         "n_t",       "record_every", "splitting",
      "axes",         "dipole_order", "dipole_mode", "beta_margin", "initial_state", "ite_dtau", "ite_tol",
      "shots",        "seed",        "pad",      "threshold", "e_min",     "e_max",        "windows",
      "output_dir",   "scan_points", "schemes"};
  return keys;
}

void set_value(RunConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string v = trim(raw);
  if (key == "forcefield") {
    cfg.forcefield = v;
  } else if (key == "n_qubits") {
    cfg.n_qubits = static_cast<int>(to_long(key, v));
  } else if (key == "L") {
    cfg.L = to_double(key, v);
  } else if (key == "T") {
    cfg.T = to_double(key, v);
  } else if (key == "n_t") {
    cfg.n_t = to_long(key, v);
  } else if (key == "record_every") {
    cfg.record_every = to_long(key, v);
  } else if (key == "splitting") {
    if (v == "kinetic_half") cfg.splitting = Splitting::kinetic_half;
    else if (v == "potential_half") cfg.splitting = Splitting::potential_half;
    else throw ConfigError("config key 'splitting': expected kinetic_half or potential_half, got '" + v + "'");
  } else if (key == "axes") {
    cfg.axes.clear();
    for (const auto& a : split(v, ',')) {
      if (a.size() != 1 || !is_valid_axis(a[0])) throw ConfigError("config key 'axes': unknown axis '" + a + "'");
      cfg.axes.push_back(a[0]);
    }
  } else if (key == "dipole_order") {
    cfg.dipole_order = static_cast<int>(to_long(key, v));
  } else if (key == "dipole_mode") {
    cfg.dipole_mode = v;
  } else if (key == "beta_margin") {
    cfg.beta_margin = to_double(key, v);
  } else if (key == "initial_state") {
    cfg.initial_state = v;
  } else if (key == "ite_dtau") {
    cfg.ite_dtau = to_double(key, v);
  } else if (key == "ite_tol") {
    cfg.ite_tol = to_double(key, v);
  } else if (key == "shots") {
    cfg.shots = to_long(key, v);
  } else if (key == "seed") {
    const long s = to_long(key, v);
    if (s < 0) throw ConfigError("config key 'seed': must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "pad") {
    cfg.pad = static_cast<int>(to_long(key, v));
  } else if (key == "threshold") {
    cfg.threshold = to_double(key, v);
  } else if (key == "e_min") {
    cfg.e_min = to_double(key, v);
  } else if (key == "e_max") {
    cfg.e_max = to_double(key, v);
  } else if (key == "windows") {
    cfg.windows.clear();
    for (const auto& w : split(v, ',')) {
      const auto parts = split(w, ':');
      if (parts.size() != 2) throw ConfigError("config key 'windows': expected lo:hi, got '" + w + "'");
      cfg.windows.push_back({to_double(key, parts[0]), to_double(key, parts[1])});
    }
  } else if (key == "output_dir") {
    cfg.output_dir = v;
  } else if (key == "scan_points") {
    cfg.scan_points.clear();
    for (const auto& p : split(v, ',')) {
      const auto parts = split(p, ':');
      if (parts.size() != 2) throw ConfigError("config key 'scan_points': expected T:n_t, got '" + p + "'");
      cfg.scan_points.push_back({to_double(key, parts[0]), to_long(key, parts[1])});
    }
  } else if (key == "schemes") {
    cfg.schemes.clear();
    for (const auto& s : split(v, ',')) cfg.schemes.push_back(parse_scheme(s));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::string get_value(const RunConfig& cfg, std::string_view key) {
  auto join = [](const auto& items, auto&& f) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + f(items[i]);
    return s;
  };
  if (key == "forcefield") return cfg.forcefield;
  if (key == "n_qubits") return std::to_string(cfg.n_qubits);
  if (key == "L") return fmt(cfg.L);
  if (key == "T") return fmt(cfg.T);
  if (key == "n_t") return std::to_string(cfg.n_t);
  if (key == "record_every") return std::to_string(cfg.record_every);
  if (key == "splitting") return cfg.splitting == Splitting::kinetic_half ? "kinetic_half" : "potential_half";
  if (key == "axes") return join(cfg.axes, [](char a) { return std::string(1, a); });
  if (key == "dipole_order") return std::to_string(cfg.dipole_order);
  if (key == "dipole_mode") return cfg.dipole_mode;
  if (key == "beta_margin") return fmt(cfg.beta_margin);
  if (key == "initial_state") return cfg.initial_state;
  if (key == "ite_dtau") return fmt(cfg.ite_dtau);
  if (key == "ite_tol") return fmt(cfg.ite_tol);
  if (key == "shots") return std::to_string(cfg.shots);
  if (key == "seed") return std::to_string(cfg.seed);
  if (key == "pad") return std::to_string(cfg.pad);
  if (key == "threshold") return fmt(cfg.threshold);
  if (key == "e_min") return fmt(cfg.e_min);
  if (key == "e_max") return fmt(cfg.e_max);
  if (key == "windows") return join(cfg.windows, [](const Window& w) { return fmt(w.lo) + ":" + fmt(w.hi); });
  if (key == "output_dir") return cfg.output_dir;
  if (key == "scan_points")
    return join(cfg.scan_points, [](const ScanPoint& p) { return fmt(p.T) + ":" + std::to_string(p.n_t); });
  if (key == "schemes") return join(cfg.schemes, [](const Scheme& s) { return s.name(); });
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      set_value(cfg, trim(std::string_view(line).substr(0, eq)), std::string_view(line).substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : config_keys()) out += k + " = " + get_value(cfg, k) + "\n";
  return out;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& k : config_keys()) j[k] = get_value(cfg, k);
  return j;
}

void check_config(const RunConfig& cfg) {
  if (cfg.forcefield.empty()) throw ConfigError("config: 'forcefield' is required");
  if (cfg.n_qubits < 2 || cfg.n_qubits > 10) throw ConfigError("config: n_qubits must be in 2..10");
  if (!(cfg.L > 0.0)) throw ConfigError("config: L must be positive");
  if (cfg.axes.empty()) throw ConfigError("config: at least one axis is required");
  if (cfg.dipole_order < 1 || cfg.dipole_order > 3) throw ConfigError("config: dipole_order must be 1, 2 or 3");
  if (cfg.dipole_mode != "exact" && cfg.dipole_mode != "circuit")
    throw ConfigError("config: dipole_mode must be exact or circuit");
  if (!(cfg.beta_margin >= 1.0)) throw ConfigError("config: beta_margin must be at least 1");
  if (cfg.initial_state != "ite" && cfg.initial_state != "harmonic")
    throw ConfigError("config: initial_state must be ite or harmonic");
  if (!(cfg.ite_dtau > 0.0) || !(cfg.ite_tol > 0.0)) throw ConfigError("config: ite_dtau and ite_tol must be positive");
  if (cfg.shots < 0) throw ConfigError("config: shots must be non-negative");
  if (cfg.pad < 1) throw ConfigError("config: pad must be at least 1");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw ConfigError("config: threshold must be in (0, 1)");
  if (!(cfg.e_max > cfg.e_min)) throw ConfigError("config: e_max must exceed e_min");
  for (const auto& w : cfg.windows)
    if (!(w.hi > w.lo)) throw ConfigError("config: every window needs lo < hi");
  try {
    cfg.propagation().validate();
    for (const auto& p : cfg.scan_points) PropagationConfig{p.T, p.n_t, cfg.splitting, cfg.record_every}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace soqft::app
