#include "artifacts.hpp"

#include <fftw3.h>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <boost/version.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace soqft::app {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
}

// Data rows of a CSV file after checking its header prefix.
std::vector<std::vector<std::string>> read_csv(const std::string& path, const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  const auto head = split_csv(line);
  if (head.size() < header.size() || !std::equal(header.begin(), header.end(), head.begin()))
    throw std::runtime_error(path + ": unexpected CSV header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(split_csv(line));
  return rows;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text(path)); }

void write_text(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::string& path, const std::string& kind, nlohmann::json body) {
  body["schema"] = "soqft." + kind;
  body["schema_version"] = schema_version;
  write_text(path, body.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path, const std::string& kind) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
  if (j.value("schema", "") != "soqft." + kind)
    throw std::runtime_error(path + ": expected schema soqft." + kind);
  if (j.value("schema_version", 0) != schema_version)
    throw std::runtime_error(path + ": unsupported schema_version");
  return j;
}

void write_state(const std::string& path, const Wavefunction& psi) {
  std::string s = "index,re,im\n";
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
    s += std::to_string(i) + "," + format_real(psi.amplitudes[i].real()) + "," +
         format_real(psi.amplitudes[i].imag()) + "\n";
  write_text(path, s);
}

Wavefunction read_state(const std::string& path, const GridSpec& g) {
  const auto rows = read_csv(path, {"index", "re", "im"});
  if (rows.size() != g.size())
    throw std::runtime_error(path + ": " + std::to_string(rows.size()) + " amplitudes, grid needs " +
                             std::to_string(g.size()));
  Wavefunction psi(g);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const int line = static_cast<int>(k) + 2;
    if (r.size() != 3 || r[0] != std::to_string(k)) throw std::runtime_error(path + ":" + std::to_string(line) + ": bad row");
    psi.amplitudes[k] = cplx(parse_double(r[1], path, line), parse_double(r[2], path, line));
  }
  return psi;
}

void write_series(const std::string& path, const AutocorrelationSeries& s) {
  const bool sampled = !s.std_error_re.empty();
  std::string out = sampled ? "t_fs,re,im,std_err_re,std_err_im\n" : "t_fs,re,im\n";
  for (std::size_t j = 0; j < s.times.size(); ++j) {
    out += format_real(s.times[j]) + "," + format_real(s.values[j].real()) + "," + format_real(s.values[j].imag());
    if (sampled) out += "," + format_real(s.std_error_re[j]) + "," + format_real(s.std_error_im[j]);
    out += "\n";
  }
  write_text(path, out);
}

AutocorrelationSeries read_series(const std::string& path) {
  const auto rows = read_csv(path, {"t_fs", "re", "im"});
  AutocorrelationSeries s;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const int line = static_cast<int>(k) + 2;
    if (r.size() != 3 && r.size() != 5) throw std::runtime_error(path + ":" + std::to_string(line) + ": bad row");
    s.times.push_back(parse_double(r[0], path, line));
    s.values.emplace_back(parse_double(r[1], path, line), parse_double(r[2], path, line));
    if (r.size() == 5) {
      s.std_error_re.push_back(parse_double(r[3], path, line));
      s.std_error_im.push_back(parse_double(r[4], path, line));
    }
  }
  return s;
}

void write_spectrum(const std::string& path, const Spectrum& spec) {
  std::string out = "E_cm-1";
  for (char a : spec.axes) out += std::string(",sigma_") + a;
  out += ",sigma_total\n";
  for (std::size_t i = 0; i < spec.energies.size(); ++i) {
    out += format_real(spec.energies[i]);
    for (const auto& col : spec.sigma_axis) out += "," + format_real(col[i]);
    out += "," + format_real(spec.sigma[i]) + "\n";
  }
  write_text(path, out);
}

void write_gnuplot(const std::string& path, const Spectrum& spec) {
  std::string out = "# E_cm-1 sigma_total_cm2\n";
  for (std::size_t i = 0; i < spec.energies.size(); ++i)
    out += format_real(spec.energies[i]) + " " + format_real(spec.sigma[i]) + "\n";
  write_text(path, out);
}

nlohmann::json bands_json(const std::vector<BandReport>& bands) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bands)
    arr.push_back({{"window_lo", b.window.lo},
                   {"window_hi", b.window.hi},
                   {"centroid_cm-1", b.centroid},
                   {"ci95_cm-1", b.ci95},
                   {"intensity_km_mol", b.intensity},
                   {"n_points", b.n_points}});
  return arr;
}

void write_eigenvalues(const std::string& path, const std::vector<double>& values) {
  std::string out = "state,energy_cm-1,excitation_cm-1\n";
  for (std::size_t k = 0; k < values.size(); ++k)
    out += std::to_string(k) + "," + format_real(values[k]) + "," + format_real(values[k] - values[0]) + "\n";
  write_text(path, out);
}

void write_sticks(const std::string& path, const std::vector<AxisSticks>& sticks,
                  const units::ConstantsBundle& constants) {
  std::string out = "axis,state,excitation_cm-1,strength_D2,intensity_km_mol\n";
  for (const auto& as : sticks)
    for (const auto& s : as.sticks)
      out += std::string(1, as.axis) + "," + std::to_string(s.state) + "," + format_real(s.energy) + "," +
             format_real(s.strength) + "," + format_real(constants.stick_intensity_km_per_mol(s.energy, s.strength)) +
             "\n";
  write_text(path, out);
}

Manifest::Manifest(std::string command) {
  body_["command"] = std::move(command);
  body_["versions"] = library_versions();
}

void Manifest::add_file(const std::string& path) {
  files_.push_back({{"path", std::filesystem::path(path).filename().string()}, {"sha256", sha256_file(path)}});
}

void Manifest::add_timing(const std::string& stage, double seconds) { timings_[stage] = seconds; }

void Manifest::write(const std::string& path) const {
  nlohmann::json j = body_;
  j["files"] = files_;
  j["timings_s"] = timings_;
  write_json(path, "manifest", j);
}

nlohmann::json library_versions() {
  return {{"soqft", soqft_version},
          {"fftw", std::string(fftw_version)},
          {"boost", std::string(BOOST_LIB_VERSION)},
          {"openssl", std::string(OPENSSL_VERSION_TEXT)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

}  // namespace soqft::app
