#include "soqft/forcefield.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soqft {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_real(std::string_view tok, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw ForceFieldError("expected a finite number, got '" + std::string(tok) + "'", line);
  return v;
}

int parse_index(std::string_view tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ForceFieldError("expected an integer index, got '" + std::string(tok) + "'", line);
  return v;
}

std::string key_string(const IndexKey& key) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? " " : "") + std::to_string(key[i]);
  return s;
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ForceFieldError::ForceFieldError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

const CoefficientTable& ForceField::dipole_axis(char axis) const {
  static const CoefficientTable empty;
  auto it = dipole.find(axis);
  return it == dipole.end() ? empty : it->second;
}

IndexKey canonical_key(IndexKey key) {
  std::sort(key.begin(), key.end());
  return key;
}

bool is_valid_axis(char axis) { return axis == 'x' || axis == 'y' || axis == 'z'; }

ForceField parse_forcefield(std::string_view text) {
  ForceField ff;
  std::vector<bool> omega_seen;
  int line_no = 0;

  auto require_modes = [&](int line) {
    if (ff.n_modes == 0) throw ForceFieldError("'modes' must precede indexed entries", line);
  };
  auto read_key = [&](const std::vector<std::string_view>& tok, std::size_t first,
                      std::size_t count, int line) {
    IndexKey key;
    for (std::size_t i = 0; i < count; ++i) {
      int idx = parse_index(tok[first + i], line);
      if (idx < 0 || idx >= ff.n_modes)
        throw ForceFieldError("mode index " + std::to_string(idx) + " out of range", line);
      key.push_back(idx);
    }
    return canonical_key(std::move(key));
  };
  auto insert = [&](CoefficientTable& table, IndexKey key, double v, int line) {
    if (!table.emplace(key, v).second)
      throw ForceFieldError("duplicate coefficient for indices (" + key_string(key) + ")", line);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string_view cmd = tok[0];

    if (cmd == "name") {
      auto start = line.find("name") + 4;
      std::string_view rest = line.substr(start);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
      ff.name = std::string(rest);
    } else if (cmd == "modes") {
      if (tok.size() != 2) throw ForceFieldError("usage: modes N", line_no);
      if (ff.n_modes != 0) throw ForceFieldError("duplicate 'modes' line", line_no);
      int n = parse_index(tok[1], line_no);
      if (n <= 0) throw ForceFieldError("mode count must be positive", line_no);
      ff.n_modes = n;
      ff.omega.assign(n, 0.0);
      omega_seen.assign(n, false);
    } else if (cmd == "omega") {
      if (tok.size() != 3) throw ForceFieldError("usage: omega i value", line_no);
      require_modes(line_no);
      int i = read_key(tok, 1, 1, line_no)[0];
      if (omega_seen[i]) throw ForceFieldError("duplicate omega for mode " + std::to_string(i), line_no);
      double v = parse_real(tok[2], line_no);
      if (v <= 0.0) throw ForceFieldError("omega must be positive", line_no);
      ff.omega[i] = v;
      omega_seen[i] = true;
    } else if (cmd == "cubic") {
      if (tok.size() != 5) throw ForceFieldError("usage: cubic i j k value", line_no);
      require_modes(line_no);
      insert(ff.cubic, read_key(tok, 1, 3, line_no), parse_real(tok[4], line_no), line_no);
    } else if (cmd == "quartic") {
      if (tok.size() != 6) throw ForceFieldError("usage: quartic i j k l value", line_no);
      require_modes(line_no);
      insert(ff.quartic, read_key(tok, 1, 4, line_no), parse_real(tok[5], line_no), line_no);
    } else if (cmd == "mu") {
      if (tok.size() < 4 || tok.size() > 6)
        throw ForceFieldError("usage: mu AXIS i [j [k]] value", line_no);
      require_modes(line_no);
      if (tok[1].size() != 1 || !is_valid_axis(tok[1][0]))
        throw ForceFieldError("unknown dipole axis '" + std::string(tok[1]) + "'", line_no);
      IndexKey key = read_key(tok, 2, tok.size() - 3, line_no);
      insert(ff.dipole[tok[1][0]], std::move(key), parse_real(tok.back(), line_no), line_no);
    } else {
      throw ForceFieldError("unknown directive '" + std::string(cmd) + "'", line_no);
    }
  }

  if (ff.n_modes == 0) throw ForceFieldError("missing 'modes' line");
  for (int i = 0; i < ff.n_modes; ++i)
    if (!omega_seen[i]) throw ForceFieldError("missing omega for mode " + std::to_string(i));

  for (const auto& d : validate(ff))
    if (d.severity == Diagnostic::Severity::error) throw ForceFieldError(d.message);
  return ff;
}

ForceField load_forcefield(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ForceFieldError("cannot open force-field file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ForceField ff = parse_forcefield(ss.str());
  if (ff.name.empty()) {
    auto slash = path.find_last_of('/');
    std::string stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    ff.name = stem;
  }
  return ff;
}

std::string serialize_forcefield(const ForceField& ff) {
  std::ostringstream out;
  if (!ff.name.empty()) out << "name " << ff.name << "\n";
  out << "modes " << ff.n_modes << "\n";
  for (int i = 0; i < ff.n_modes; ++i) out << "omega " << i << " " << fmt_real(ff.omega[i]) << "\n";
  for (const auto& [k, v] : ff.cubic) out << "cubic " << key_string(k) << " " << fmt_real(v) << "\n";
  for (const auto& [k, v] : ff.quartic) out << "quartic " << key_string(k) << " " << fmt_real(v) << "\n";
  for (const auto& [axis, table] : ff.dipole)
    for (const auto& [k, v] : table)
      out << "mu " << axis << " " << key_string(k) << " " << fmt_real(v) << "\n";
  return out.str();
}

std::vector<Diagnostic> validate(const ForceField& ff) {
  using S = Diagnostic::Severity;
  std::vector<Diagnostic> out;
  if (ff.n_modes <= 0) {
    out.push_back({S::error, "mode count must be positive"});
    return out;
  }
  if (static_cast<int>(ff.omega.size()) != ff.n_modes)
    out.push_back({S::error, "omega list length differs from mode count"});
  for (std::size_t i = 0; i < ff.omega.size(); ++i)
    if (!(ff.omega[i] > 0.0)) out.push_back({S::error, "omega " + std::to_string(i) + " must be positive"});

  auto check_table = [&](const CoefficientTable& t, std::size_t min_order, std::size_t max_order,
                         const std::string& what) {
    for (const auto& [k, v] : t) {
      if (k.size() < min_order || k.size() > max_order)
        out.push_back({S::error, what + " key (" + key_string(k) + ") has wrong order"});
      if (!std::is_sorted(k.begin(), k.end()))
        out.push_back({S::error, what + " key (" + key_string(k) + ") is not canonical"});
      for (int i : k)
        if (i < 0 || i >= ff.n_modes)
          out.push_back({S::error, what + " key (" + key_string(k) + ") index out of range"});
      if (!std::isfinite(v)) out.push_back({S::error, what + " coefficient is not finite"});
    }
  };
  check_table(ff.cubic, 3, 3, "cubic");
  check_table(ff.quartic, 4, 4, "quartic");
  bool any_dipole = false;
  for (const auto& [axis, table] : ff.dipole) {
    if (!is_valid_axis(axis)) out.push_back({S::error, std::string("unknown dipole axis '") + axis + "'"});
    check_table(table, 1, 3, std::string("dipole ") + axis);
    for (const auto& [k, v] : table) any_dipole = any_dipole || v != 0.0;
  }
  if (!any_dipole) out.push_back({S::error, "no non-zero dipole coefficient on any axis"});

  for (int i = 0; i < ff.n_modes; ++i) {
    auto diag4 = ff.quartic.find(IndexKey{i, i, i, i});
    auto diag3 = ff.cubic.find(IndexKey{i, i, i});
    bool has_cubic = diag3 != ff.cubic.end() && diag3->second != 0.0;
    if (diag4 != ff.quartic.end() && diag4->second <= 0.0)
      out.push_back({S::warning, "mode " + std::to_string(i) +
                                     ": potential unbounded below on grid edge (diagonal quartic <= 0)"});
    else if (has_cubic && diag4 == ff.quartic.end())
      out.push_back({S::warning, "mode " + std::to_string(i) +
                                     ": potential unbounded below on grid edge (diagonal cubic without quartic)"});
  }
  return out;
}

}  // namespace soqft
