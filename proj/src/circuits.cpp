#include "soqft/circuits.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "soqft/hamiltonian.hpp"
#include "soqft/state_prep.hpp"
#include "soqft/units.hpp"

namespace soqft {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_angle(double a) { return std::remainder(a, 2.0 * pi); }

Gate single(GateKind k, int t, double angle = 0.0) { return Gate{k, {t}, {}, angle}; }
Gate controlled(GateKind k, int c, int t, double angle = 0.0) { return Gate{k, {t}, {{c, true}}, angle}; }

std::string mode_label(const IndexKey& modes) {
  if (modes.empty()) return "U_0";
  std::string s = "U_";
  for (int m : modes) s += std::to_string(m + 1);
  return s;
}

void check_layout(const QubitLayout& layout) {
  if (layout.n < 1 || layout.d < 1) throw std::invalid_argument("circuit layout: empty register set");
}

// Two-control gate as five gates with single controls.
void emit_two_control(std::vector<Gate>& out, GateKind kind, int c1, int c2, int t, double angle) {
  if (kind == GateKind::U1) {
    out.push_back(controlled(GateKind::U1, c2, t, 0.5 * angle));
    out.push_back(controlled(GateKind::X, c1, c2));
    out.push_back(controlled(GateKind::U1, c2, t, -0.5 * angle));
    out.push_back(controlled(GateKind::X, c1, c2));
    out.push_back(controlled(GateKind::U1, c1, t, 0.5 * angle));
  } else if (kind == GateKind::X) {
    out.push_back(controlled(GateKind::SX, c2, t));
    out.push_back(controlled(GateKind::X, c1, c2));
    out.push_back(controlled(GateKind::SXdg, c2, t));
    out.push_back(controlled(GateKind::X, c1, c2));
    out.push_back(controlled(GateKind::SX, c1, t));
  } else {
    throw std::invalid_argument("decompose_multicontrolled: only U1 and X support two or three controls");
  }
}

using Mat2 = std::array<cplx, 4>;

Mat2 matrix_of(const Gate& g) {
  const double h = 1.0 / std::numbers::sqrt2;
  const cplx I(0.0, 1.0);
  switch (g.kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: return {h, h, h, -h};
    case GateKind::Ry: {
      const double c = std::cos(0.5 * g.angle), s = std::sin(0.5 * g.angle);
      return {c, -s, s, c};
    }
    case GateKind::Rz: return {std::polar(1.0, -0.5 * g.angle), 0.0, 0.0, std::polar(1.0, 0.5 * g.angle)};
    case GateKind::W: return {h, -I * h, h, I * h};
    case GateKind::Wdag: return {h, h, I * h, -I * h};
    case GateKind::SX: return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
    case GateKind::SXdg: return {cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5), cplx(0.5, -0.5)};
    case GateKind::U1: return {1.0, 0.0, 0.0, std::polar(1.0, g.angle)};
    case GateKind::SWAP: break;
  }
  throw std::logic_error("matrix_of: no 2x2 matrix for SWAP");
}

// Calls f(i) for every index whose bits under `fixed` equal `value`.
template <class F>
void for_each_index(std::size_t full, std::size_t fixed, std::size_t value, F&& f) {
  const std::size_t free = full & ~fixed;
  std::size_t sub = 0;
  do {
    f(sub | value);
    sub = (sub - free) & free;
  } while (sub != 0);
}

}  // namespace

int QubitLayout::dipole_ancilla() const {
  if (!with_ancillas) throw std::invalid_argument("layout has no ancilla qubits");
  return n * d;
}

int QubitLayout::decomposition_ancilla(int k) const {
  if (!with_ancillas) throw std::invalid_argument("layout has no decomposition ancillas");
  if (k < 0 || k > 1) throw std::invalid_argument("decomposition ancilla index must be 0 or 1");
  return n * d + 1 + k;
}

int QubitLayout::hadamard_ancilla() const {
  if (!with_ancillas) throw std::invalid_argument("layout has no ancilla qubits");
  return n * d + 3;
}

QubitLayout make_layout(const GridSpec& g, bool with_ancillas) { return QubitLayout{g.n, g.d, with_ancillas}; }

void Circuit::append(const Circuit& other) {
  if (!(other.layout == layout)) throw std::invalid_argument("Circuit::append: layout mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  ledger.insert(ledger.end(), other.ledger.begin(), other.ledger.end());
}

long Circuit::counted_depth() const {
  long s = 0;
  for (const auto& e : ledger) s += e.count;
  return s;
}

long Circuit::block_depth(const std::string& block) const {
  long s = 0;
  for (const auto& e : ledger)
    if (e.block == block) s += e.count;
  return s;
}

void validate(const Circuit& c) {
  const int total = c.layout.total_qubits();
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    const Gate& g = c.gates[k];
    const std::string where = "gate " + std::to_string(k) + ": ";
    const std::size_t want = g.kind == GateKind::SWAP ? 2 : 1;
    if (g.targets.size() != want) throw std::invalid_argument(where + "wrong number of targets");
    std::vector<int> ops = g.targets;
    for (const auto& ctl : g.controls) ops.push_back(ctl.qubit);
    for (int q : ops)
      if (q < 0 || q >= total) throw std::invalid_argument(where + "qubit " + std::to_string(q) + " out of range");
    std::sort(ops.begin(), ops.end());
    if (std::adjacent_find(ops.begin(), ops.end()) != ops.end())
      throw std::invalid_argument(where + "operands are not distinct");
    if (!std::isfinite(g.angle)) throw std::invalid_argument(where + "angle is not finite");
  }
}

Circuit build_phase_polynomial(const IndexKey& indices, double b, const QubitLayout& layout, const std::string& block) {
  check_layout(layout);
  if (indices.size() > 4) throw std::invalid_argument("build_phase_polynomial: at most four indices are supported");
  for (int m : indices)
    if (m < 0 || m >= layout.d) throw std::invalid_argument("build_phase_polynomial: mode index out of range");
  if (!std::isfinite(b)) throw std::invalid_argument("build_phase_polynomial: coefficient is not finite");

  Circuit c;
  c.layout = layout;
  const IndexKey key = canonical_key(indices);
  if (key.empty()) {
    const int q = layout.qubit(0, 0);
    const double a = wrap_angle(b);
    c.gates = {single(GateKind::U1, q, a), single(GateKind::X, q), single(GateKind::U1, q, a),
               single(GateKind::X, q)};
    c.ledger.push_back({block, "U_0", 4});
    return c;
  }

  const int m = static_cast<int>(key.size());
  const int n = layout.n;
  std::vector<int> pos(m, 0);
  long cost = 0;
  while (true) {
    std::vector<int> qubits;
    int weight = 0;
    for (int k = 0; k < m; ++k) {
      const int q = layout.qubit(key[k], pos[k]);
      weight += pos[k];
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
    }
    const int target = layout.qubit(key[m - 1], pos[m - 1]);
    Gate g{GateKind::U1, {target}, {}, wrap_angle(std::ldexp(b, weight))};
    for (int q : qubits)
      if (q != target) g.controls.push_back({q, true});
    cost += gate_cost(g);
    c.gates.push_back(std::move(g));

    int k = m - 1;
    while (k >= 0 && ++pos[k] == n) pos[k--] = 0;
    if (k < 0) break;
  }
  c.ledger.push_back({block, mode_label(key), cost});
  return c;
}

long gate_cost(const Gate& g) {
  switch (g.controls.size()) {
    case 0:
    case 1: return 1;
    case 2: return 5;
    case 3: return 21;
    default: throw std::invalid_argument("gate_cost: more than three controls");
  }
}

Circuit decompose_multicontrolled(const Circuit& c) {
  Circuit out;
  out.layout = c.layout;
  out.ledger = c.ledger;
  for (const Gate& g : c.gates) {
    const std::size_t nc = g.controls.size();
    if (nc <= 1) {
      out.gates.push_back(g);
      continue;
    }
    if (nc > 3) throw std::invalid_argument("decompose_multicontrolled: more than three controls");
    if (g.kind != GateKind::U1 && g.kind != GateKind::X)
      throw std::invalid_argument("decompose_multicontrolled: only U1 and X support two or three controls");
    std::vector<int> flips;
    for (const auto& ctl : g.controls)
      if (!ctl.on) flips.push_back(ctl.qubit);
    for (int q : flips) out.gates.push_back(single(GateKind::X, q));

    const int t = g.targets[0];
    const int c1 = g.controls[0].qubit, c2 = g.controls[1].qubit;
    if (nc == 2) {
      emit_two_control(out.gates, g.kind, c1, c2, t, g.angle);
    } else {
      if (!c.layout.with_ancillas)
        throw std::invalid_argument("decompose_multicontrolled: three controls need the decomposition ancillas");
      const int c3 = g.controls[2].qubit;
      const int a1 = c.layout.decomposition_ancilla(0), a2 = c.layout.decomposition_ancilla(1);
      for (int q : {t, c1, c2, c3})
        if (q == a1 || q == a2)
          throw std::invalid_argument("decompose_multicontrolled: gate acts on a decomposition ancilla");
      emit_two_control(out.gates, GateKind::X, c1, c2, a1, 0.0);
      emit_two_control(out.gates, GateKind::X, a1, c3, a2, 0.0);
      out.gates.push_back(controlled(g.kind, a2, t, g.angle));
      emit_two_control(out.gates, GateKind::X, a1, c3, a2, 0.0);
      emit_two_control(out.gates, GateKind::X, c1, c2, a1, 0.0);
    }
    for (int q : flips) out.gates.push_back(single(GateKind::X, q));
  }
  return out;
}

std::vector<IndexCase> all_index_cases() {
  using C = IndexCase;
  return {C::u0, C::i, C::ii, C::ij, C::iii, C::iik, C::ijk, C::iiii, C::iiil, C::iikk, C::iikl, C::ijkl};
}

std::string case_label(IndexCase c) {
  switch (c) {
    case IndexCase::u0: return "U_0";
    case IndexCase::i: return "U_i";
    case IndexCase::ii: return "U_ij (i=j)";
    case IndexCase::ij: return "U_ij (i!=j)";
    case IndexCase::iii: return "U_ijk (i=j=k)";
    case IndexCase::iik: return "U_ijk (i=j!=k)";
    case IndexCase::ijk: return "U_ijk (i!=j!=k)";
    case IndexCase::iiii: return "U_ijkl (i=j=k=l)";
    case IndexCase::iiil: return "U_ijkl (i=j=k!=l)";
    case IndexCase::iikk: return "U_ijkl (i=j!=k=l)";
    case IndexCase::iikl: return "U_ijkl (i=j!=k!=l)";
    case IndexCase::ijkl: return "U_ijkl (i!=j!=k!=l)";
  }
  throw std::invalid_argument("case_label: unknown case");
}

IndexKey case_indices(IndexCase c) {
  switch (c) {
    case IndexCase::u0: return {};
    case IndexCase::i: return {0};
    case IndexCase::ii: return {0, 0};
    case IndexCase::ij: return {0, 1};
    case IndexCase::iii: return {0, 0, 0};
    case IndexCase::iik: return {0, 0, 1};
    case IndexCase::ijk: return {0, 1, 2};
    case IndexCase::iiii: return {0, 0, 0, 0};
    case IndexCase::iiil: return {0, 0, 0, 1};
    case IndexCase::iikk: return {0, 0, 1, 1};
    case IndexCase::iikl: return {0, 0, 1, 2};
    case IndexCase::ijkl: return {0, 1, 2, 3};
  }
  throw std::invalid_argument("case_indices: unknown case");
}

int case_modes(IndexCase c) {
  const auto k = case_indices(c);
  return k.empty() ? 1 : k.back() + 1;
}

IndexCase classify(const IndexKey& indices) {
  if (indices.size() > 4) throw std::invalid_argument("classify: more than four indices");
  std::map<int, int> mult;
  for (int i : indices) ++mult[i];
  std::vector<int> shape;
  for (auto [m, k] : mult) shape.push_back(k);
  std::sort(shape.rbegin(), shape.rend());
  using C = IndexCase;
  using S = std::vector<int>;
  if (shape.empty()) return C::u0;
  if (shape == S{1}) return C::i;
  if (shape == S{2}) return C::ii;
  if (shape == S{1, 1}) return C::ij;
  if (shape == S{3}) return C::iii;
  if (shape == S{2, 1}) return C::iik;
  if (shape == S{1, 1, 1}) return C::ijk;
  if (shape == S{4}) return C::iiii;
  if (shape == S{3, 1}) return C::iiil;
  if (shape == S{2, 2}) return C::iikk;
  if (shape == S{2, 1, 1}) return C::iikl;
  return C::ijkl;
}

long gate_depth(IndexCase c, int n) {
  if (n < 2) throw std::invalid_argument("gate_depth: n must be at least 2");
  const long N = n, N2 = N * N, N3 = N2 * N, N4 = N3 * N;
  switch (c) {
    case IndexCase::u0: return 4;
    case IndexCase::i: return N;
    case IndexCase::ii:
    case IndexCase::ij: return N2;
    case IndexCase::iii: return 5 * N3 - 12 * N2 + 8 * N;
    case IndexCase::iik: return 5 * N3 - 4 * N2;
    case IndexCase::ijk: return 5 * N3;
    case IndexCase::iiii: return 21 * N4 - 96 * N3 + 148 * N2 - 72 * N;
    case IndexCase::iiil: return 21 * N4 - 48 * N3 + 28 * N2;
    case IndexCase::iikk: return 21 * N4 - 32 * N3 + 12 * N2;
    case IndexCase::iikl: return 21 * N4 - 16 * N3;
    case IndexCase::ijkl: return 21 * N4;
  }
  throw std::invalid_argument("gate_depth: unknown case");
}

long gate_depth(const Circuit& c) { return static_cast<long>(decompose_multicontrolled(c).gates.size()); }

std::vector<PhaseGroup> group_polynomial(const CoefficientTable& table, const GridSpec& g) {
  std::map<IndexKey, double> acc;
  const double offset = -0.5 * g.L;
  const double dq = g.dq();
  for (const auto& [key, coeff] : table) {
    const IndexKey k = canonical_key(key);
    const int m = static_cast<int>(k.size());
    if (m > 4) throw std::invalid_argument("group_polynomial: monomial beyond quartic order");
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      IndexKey regs;
      double f = coeff;
      for (int p = 0; p < m; ++p) {
        if (mask & (1u << p)) {
          regs.push_back(k[p]);
          f *= dq;
        } else {
          f *= offset;
        }
      }
      acc[regs] += f;
    }
  }
  std::vector<PhaseGroup> out;
  for (const auto& [regs, v] : acc) out.push_back({regs, v});
  std::stable_sort(out.begin(), out.end(),
                   [](const PhaseGroup& a, const PhaseGroup& b) { return a.registers.size() < b.registers.size(); });
  return out;
}

Circuit build_grouped_phase(const std::vector<PhaseGroup>& groups, double scale, const QubitLayout& layout,
                            const std::string& block) {
  Circuit c;
  c.layout = layout;
  std::map<std::size_t, std::pair<std::vector<std::string>, long>> rows;
  for (const auto& grp : groups) {
    Circuit part = build_phase_polynomial(grp.registers, scale * grp.coefficient, layout, block);
    c.gates.insert(c.gates.end(), part.gates.begin(), part.gates.end());
    auto& row = rows[grp.registers.size()];
    row.first.push_back(part.ledger.front().label);
    row.second += part.ledger.front().count;
  }
  for (const auto& [order, row] : rows) {
    std::string label;
    if (order == 0) {
      label = "U_0";
    } else {
      label = "{";
      for (std::size_t k = 0; k < row.first.size(); ++k) label += (k ? "," : "") + row.first[k];
      label += "}";
    }
    c.ledger.push_back({block, label, row.second});
  }
  return c;
}

CoefficientTable potential_table(const ForceField& ff) {
  CoefficientTable t;
  for (int i = 0; i < ff.n_modes; ++i) t[{i, i}] += 0.5 * ff.omega[i];
  for (const auto& [k, v] : ff.cubic) t[k] += v;
  for (const auto& [k, v] : ff.quartic) t[k] += v;
  return t;
}

CoefficientTable dipole_table(const ForceField& ff, char axis, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("dipole_table: truncation order must be 1, 2 or 3");
  CoefficientTable t;
  for (const auto& [k, v] : ff.dipole_axis(axis))
    if (static_cast<int>(k.size()) <= order) t[k] = v;
  return t;
}

long qft_depth(int n) { return static_cast<long>(n) + static_cast<long>(n) * (n - 1) / 2 + n / 2; }

Circuit build_qft(int mode, bool inverse, const QubitLayout& layout) {
  check_layout(layout);
  if (mode < 0 || mode >= layout.d) throw std::invalid_argument("build_qft: mode out of range");
  const int n = layout.n;
  Circuit c;
  c.layout = layout;
  for (int j = n - 1; j >= 0; --j) {
    const int t = layout.qubit(mode, j);
    c.gates.push_back(j == 0 ? single(GateKind::Ry, t, 0.5 * pi) : single(GateKind::H, t));
    for (int m = j - 1; m >= 0; --m)
      c.gates.push_back(controlled(GateKind::U1, layout.qubit(mode, m), t, -2.0 * pi / std::ldexp(1.0, j - m + 1)));
  }
  for (int a = 0; a < n / 2; ++a)
    c.gates.push_back(Gate{GateKind::SWAP, {layout.qubit(mode, a), layout.qubit(mode, n - 1 - a)}, {}, 0.0});
  if (inverse) {
    std::reverse(c.gates.begin(), c.gates.end());
    for (auto& g : c.gates)
      if (g.kind == GateKind::U1 || g.kind == GateKind::Ry) g.angle = -g.angle;
  }
  c.ledger.push_back({inverse ? "QFT^-1" : "QFT", "register " + std::to_string(mode + 1),
                      static_cast<long>(c.gates.size())});
  return c;
}

long state_prep_depth(int n) { return (2L << n) - 3; }

Circuit build_state_prep(const std::vector<double>& amplitudes, int mode, const QubitLayout& layout) {
  check_layout(layout);
  if (mode < 0 || mode >= layout.d) throw std::invalid_argument("build_state_prep: mode out of range");
  if (amplitudes.size() != (std::size_t{1} << layout.n))
    throw std::invalid_argument("build_state_prep: amplitude vector must have 2^n entries");
  const UcrAngles angles = ucr_angles(amplitudes);
  const int n = layout.n;
  Circuit c;
  c.layout = layout;
  for (int l = 0; l < n; ++l) {
    const int t = layout.qubit(mode, n - 1 - l);
    const auto& alpha = angles.levels[l];
    const std::size_t K = alpha.size();
    for (std::size_t i = 0; i < K; ++i) {
      const std::size_t gi = i ^ (i >> 1);
      double theta = 0.0;
      for (std::size_t j = 0; j < K; ++j) theta += (std::popcount(j & gi) % 2 ? -1.0 : 1.0) * alpha[j];
      c.gates.push_back(single(GateKind::Ry, t, theta / static_cast<double>(K)));
      if (l == 0) continue;
      const std::size_t gnext = ((i + 1) % K) ^ (((i + 1) % K) >> 1);
      const int bit = std::countr_zero(gi ^ gnext);
      c.gates.push_back(controlled(GateKind::X, layout.qubit(mode, n - l + bit), t));
    }
  }
  c.ledger.push_back({"state_prep", "register " + std::to_string(mode + 1), static_cast<long>(c.gates.size())});
  return c;
}

Circuit build_dipole_circuit(const ForceField& ff, const GridSpec& g, char axis, int order, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("build_dipole_circuit: beta must be positive");
  const auto mu = dipole_on_grid(ff, g, axis, order);
  double mu_max = 0.0;
  for (double v : mu.values) mu_max = std::max(mu_max, std::abs(v));
  if (mu_max / beta > max_scaled_dipole)
    throw std::invalid_argument("build_dipole_circuit: beta too small, max|mu/beta| = " + std::to_string(mu_max / beta) +
                                " exceeds " + std::to_string(max_scaled_dipole));
  const QubitLayout layout = make_layout(g);
  const int a = layout.dipole_ancilla();
  const auto groups = group_polynomial(dipole_table(ff, axis, order), g);

  Circuit c;
  c.layout = layout;
  c.gates.push_back(single(GateKind::H, a));
  c.gates.push_back(single(GateKind::W, a));
  Circuit plus = build_grouped_phase(groups, -1.0 / beta, layout, "exp(+i theta1)");
  for (auto& gate : plus.gates) gate.controls.push_back({a, false});
  Circuit minus = build_grouped_phase(groups, 1.0 / beta, layout, "exp(-i theta1)");
  for (auto& gate : minus.gates) gate.controls.push_back({a, true});
  c.append(plus);
  c.append(minus);
  c.gates.push_back(single(GateKind::Rz, a, 0.5 * pi));
  c.gates.push_back(single(GateKind::Wdag, a));
  return c;
}

Circuit build_kinetic(const ForceField& ff, const GridSpec& g, int mode, double dt_eff, const QubitLayout& layout) {
  if (mode < 0 || mode >= g.d) throw std::invalid_argument("build_kinetic: mode out of range");
  const double dp = g.momentum_spacing();
  const double N = static_cast<double>(g.points_per_mode());
  const double b = -units::two_pi_c * dt_eff * 0.5 * ff.omega[mode] * dp * dp;
  Circuit c;
  c.layout = layout;
  const int q0 = layout.qubit(mode, 0);
  Circuit sq = build_phase_polynomial({mode, mode}, b, layout, "U_K");
  Circuit lin = build_phase_polynomial({mode}, -b * N, layout, "U_K");
  c.gates = sq.gates;
  c.gates.insert(c.gates.end(), lin.gates.begin(), lin.gates.end());
  const double a = wrap_angle(0.25 * b * N * N);
  for (const Gate& gate : {single(GateKind::U1, q0, a), single(GateKind::X, q0), single(GateKind::U1, q0, a),
                           single(GateKind::X, q0)})
    c.gates.push_back(gate);
  c.ledger.push_back({"U_K", "register " + std::to_string(mode + 1), static_cast<long>(c.gates.size())});
  return c;
}

Circuit build_timestep_circuit(const ForceField& ff, const GridSpec& g, double dt) {
  if (ff.n_modes != g.d) throw std::invalid_argument("build_timestep_circuit: mode count mismatch");
  if (!std::isfinite(dt)) throw std::invalid_argument("build_timestep_circuit: dt must be finite");
  const QubitLayout layout = make_layout(g);
  Circuit c;
  c.layout = layout;
  for (int r = 0; r < g.d; ++r) c.append(build_kinetic(ff, g, r, 0.5 * dt, layout));
  for (int r = 0; r < g.d; ++r) c.append(build_qft(r, true, layout));
  c.append(build_grouped_phase(group_polynomial(potential_table(ff), g), -units::two_pi_c * dt, layout, "U_V"));
  for (int r = 0; r < g.d; ++r) c.append(build_qft(r, false, layout));
  for (int r = 0; r < g.d; ++r) c.append(build_kinetic(ff, g, r, 0.5 * dt, layout));
  return c;
}

void execute(const Circuit& c, StateVector& state) {
  const int total = c.layout.total_qubits();
  if (total > 30) throw std::invalid_argument("execute: too many qubits for a statevector");
  if (state.size() != (std::size_t{1} << total))
    throw std::invalid_argument("execute: statevector has " + std::to_string(state.size()) + " entries, expected 2^" +
                                std::to_string(total));
  validate(c);
  const std::size_t full = state.size() - 1;
  for (const Gate& g : c.gates) {
    std::size_t cmask = 0, cval = 0;
    for (const auto& ctl : g.controls) {
      cmask |= std::size_t{1} << ctl.qubit;
      if (ctl.on) cval |= std::size_t{1} << ctl.qubit;
    }
    const std::size_t tbit = std::size_t{1} << g.targets[0];
    if (g.kind == GateKind::U1) {
      const cplx ph = std::polar(1.0, g.angle);
      for_each_index(full, cmask | tbit, cval | tbit, [&](std::size_t i) { state[i] *= ph; });
    } else if (g.kind == GateKind::SWAP) {
      const std::size_t ubit = std::size_t{1} << g.targets[1];
      for_each_index(full, cmask | tbit | ubit, cval | tbit,
                     [&](std::size_t i) { std::swap(state[i], state[i ^ tbit ^ ubit]); });
    } else {
      const Mat2 m = matrix_of(g);
      for_each_index(full, cmask | tbit, cval, [&](std::size_t i) {
        const cplx a0 = state[i], a1 = state[i | tbit];
        state[i] = m[0] * a0 + m[1] * a1;
        state[i | tbit] = m[2] * a0 + m[3] * a1;
      });
    }
  }
}

StateVector embed(const Wavefunction& psi, const QubitLayout& layout) {
  if (psi.grid.n != layout.n || psi.grid.d != layout.d) throw std::invalid_argument("embed: grid/layout mismatch");
  StateVector s(std::size_t{1} << layout.total_qubits(), 0.0);
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), s.begin());
  return s;
}

Wavefunction extract(const StateVector& state, const QubitLayout& layout, const GridSpec& g, unsigned ancilla_bits,
                     Space space) {
  if (g.n != layout.n || g.d != layout.d) throw std::invalid_argument("extract: grid/layout mismatch");
  if (state.size() != (std::size_t{1} << layout.total_qubits())) throw std::invalid_argument("extract: size mismatch");
  const int n_anc = layout.total_qubits() - layout.system_qubits();
  if (ancilla_bits >> n_anc) throw std::invalid_argument("extract: ancilla bits out of range");
  Wavefunction out(g, space);
  const std::size_t offset = static_cast<std::size_t>(ancilla_bits) << layout.system_qubits();
  for (std::size_t i = 0; i < g.size(); ++i) out.amplitudes[i] = state[offset + i];
  return out;
}

ResourceReport resource_report(const ForceField& ff, const GridSpec& g, const ResourceConfig& config) {
  if (ff.n_modes != g.d) throw std::invalid_argument("resource_report: mode count mismatch");
  if (config.n_t < 1) throw std::invalid_argument("resource_report: n_t must be positive");
  const QubitLayout layout = make_layout(g);
  ResourceReport r;
  r.n = g.n;
  r.modes = g.d;
  r.qubits = layout.total_qubits();
  r.n_t = config.n_t;

  for (IndexCase ic : all_index_cases()) r.rows.push_back({"elementary", case_label(ic), gate_depth(ic, g.n)});

  r.state_prep = state_prep_depth(g.n) * g.d;
  r.rows.push_back({"state_prep", "per register", state_prep_depth(g.n)});
  r.rows.push_back({"state_prep", "total", r.state_prep});

  for (char axis : config.axes) {
    const auto groups = group_polynomial(dipole_table(ff, axis, config.dipole_order), g);
    const Circuit one = build_grouped_phase(groups, 1.0, layout, "dipole");
    const std::string sec = std::string("dipole ") + axis;
    for (const auto& e : one.ledger) r.rows.push_back({sec, e.label, e.count});
    r.rows.push_back({sec, "total (one exponential)", one.counted_depth()});
    r.rows.push_back({sec, "total (both exponentials)", 2 * one.counted_depth()});
    r.dipole.push_back({axis, 2 * one.counted_depth()});
  }

  const Circuit step = build_timestep_circuit(ff, g, 1.0);
  for (const auto& e : step.ledger)
    if (e.block == "U_V") r.rows.push_back({"U_V", e.label, e.count});
  r.u_v = step.block_depth("U_V");
  r.u_k = step.block_depth("U_K") / 2;
  r.qft = step.block_depth("QFT");
  r.step = step.counted_depth();
  r.rows.push_back({"U_V", "total", r.u_v});
  r.rows.push_back({"step", "U_K (all registers)", r.u_k});
  r.rows.push_back({"step", "QFT (all registers)", r.qft});
  r.rows.push_back({"step", "QFT^-1 (all registers)", step.block_depth("QFT^-1")});
  r.rows.push_back({"step", "U_V", r.u_v});
  r.rows.push_back({"step", "total", r.step});

  long dipole_max = 0;
  for (const auto& [axis, count] : r.dipole) dipole_max = std::max(dipole_max, count);
  r.evolution_total = static_cast<double>(r.step) * static_cast<double>(config.n_t);
  r.total = r.evolution_total + static_cast<double>(r.state_prep + dipole_max);
  return r;
}

}  // namespace soqft
