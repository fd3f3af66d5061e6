#pragma once

#include <string>
#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft {

/// Register layout. Mode r bit j (bit j of the grid index x_r, j = 0 least
/// significant) lives on global qubit n*(d-1-r) + j, so the system part of a
/// basis index equals the flattened grid index. Ancillas follow the system:
/// dipole, two decomposition ancillas, Hadamard-test ancilla.
struct QubitLayout {
  int n = 0;
  int d = 0;
  bool with_ancillas = true;

  int system_qubits() const { return n * d; }
  int total_qubits() const { return n * d + (with_ancillas ? 4 : 0); }
  int qubit(int mode, int bit) const { return n * (d - 1 - mode) + bit; }
  int dipole_ancilla() const;
  int decomposition_ancilla(int k) const;
  int hadamard_ancilla() const;

  bool operator==(const QubitLayout&) const = default;
};

QubitLayout make_layout(const GridSpec& g, bool with_ancillas = true);

enum class GateKind { U1, X, H, Ry, Rz, W, Wdag, SWAP, SX, SXdg };

/// `on == false` is an anti-control (active on |0>).
struct Control {
  int qubit = 0;
  bool on = true;
  bool operator==(const Control&) const = default;
};

/// U1(t) = diag(1, e^{it}); Rz(t) = diag(e^{-it/2}, e^{it/2});
/// Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]; W = [[1, -i], [1, i]]/sqrt 2;
/// SX = sqrt(X). SWAP takes two targets, every other kind one.
struct Gate {
  GateKind kind = GateKind::U1;
  std::vector<int> targets;
  std::vector<Control> controls;
  double angle = 0.0;
};

/// Counted cost of one block row; counted depth is the number of gate
/// applications after multi-control decomposition, not parallel layers.
struct LedgerEntry {
  std::string block;
  std::string label;
  long count = 0;
};

struct Circuit {
  QubitLayout layout;
  std::vector<Gate> gates;
  std::vector<LedgerEntry> ledger;

  void append(const Circuit& other);
  long counted_depth() const;
  long block_depth(const std::string& block) const;
};

/// Throws std::invalid_argument on out-of-range or repeated operands,
/// a wrong target count or a non-finite angle.
void validate(const Circuit& c);

/// Ordered-tuple expansion of exp(i b x_{i1} x_{i2} ...) over the register
/// bits: each tuple of bit positions yields one U1 with angle b 2^{sum of
/// positions} on the distinct qubits it touches (the last one is the target).
/// An empty index list gives the global phase e^{ib} as U1 X U1 X.
Circuit build_phase_polynomial(const IndexKey& indices, double b, const QubitLayout& layout,
                               const std::string& block = "phase");

/// Replaces every gate with two controls by five two-qubit gates and every gate
/// with three controls by 21 two-qubit gates through the two decomposition
/// ancillas (which are returned to |0>). Supported multi-controlled kinds are U1
/// and X. The ledger is kept.
Circuit decompose_multicontrolled(const Circuit& c);

/// Monomial classes with their closed-form counted depth.
enum class IndexCase { u0, i, ii, ij, iii, iik, ijk, iiii, iiil, iikk, iikl, ijkl };

std::vector<IndexCase> all_index_cases();
std::string case_label(IndexCase c);
/// Representative sorted mode list, e.g. iik -> {0, 0, 1}.
IndexKey case_indices(IndexCase c);
/// Number of distinct modes the case needs.
int case_modes(IndexCase c);
IndexCase classify(const IndexKey& indices);

/// Closed-form counted depth for n qubits per register (n >= 2).
long gate_depth(IndexCase c, int n);
/// Measured depth: number of gates after decompose_multicontrolled.
long gate_depth(const Circuit& c);
/// Cost contribution of a single gate once decomposed (1, 5 or 21).
long gate_cost(const Gate& g);

/// Polynomial sum_k c_k prod_{i in key_k} Q_i rewritten on register values
/// Q = -L/2 + x dQ and collected by sorted register multiset. Every multiset
/// reachable from a monomial is kept, including those whose coefficient cancels.
struct PhaseGroup {
  IndexKey registers;
  double coefficient = 0.0;
};
std::vector<PhaseGroup> group_polynomial(const CoefficientTable& table, const GridSpec& g);

/// Grouped phase circuit exp(i scale sum_groups coefficient x...). Ledger rows
/// are one per polynomial order, labelled with 1-based mode indices.
Circuit build_grouped_phase(const std::vector<PhaseGroup>& groups, double scale, const QubitLayout& layout,
                            const std::string& block);

/// All quadratic, cubic and quartic potential terms in one table.
CoefficientTable potential_table(const ForceField& ff);
/// Dipole monomials of order <= order.
CoefficientTable dipole_table(const ForceField& ff, char axis, int order);

/// Centered transform on one register: inverse == false maps position |x> to
/// N^{-1/2} sum_k exp(-2 pi i (k - N/2) x / N) |k>, the same convention as
/// fourier_transform. Built as the conjugated textbook QFT with H on the least
/// significant qubit replaced by Ry(pi/2) (which absorbs the (-1)^x centering
/// phase) followed by bit-reversal SWAPs; cost n + n(n-1)/2 + floor(n/2).
Circuit build_qft(int mode, bool inverse, const QubitLayout& layout);
long qft_depth(int n);

/// Uniformly controlled Ry cascade (Gray-code CNOT form) preparing a real
/// non-negative amplitude vector on one register from |0...0>. Counted depth
/// 2^{n+1} - 3.
Circuit build_state_prep(const std::vector<double>& amplitudes, int mode, const QubitLayout& layout);
long state_prep_depth(int n);

/// Largest permitted ||mu / beta||_inf for the Taylor-angle dipole circuit.
inline constexpr double max_scaled_dipole = 0.25;

/// Ancilla encoding of mu/beta: H, W on the dipole ancilla, anti-controlled
/// exp(i theta1) and controlled exp(-i theta1) with theta1 = -mu/beta, then
/// Rz(2 theta0) with theta0 = pi/4 and W^dagger. The ancilla-|0> branch carries
/// -sin(mu/beta) psi. Ledger counts each exponential without its ancilla
/// control.
Circuit build_dipole_circuit(const ForceField& ff, const GridSpec& g, char axis, int order, double beta);

/// Kinetic phase exp(-i 2 pi c dt_eff (omega/2) p^2) on a register holding
/// the centered momentum label k, p = (2 pi / L)(k - N/2). Cost n^2 + n + 4.
Circuit build_kinetic(const ForceField& ff, const GridSpec& g, int mode, double dt_eff, const QubitLayout& layout);

/// One kinetic-half second-order step acting on the momentum-space (centered)
/// representation: U_K(dt/2), inverse transform, U_V(dt), transform, U_K(dt/2).
Circuit build_timestep_circuit(const ForceField& ff, const GridSpec& g, double dt);

using StateVector = std::vector<cplx>;

/// Exact gate-by-gate application. Throws on dimension mismatch.
void execute(const Circuit& c, StateVector& state);

/// System amplitudes placed in the all-ancillas-zero sector.
StateVector embed(const Wavefunction& psi, const QubitLayout& layout);
/// Unnormalized system amplitudes of the sector with the given ancilla bits
/// (ancilla_bits bit k = value of the k-th ancilla).
Wavefunction extract(const StateVector& state, const QubitLayout& layout, const GridSpec& g, unsigned ancilla_bits,
                     Space space = Space::position);

struct ResourceConfig {
  long n_t = 60000;
  int dipole_order = 3;
  std::vector<char> axes{'x', 'z'};
};

struct ResourceRow {
  std::string section;
  std::string label;
  long count = 0;
};

struct ResourceReport {
  int n = 0;
  int modes = 0;
  int qubits = 0;
  std::vector<ResourceRow> rows;
  long state_prep = 0;
  /// Per axis, both exponentials.
  std::vector<std::pair<char, long>> dipole;
  long u_v = 0;
  long u_k = 0;
  long qft = 0;
  long step = 0;
  long n_t = 0;
  double evolution_total = 0.0;
  double total = 0.0;
};

ResourceReport resource_report(const ForceField& ff, const GridSpec& g, const ResourceConfig& config = {});

}  // namespace soqft
