#include "soqft/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "soqft/units.hpp"

namespace soqft {

void accumulate_monomial(std::vector<double>& values, const GridSpec& g, const IndexKey& key, double coeff) {
  if (values.size() != g.size()) throw std::invalid_argument("accumulate_monomial: size mismatch");
  if (coeff == 0.0) return;
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    double term = coeff;
    for (int mode : key) term *= g.coordinate(g.digit(flat, mode));
    values[flat] += term;
  }
}

DiagonalOperator potential_on_grid(const ForceField& ff, const GridSpec& g) {
  if (ff.n_modes != g.d)
    throw std::invalid_argument("potential_on_grid: force field has " + std::to_string(ff.n_modes) +
                                " modes, grid has " + std::to_string(g.d));
  DiagonalOperator V{g, std::vector<double>(g.size(), 0.0)};
  for (int i = 0; i < ff.n_modes; ++i) accumulate_monomial(V.values, g, {i, i}, 0.5 * ff.omega[i]);
  for (const auto& [k, v] : ff.cubic) accumulate_monomial(V.values, g, k, v);
  for (const auto& [k, v] : ff.quartic) accumulate_monomial(V.values, g, k, v);
  return V;
}

DiagonalOperator dipole_on_grid(const ForceField& ff, const GridSpec& g, char axis, int order) {
  if (!is_valid_axis(axis)) throw std::invalid_argument(std::string("dipole_on_grid: unknown axis '") + axis + "'");
  if (order < 1 || order > 3) throw std::invalid_argument("dipole_on_grid: truncation order must be 1, 2 or 3");
  if (ff.n_modes != g.d) throw std::invalid_argument("dipole_on_grid: mode count mismatch");
  DiagonalOperator mu{g, std::vector<double>(g.size(), 0.0)};
  for (const auto& [k, v] : ff.dipole_axis(axis))
    if (static_cast<int>(k.size()) <= order) accumulate_monomial(mu.values, g, k, v);
  return mu;
}

KineticDiagonal kinetic_on_grid(const std::vector<double>& omega, const GridSpec& g) {
  if (static_cast<int>(omega.size()) != g.d) throw std::invalid_argument("kinetic_on_grid: mode count mismatch");
  KineticDiagonal K{g, {}};
  for (int r = 0; r < g.d; ++r) {
    std::vector<double> row(g.points_per_mode());
    for (std::size_t k = 0; k < row.size(); ++k) {
      double p = g.momentum(k);
      row[k] = 0.5 * omega[r] * p * p;
    }
    K.per_mode.push_back(std::move(row));
  }
  return K;
}

KineticPhase kinetic_phase(const GridSpec& g, const std::vector<double>& omega, double dt, bool half) {
  const double dt_eff = half ? 0.5 * dt : dt;
  KineticDiagonal K = kinetic_on_grid(omega, g);
  KineticPhase out{g, {}};
  for (const auto& row : K.per_mode) {
    std::vector<cplx> ph(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) ph[k] = std::polar(1.0, -units::two_pi_c * row[k] * dt_eff);
    out.per_mode.push_back(std::move(ph));
  }
  return out;
}

std::vector<double> kinetic_energy_fft_order(const std::vector<double>& omega, const GridSpec& g) {
  if (static_cast<int>(omega.size()) != g.d) throw std::invalid_argument("kinetic energy: mode count mismatch");
  const long N = static_cast<long>(g.points_per_mode());
  std::vector<double> per_index(N);
  for (long j = 0; j < N; ++j) {
    long f = j < N / 2 ? j : j - N;
    double p = g.momentum_spacing() * static_cast<double>(f);
    per_index[j] = p * p;
  }
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    double e = 0.0;
    for (int r = 0; r < g.d; ++r) e += 0.5 * omega[r] * per_index[g.digit(flat, r)];
    out[flat] = e;
  }
  return out;
}

double expectation_energy(const Wavefunction& psi, const std::vector<double>& omega, const DiagonalOperator& V) {
  if (psi.space != Space::position) throw std::invalid_argument("expectation_energy: need a position-space state");
  if (!(psi.grid == V.grid)) throw std::invalid_argument("expectation_energy: grid mismatch");
  const double nrm = psi.norm_squared();
  if (std::abs(nrm - 1.0) > 1e-10) throw std::invalid_argument("expectation_energy: state is not normalized");
  double ev = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) ev += std::norm(psi.amplitudes[i]) * V.values[i];

  GridFft fft(psi.grid);
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) fft.data()[i] = psi.amplitudes[i];
  fft.forward();
  const auto kin = kinetic_energy_fft_order(omega, psi.grid);
  double ek = 0.0;
  for (std::size_t i = 0; i < kin.size(); ++i) ek += std::norm(fft.data()[i]) * kin[i];
  ek /= static_cast<double>(psi.grid.size());
  return ek + ev;
}

double expectation_energy(const Wavefunction& psi, const ForceField& ff) {
  return expectation_energy(psi, ff.omega, potential_on_grid(ff, psi.grid));
}

}  // namespace soqft
