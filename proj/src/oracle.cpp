#include "soqft/oracle.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "soqft/hamiltonian.hpp"
#include "soqft/units.hpp"

namespace soqft {

namespace {

// T(x, x') = sum_k conj(F(k,x)) K(k) F(k,x'), F(k,x) = N^-1/2 exp(-2 pi i (k - N/2) x / N).
std::vector<double> kinetic_block(const GridSpec& g, const std::vector<double>& K, double& max_imag) {
  const std::size_t N = g.points_per_mode();
  std::vector<double> T(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        const double f = static_cast<double>(k) - 0.5 * static_cast<double>(N);
        const double phase = 2.0 * std::numbers::pi * f * (static_cast<double>(x) - static_cast<double>(y)) /
                             static_cast<double>(N);
        s += K[k] * std::polar(1.0, phase);
      }
      s /= static_cast<double>(N);
      max_imag = std::max(max_imag, std::abs(s.imag()));
      T[x * N + y] = s.real();
    }
  return T;
}

}  // namespace

DenseMatrix dense_hamiltonian(const ForceField& ff, const GridSpec& g, std::size_t size_cap) {
  const std::size_t dim = g.size();
  if (dim > size_cap)
    throw std::invalid_argument("dense_hamiltonian: grid size " + std::to_string(dim) + " exceeds cap " +
                                std::to_string(size_cap));
  const auto V = potential_on_grid(ff, g);
  const auto K = kinetic_on_grid(ff.omega, g);
  const std::size_t N = g.points_per_mode();
  double max_imag = 0.0, max_k = 0.0;
  std::vector<std::vector<double>> blocks;
  for (int r = 0; r < g.d; ++r) {
    blocks.push_back(kinetic_block(g, K.per_mode[r], max_imag));
    for (double v : K.per_mode[r]) max_k = std::max(max_k, v);
  }
  if (max_imag > 1e-10 * std::max(1.0, max_k))
    throw std::logic_error("dense_hamiltonian: kinetic block is not real");

  DenseMatrix H{dim, std::vector<double>(dim * dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    H(i, i) += V.values[i];
    for (int r = 0; r < g.d; ++r) {
      const std::size_t stride = g.stride(r);
      const std::size_t xi = g.digit(i, r);
      const std::size_t base = i - xi * stride;
      for (std::size_t y = 0; y < N; ++y) H(i, base + y * stride) += blocks[r][xi * N + y];
    }
  }
  return H;
}

Eigenpairs diagonalize(DenseMatrix H, const GridSpec& g) {
  const auto n = static_cast<lapack_int>(H.dim);
  Eigenpairs eig;
  eig.grid = g;
  eig.values.resize(H.dim);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, H.data.data(), n, eig.values.data());
  if (info != 0) throw std::runtime_error("diagonalize: LAPACKE_dsyevd failed with info " + std::to_string(info));
  eig.vectors = std::move(H);
  return eig;
}

Eigenpairs solve(const ForceField& ff, const GridSpec& g, std::size_t size_cap) {
  return diagonalize(dense_hamiltonian(ff, g, size_cap), g);
}

Wavefunction eigenstate(const Eigenpairs& eig, std::size_t k) {
  if (k >= eig.values.size()) throw std::out_of_range("eigenstate: index out of range");
  Wavefunction psi(eig.grid);
  for (std::size_t i = 0; i < eig.vectors.dim; ++i) psi.amplitudes[i] = eig.vectors(i, k);
  return psi;
}

std::vector<double> transition_strengths(const Eigenpairs& eig, const ForceField& ff, char axis, int order) {
  const auto mu = dipole_on_grid(ff, eig.grid, axis, order);
  const std::size_t dim = eig.vectors.dim;
  std::vector<double> mu0(dim);
  for (std::size_t i = 0; i < dim; ++i) mu0[i] = mu.values[i] * eig.vectors(i, 0);
  std::vector<double> out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double* col = &eig.vectors.data[k * dim];
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += col[i] * mu0[i];
    out[k] = s * s;
  }
  return out;
}

std::vector<Stick> stick_spectrum(const Eigenpairs& eig, const ForceField& ff, char axis, int order, double floor) {
  const auto strengths = transition_strengths(eig, ff, axis, order);
  std::vector<Stick> out;
  for (std::size_t k = 1; k < strengths.size(); ++k)
    if (strengths[k] > floor) out.push_back({k, eig.values[k] - eig.values[0], strengths[k]});
  return out;
}

Wavefunction evolve_exact(const Eigenpairs& eig, const Wavefunction& psi, double t) {
  if (!(psi.grid == eig.grid) || psi.space != Space::position)
    throw std::invalid_argument("evolve_exact: need a position-space state on the oracle grid");
  const std::size_t dim = eig.vectors.dim;
  std::vector<cplx> coeff(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double* col = &eig.vectors.data[k * dim];
    cplx s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += col[i] * psi.amplitudes[i];
    coeff[k] = s * std::polar(1.0, -units::two_pi_c * eig.values[k] * t);
  }
  Wavefunction out(eig.grid);
  for (std::size_t k = 0; k < dim; ++k) {
    const double* col = &eig.vectors.data[k * dim];
    for (std::size_t i = 0; i < dim; ++i) out.amplitudes[i] += col[i] * coeff[k];
  }
  return out;
}

}  // namespace soqft
