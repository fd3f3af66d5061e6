#pragma once

#include <cstddef>
#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft {

/// Dense column-major real matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  double& operator()(std::size_t i, std::size_t j) { return data[j * dim + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data[j * dim + i]; }
};

/// H = F^dagger K F + V on the full grid, built from explicit per-mode DFT
/// matrices (independent of the FFT path). The kinetic block is real for the
/// centered momentum set; a residual imaginary part is an error.
DenseMatrix dense_hamiltonian(const ForceField& ff, const GridSpec& g, std::size_t size_cap = 4096);

struct Eigenpairs {
  GridSpec grid;
  std::vector<double> values;  // ascending, cm^-1
  DenseMatrix vectors;         // column k is eigenvector k
};

Eigenpairs diagonalize(DenseMatrix H, const GridSpec& g);
Eigenpairs solve(const ForceField& ff, const GridSpec& g, std::size_t size_cap = 4096);

Wavefunction eigenstate(const Eigenpairs& eig, std::size_t k);

struct Stick {
  std::size_t state = 0;
  double energy = 0.0;    // E_k - E_0, cm^-1
  double strength = 0.0;  // |<k|mu|0>|^2, debye^2
};

/// Transitions out of the ground state with strength above `floor`.
std::vector<Stick> stick_spectrum(const Eigenpairs& eig, const ForceField& ff, char axis, int order,
                                  double floor = 1e-12);

/// Every |<k|mu|0>|^2 for k >= 0, without a floor (sum-rule checks).
std::vector<double> transition_strengths(const Eigenpairs& eig, const ForceField& ff, char axis, int order);

/// exp(-i 2 pi c H t) psi through the eigendecomposition.
Wavefunction evolve_exact(const Eigenpairs& eig, const Wavefunction& psi, double t);

}  // namespace soqft
