#pragma once

#include <cstdint>
#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"
#include "soqft/series.hpp"
#include "soqft/spectrum.hpp"

namespace soqft {

enum class Splitting { kinetic_half, potential_half };

struct PropagationConfig {
  double T = 0.0;  // fs
  long n_t = 0;
  Splitting splitting = Splitting::kinetic_half;
  long record_every = 1;

  double dt() const { return T / static_cast<double>(n_t); }
  void validate() const;
};

/// Finite-shot Hadamard readout; shots == 0 records exact overlaps.
struct SamplingOptions {
  long shots = 0;
  std::uint64_t seed = 0;
};

/// Second-order split-operator stepper on the full grid. Phases are
/// precomputed for one time step; consecutive steps merge their outer
/// half-steps.
class SplitOperatorPropagator {
 public:
  SplitOperatorPropagator(const ForceField& ff, const GridSpec& g, double dt, Splitting splitting);

  /// Advances a position-space state by `steps` full steps.
  void evolve(Wavefunction& psi, long steps);

  /// Records <psi0|psi(t)> * norm_mu_sq every record_every steps up to n_t.
  AutocorrelationSeries autocorrelation(const Wavefunction& psi0, double norm_mu_sq, long n_t, long record_every,
                                        const SamplingOptions& sampling = {});

 private:
  GridSpec grid_;
  double dt_;
  Splitting splitting_;
  std::vector<cplx> outer_half_;  // outer half-step phase (K in FFT order or V)
  std::vector<cplx> outer_full_;
  std::vector<cplx> inner_;       // inner full-step phase
  GridFft fft_;
};

/// One symmetric step exp(-iA dt/2) exp(-iB dt) exp(-iA dt/2); dt may be negative.
Wavefunction step(const Wavefunction& psi, const ForceField& ff, const GridSpec& g, double dt, Splitting splitting);

AutocorrelationSeries propagate(const Wavefunction& psi0_mu, double norm_mu_sq, double E0, char axis,
                                const PropagationConfig& config, const ForceField& ff, const GridSpec& g,
                                const SamplingOptions& sampling = {});

/// Runs both splittings through damping, cross section and band windows
/// (auto-detected on the kinetic-half spectrum) and returns the largest
/// absolute centroid difference in cm^-1.
double compare_splittings(const Wavefunction& psi0_mu, double norm_mu_sq, double E0, char axis,
                          const PropagationConfig& config, const ForceField& ff, const GridSpec& g,
                          const SpectrumOptions& spectrum_options = {}, double threshold = 1e-3);

}  // namespace soqft
