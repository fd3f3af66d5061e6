#pragma once

#include <cstdint>

#include "soqft/grid.hpp"

namespace soqft {

struct SampledEstimate {
  cplx value;
  /// Binomial standard errors of the real and imaginary parts.
  double std_error_re = 0.0;
  double std_error_im = 0.0;
};

/// Ideal Hadamard test: Re from P(0)-P(1) of the plain branch, Im from
/// P(1)-P(0) of the phase-gate branch, scaled by norm_mu_sq.
cplx hadamard_exact(const Wavefunction& ref, const Wavefunction& evolved, double norm_mu_sq);

/// Finite-shot Hadamard test on a known normalized overlap z. The stream index
/// (e.g. the time index) selects an independent RNG stream under `seed`.
SampledEstimate sample_overlap(cplx z, double norm_mu_sq, long shots, std::uint64_t seed, std::uint64_t stream);

SampledEstimate hadamard_sampled(const Wavefunction& ref, const Wavefunction& evolved, double norm_mu_sq,
                                 long shots, std::uint64_t seed);

}  // namespace soqft
