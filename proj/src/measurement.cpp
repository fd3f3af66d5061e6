#include "soqft/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace soqft {

namespace {

struct BranchProbabilities {
  double re_p0;
  double im_p0;
};

BranchProbabilities branch_probabilities(cplx z) {
  return {std::clamp(0.5 * (1.0 + z.real()), 0.0, 1.0), std::clamp(0.5 * (1.0 - z.imag()), 0.0, 1.0)};
}

}  // namespace

cplx hadamard_exact(const Wavefunction& ref, const Wavefunction& evolved, double norm_mu_sq) {
  const cplx z = inner_product(ref, evolved);
  // Probabilities are kept unclamped so the identity with the overlap is exact.
  const double re_p0 = 0.5 * (1.0 + z.real());
  const double im_p0 = 0.5 * (1.0 - z.imag());
  const double re = re_p0 - (1.0 - re_p0);
  const double im = (1.0 - im_p0) - im_p0;
  return cplx(re, im) * norm_mu_sq;
}

SampledEstimate sample_overlap(cplx z, double norm_mu_sq, long shots, std::uint64_t seed, std::uint64_t stream) {
  if (shots < 1) throw std::invalid_argument("sample_overlap: shots must be at least 1");
  const auto p = branch_probabilities(z);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::binomial_distribution<long> re_draw(shots, p.re_p0);
  std::binomial_distribution<long> im_draw(shots, p.im_p0);
  const double f_re = static_cast<double>(re_draw(rng)) / static_cast<double>(shots);
  const double f_im = static_cast<double>(im_draw(rng)) / static_cast<double>(shots);
  const double re = 2.0 * f_re - 1.0;
  const double im = 1.0 - 2.0 * f_im;
  SampledEstimate out;
  out.value = cplx(re, im) * norm_mu_sq;
  out.std_error_re = 2.0 * std::sqrt(f_re * (1.0 - f_re) / static_cast<double>(shots)) * norm_mu_sq;
  out.std_error_im = 2.0 * std::sqrt(f_im * (1.0 - f_im) / static_cast<double>(shots)) * norm_mu_sq;
  return out;
}

SampledEstimate hadamard_sampled(const Wavefunction& ref, const Wavefunction& evolved, double norm_mu_sq,
                                 long shots, std::uint64_t seed) {
  return sample_overlap(inner_product(ref, evolved), norm_mu_sq, shots, seed, 0);
}

}  // namespace soqft
