#include "soqft/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "soqft/hamiltonian.hpp"
#include "soqft/measurement.hpp"
#include "soqft/units.hpp"

namespace soqft {

void PropagationConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("propagation: T must be positive");
  if (n_t < 1) throw std::invalid_argument("propagation: n_t must be at least 1");
  if (record_every < 1) throw std::invalid_argument("propagation: record_every must be at least 1");
  if (n_t % record_every != 0) throw std::invalid_argument("propagation: record_every must divide n_t");
}

SplitOperatorPropagator::SplitOperatorPropagator(const ForceField& ff, const GridSpec& g, double dt,
                                                 Splitting splitting)
    : grid_(g), dt_(dt), splitting_(splitting), fft_(g) {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("propagator: dt must be finite and non-zero");
  const auto V = potential_on_grid(ff, g).values;
  const auto K = kinetic_energy_fft_order(ff.omega, g);
  const std::size_t size = g.size();
  const double inv_size = 1.0 / static_cast<double>(size);
  outer_half_.resize(size);
  outer_full_.resize(size);
  inner_.resize(size);
  const bool k_outer = splitting == Splitting::kinetic_half;
  const auto& A = k_outer ? K : V;
  const auto& B = k_outer ? V : K;
  // The 1/size of the unnormalized FFT pair is folded into the momentum phase.
  const double a_scale = k_outer ? inv_size : 1.0;
  const double b_scale = k_outer ? 1.0 : inv_size;
  for (std::size_t i = 0; i < size; ++i) {
    outer_half_[i] = std::polar(1.0, -units::two_pi_c * A[i] * 0.5 * dt);
    outer_full_[i] = std::polar(a_scale, -units::two_pi_c * A[i] * dt);
    inner_[i] = std::polar(b_scale, -units::two_pi_c * B[i] * dt);
  }
}

void SplitOperatorPropagator::evolve(Wavefunction& psi, long steps) {
  if (psi.space != Space::position || !(psi.grid == grid_))
    throw std::invalid_argument("propagator: need a position-space state on the propagator grid");
  if (steps <= 0) return;
  const std::size_t size = grid_.size();
  const double inv_size = 1.0 / static_cast<double>(size);
  cplx* buf = fft_.data();
  auto& amp = psi.amplitudes;
  if (splitting_ == Splitting::kinetic_half) {
    for (std::size_t i = 0; i < size; ++i) buf[i] = amp[i];
    fft_.forward();
    for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_half_[i] * inv_size;
    for (long s = 0; s < steps; ++s) {
      fft_.backward();
      for (std::size_t i = 0; i < size; ++i) buf[i] *= inner_[i];
      fft_.forward();
      if (s + 1 < steps)
        for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_full_[i];
    }
    for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_half_[i] * inv_size;
    fft_.backward();
    for (std::size_t i = 0; i < size; ++i) amp[i] = buf[i];
  } else {
    for (std::size_t i = 0; i < size; ++i) buf[i] = amp[i] * outer_half_[i];
    for (long s = 0; s < steps; ++s) {
      fft_.forward();
      for (std::size_t i = 0; i < size; ++i) buf[i] *= inner_[i];
      fft_.backward();
      if (s + 1 < steps)
        for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_full_[i];
    }
    for (std::size_t i = 0; i < size; ++i) amp[i] = buf[i] * outer_half_[i];
  }
}

AutocorrelationSeries SplitOperatorPropagator::autocorrelation(const Wavefunction& psi0, double norm_mu_sq, long n_t,
                                                               long record_every, const SamplingOptions& sampling) {
  if (psi0.space != Space::position || !(psi0.grid == grid_))
    throw std::invalid_argument("propagate: need a position-space state on the propagator grid");
  if (std::abs(psi0.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("propagate: initial state is not normalized");
  if (n_t < 1 || record_every < 1 || n_t % record_every != 0)
    throw std::invalid_argument("propagate: record_every must divide n_t");
  const std::size_t size = grid_.size();
  const double inv_size = 1.0 / static_cast<double>(size);
  const bool k_outer = splitting_ == Splitting::kinetic_half;
  cplx* buf = fft_.data();

  // Reference vector r such that sum conj(r_i) buf_i is the overlap of psi0
  // with the state obtained by completing the pending outer half-step.
  std::vector<cplx> ref(size);
  if (k_outer) {
    for (std::size_t i = 0; i < size; ++i) buf[i] = psi0.amplitudes[i];
    fft_.forward();
    for (std::size_t i = 0; i < size; ++i) ref[i] = buf[i] * std::conj(outer_half_[i]) * inv_size;
  } else {
    for (std::size_t i = 0; i < size; ++i) ref[i] = psi0.amplitudes[i] * std::conj(outer_half_[i]);
  }

  AutocorrelationSeries out;
  out.norm_mu_sq = norm_mu_sq;
  const std::size_t n_rec = static_cast<std::size_t>(n_t / record_every) + 1;
  out.times.reserve(n_rec);
  out.values.reserve(n_rec);
  auto record = [&](long s, cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::runtime_error("propagate: non-finite amplitude at step " + std::to_string(s));
    if (std::abs(z) > 1.0 + 1e-9)
      throw std::logic_error("propagate: |A(t)| exceeds A(0) at step " + std::to_string(s));
    const auto idx = out.values.size();
    out.times.push_back(static_cast<double>(s) * dt_);
    if (sampling.shots > 0) {
      auto est = sample_overlap(z, norm_mu_sq, sampling.shots, sampling.seed, idx);
      out.values.push_back(est.value);
      out.std_error_re.push_back(est.std_error_re);
      out.std_error_im.push_back(est.std_error_im);
    } else {
      out.values.push_back(z * norm_mu_sq);
    }
  };
  auto overlap = [&]() {
    cplx z = 0.0;
    for (std::size_t i = 0; i < size; ++i) z += std::conj(ref[i]) * buf[i];
    return z;
  };

  if (k_outer) {
    record(0, inner_product(psi0, psi0));
    for (std::size_t i = 0; i < size; ++i) buf[i] = psi0.amplitudes[i];
    fft_.forward();
    for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_half_[i] * inv_size;
    for (long s = 1; s <= n_t; ++s) {
      fft_.backward();
      for (std::size_t i = 0; i < size; ++i) buf[i] *= inner_[i];
      fft_.forward();
      if (s % record_every == 0) record(s, overlap());
      for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_full_[i];
    }
  } else {
    for (std::size_t i = 0; i < size; ++i) buf[i] = psi0.amplitudes[i];
    record(0, inner_product(psi0, psi0));
    for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_half_[i];
    for (long s = 1; s <= n_t; ++s) {
      fft_.forward();
      for (std::size_t i = 0; i < size; ++i) buf[i] *= inner_[i];
      fft_.backward();
      if (s % record_every == 0) record(s, overlap());
      for (std::size_t i = 0; i < size; ++i) buf[i] *= outer_full_[i];
    }
  }
  return out;
}

Wavefunction step(const Wavefunction& psi, const ForceField& ff, const GridSpec& g, double dt, Splitting splitting) {
  SplitOperatorPropagator prop(ff, g, dt, splitting);
  Wavefunction out = psi;
  prop.evolve(out, 1);
  return out;
}

AutocorrelationSeries propagate(const Wavefunction& psi0_mu, double norm_mu_sq, double E0, char axis,
                                const PropagationConfig& config, const ForceField& ff, const GridSpec& g,
                                const SamplingOptions& sampling) {
  config.validate();
  SplitOperatorPropagator prop(ff, g, config.dt(), config.splitting);
  auto series = prop.autocorrelation(psi0_mu, norm_mu_sq, config.n_t, config.record_every, sampling);
  series.axis = axis;
  series.E0 = E0;
  return series;
}

double compare_splittings(const Wavefunction& psi0_mu, double norm_mu_sq, double E0, char axis,
                          const PropagationConfig& config, const ForceField& ff, const GridSpec& g,
                          const SpectrumOptions& spectrum_options, double threshold) {
  PropagationConfig k_cfg = config, v_cfg = config;
  k_cfg.splitting = Splitting::kinetic_half;
  v_cfg.splitting = Splitting::potential_half;
  const auto spec_k = cross_section({damp(propagate(psi0_mu, norm_mu_sq, E0, axis, k_cfg, ff, g))}, spectrum_options);
  const auto spec_v = cross_section({damp(propagate(psi0_mu, norm_mu_sq, E0, axis, v_cfg, ff, g))}, spectrum_options);
  const auto windows = auto_window(spec_k, threshold);
  if (windows.empty()) throw std::runtime_error("compare_splittings: no bands detected");
  double worst = 0.0;
  for (const auto& w : windows)
    worst = std::max(worst, std::abs(centroid(spec_k, w).centroid - centroid(spec_v, w).centroid));
  return worst;
}

}  // namespace soqft
