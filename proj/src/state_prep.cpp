#include "soqft/state_prep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "soqft/hamiltonian.hpp"
#include "soqft/units.hpp"

namespace soqft {

std::vector<double> harmonic_mode_amplitudes(const GridSpec& g) {
  std::vector<double> a(g.points_per_mode());
  double s = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    double q = g.coordinate(x);
    a[x] = std::exp(-0.5 * q * q);
    s += a[x] * a[x];
  }
  for (auto& v : a) v /= std::sqrt(s);
  return a;
}

Wavefunction harmonic_ground_state(const GridSpec& g) {
  const auto mode = harmonic_mode_amplitudes(g);
  Wavefunction psi(g);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    double v = 1.0;
    for (int r = 0; r < g.d; ++r) v *= mode[g.digit(flat, r)];
    psi.amplitudes[flat] = v;
  }
  psi.normalize();
  return psi;
}

IteResult imaginary_time_evolve(const ForceField& ff, const GridSpec& g, const IteOptions& opt) {
  if (!(opt.dtau > 0.0)) throw std::invalid_argument("imaginary_time_evolve: dtau must be positive");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("imaginary_time_evolve: tol must be positive");
  const DiagonalOperator V = potential_on_grid(ff, g);
  const auto kin = kinetic_energy_fft_order(ff.omega, g);
  const std::size_t size = g.size();
  const double inv_size = 1.0 / static_cast<double>(size);

  std::vector<double> decay_v(size), decay_k_half(size);
  for (std::size_t i = 0; i < size; ++i) {
    decay_v[i] = std::exp(-units::two_pi_c * V.values[i] * opt.dtau);
    decay_k_half[i] = std::exp(-units::two_pi_c * kin[i] * 0.5 * opt.dtau) * inv_size;
  }

  IteResult res;
  res.state = harmonic_ground_state(g);
  GridFft fft(g);
  cplx* buf = fft.data();
  auto& amp = res.state.amplitudes;
  double e_prev = expectation_energy(res.state, ff.omega, V);
  res.energies.push_back(e_prev);
  int rising = 0;

  for (long it = 1; it <= opt.max_iterations; ++it) {
    for (std::size_t i = 0; i < size; ++i) buf[i] = amp[i];
    fft.forward();
    for (std::size_t i = 0; i < size; ++i) buf[i] *= decay_k_half[i];
    fft.backward();
    for (std::size_t i = 0; i < size; ++i) buf[i] *= decay_v[i];
    fft.forward();
    for (std::size_t i = 0; i < size; ++i) buf[i] *= decay_k_half[i];
    fft.backward();
    for (std::size_t i = 0; i < size; ++i) amp[i] = buf[i];
    res.state.normalize();
    if (!res.state.is_finite()) throw std::runtime_error("imaginary_time_evolve: non-finite state at iteration " + std::to_string(it));

    const double e = expectation_energy(res.state, ff.omega, V);
    res.energies.push_back(e);
    res.iterations = it;
    if (std::abs(e - e_prev) < opt.tol) {
      res.converged = true;
      res.E0 = e;
      return res;
    }
    rising = e > e_prev + 1e-10 ? rising + 1 : 0;
    if (rising >= 20)
      throw std::runtime_error("imaginary_time_evolve: energy increased for 20 consecutive iterations (divergence)");
    e_prev = e;
  }
  throw std::runtime_error("imaginary_time_evolve: no convergence after " + std::to_string(opt.max_iterations) +
                           " iterations");
}

UcrAngles ucr_angles(const std::vector<double>& amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || (size & (size - 1)) != 0) throw std::invalid_argument("ucr_angles: length must be a power of two");
  double nrm = 0.0;
  for (double a : amplitudes) {
    if (!(a >= 0.0)) throw std::invalid_argument("ucr_angles: amplitudes must be non-negative");
    nrm += a * a;
  }
  if (std::abs(nrm - 1.0) > 1e-10) throw std::invalid_argument("ucr_angles: amplitudes must be normalized");

  UcrAngles out;
  while ((std::size_t{1} << out.n) < size) ++out.n;
  // weight[l][j]: probability mass of the 2^(n-l) entries sharing prefix j.
  std::vector<std::vector<double>> weight(out.n + 1);
  weight[out.n].resize(size);
  for (std::size_t x = 0; x < size; ++x) weight[out.n][x] = amplitudes[x] * amplitudes[x];
  for (int l = out.n - 1; l >= 0; --l) {
    weight[l].resize(std::size_t{1} << l);
    for (std::size_t j = 0; j < weight[l].size(); ++j) weight[l][j] = weight[l + 1][2 * j] + weight[l + 1][2 * j + 1];
  }
  for (int l = 0; l < out.n; ++l) {
    std::vector<double> level(std::size_t{1} << l);
    for (std::size_t j = 0; j < level.size(); ++j)
      level[j] = 2.0 * std::atan2(std::sqrt(weight[l + 1][2 * j + 1]), std::sqrt(weight[l + 1][2 * j]));
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace soqft
