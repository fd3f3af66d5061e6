#include "soqft/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace soqft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Half-range transform sum_j w_j a_j exp(+2 pi i j m / M) for all m.
std::vector<cplx> backward_dft(const std::vector<cplx>& input) {
  const int M = static_cast<int>(input.size());
  auto* buf = fftw_alloc_complex(M);
  if (!buf) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(M, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (int i = 0; i < M; ++i) {
    buf[i][0] = input[i].real();
    buf[i][1] = input[i].imag();
  }
  fftw_execute(plan);
  std::vector<cplx> out(M);
  for (int i = 0; i < M; ++i) out[i] = cplx(buf[i][0], buf[i][1]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

std::vector<std::size_t> window_indices(const Spectrum& spec, const Window& w, bool native_only) {
  if (!(w.hi > w.lo)) throw std::invalid_argument("spectrum window must satisfy lo < hi");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < spec.energies.size(); ++i)
    if (spec.energies[i] >= w.lo && spec.energies[i] <= w.hi && (!native_only || spec.is_native(i)))
      idx.push_back(i);
  return idx;
}

}  // namespace

AutocorrelationSeries damp(const AutocorrelationSeries& series) {
  AutocorrelationSeries out = series;
  const double T = series.total_time();
  if (!(T > 0.0)) throw std::invalid_argument("damp: series must span a positive time");
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    const double c = std::cos(0.5 * std::numbers::pi * out.times[j] / T);
    out.values[j] *= c * c;
  }
  out.values.back() = 0.0;
  return out;
}

Spectrum cross_section(const std::vector<AutocorrelationSeries>& series, const SpectrumOptions& opt) {
  if (series.empty()) throw std::invalid_argument("cross_section: no autocorrelation series");
  if (opt.pad < 1) throw std::invalid_argument("cross_section: pad must be >= 1");
  const auto& first = series.front();
  const std::size_t n_points = first.times.size();
  if (n_points < 3) throw std::invalid_argument("cross_section: need at least 3 time samples");
  const double dt = first.time_step();
  const std::size_t n_int = n_points - 1;
  for (const auto& s : series) {
    if (s.times.size() != n_points || s.values.size() != n_points)
      throw std::invalid_argument("cross_section: series lengths differ");
    if (std::isnan(s.E0)) throw std::invalid_argument("cross_section: series for axis '" + std::string(1, s.axis) +
                                                      "' has no ground-state energy E0");
    for (std::size_t j = 0; j < n_points; ++j)
      if (std::abs(s.times[j] - static_cast<double>(j) * dt) > 1e-9 * std::max(1.0, s.times[j]))
        throw std::invalid_argument("cross_section: time grid must be uniform and shared");
  }

  const std::size_t M = static_cast<std::size_t>(opt.pad) * n_int;
  const double c = units::c_cm_per_fs;
  Spectrum spec;
  spec.pad = opt.pad;
  spec.spacing = 1.0 / (c * dt * static_cast<double>(M));
  spec.native_spacing = 1.0 / (c * dt * static_cast<double>(n_int));
  spec.resolution = 1.0 / (2.0 * c * first.total_time());
  spec.constants = opt.constants;

  const std::size_t nyquist = M / 2;
  const auto m_lo = static_cast<std::size_t>(std::ceil(std::max(0.0, opt.e_min) / spec.spacing));
  const auto m_hi = std::min(nyquist, static_cast<std::size_t>(std::floor(opt.e_max / spec.spacing)));
  if (m_hi <= m_lo) throw std::invalid_argument("cross_section: empty energy range");
  spec.first_index = m_lo;
  for (std::size_t m = m_lo; m <= m_hi; ++m) spec.energies.push_back(static_cast<double>(m) * spec.spacing);
  spec.sigma.assign(spec.energies.size(), 0.0);

  for (const auto& s : series) {
    std::vector<cplx> in(M, 0.0);
    for (std::size_t j = 0; j < n_points; ++j) {
      const double w = (j == 0 || j == n_int) ? 0.5 : 1.0;
      const cplx carrier = std::polar(1.0, units::two_pi_c * s.E0 * s.times[j]);
      in[j % M] += w * s.values[j] * carrier;
    }
    const auto out = backward_dft(in);
    std::vector<double> sig(spec.energies.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const double S = out[m_lo + i].real() * dt;  // debye^2 fs
      sig[i] = opt.constants.integrated_cross_section_per_debye2(spec.energies[i]) * 2.0 * c * S;
      spec.sigma[i] += sig[i];
    }
    spec.axes.push_back(s.axis);
    spec.sigma_axis.push_back(std::move(sig));
  }
  return spec;
}

CentroidResult centroid(const Spectrum& spec, const Window& w) {
  const auto idx = window_indices(spec, w, false);
  if (idx.empty()) throw std::invalid_argument("centroid: window contains no samples");
  double sw = 0.0, swe = 0.0;
  for (auto i : idx) {
    sw += spec.sigma[i];
    swe += spec.sigma[i] * spec.energies[i];
  }
  if (!(sw > 0.0)) throw std::invalid_argument("centroid: window has non-positive total cross section");
  CentroidResult r;
  r.n_points = idx.size();
  r.centroid = swe / sw;
  if (idx.size() == 1) return r;
  double var = 0.0;
  for (auto i : idx) var += spec.sigma[i] * (spec.energies[i] - r.centroid) * (spec.energies[i] - r.centroid);
  var = std::max(0.0, var / sw);
  const double n = static_cast<double>(idx.size());
  boost::math::students_t dist(n - 1.0);
  r.ci95 = boost::math::quantile(dist, 0.975) * std::sqrt(var) / std::sqrt(n);
  return r;
}

double integrate_intensity(const Spectrum& spec, const Window& w) {
  const auto idx = window_indices(spec, w, true);
  if (idx.size() < 2) throw std::invalid_argument("integrate_intensity: window needs at least two native samples");
  double integral = 0.0;  // cm per molecule
  for (std::size_t k = 1; k < idx.size(); ++k)
    integral += 0.5 * (spec.sigma[idx[k - 1]] + spec.sigma[idx[k]]) * spec.native_spacing;
  return spec.constants.avogadro * integral * 1e-5;
}

BandReport band_report(const Spectrum& spec, const Window& w) {
  BandReport b;
  b.window = w;
  const auto c = centroid(spec, w);
  b.centroid = c.centroid;
  b.ci95 = c.ci95;
  b.n_points = c.n_points;
  b.intensity = integrate_intensity(spec, w);
  return b;
}

std::vector<Window> auto_window(const Spectrum& spec, double threshold) {
  const auto& s = spec.sigma;
  const std::size_t n = s.size();
  std::vector<Window> out;
  if (n < 3) return out;
  const double smax = *std::max_element(s.begin(), s.end());
  if (!(smax > 0.0)) return out;
  const double reach = 4.0 * spec.native_spacing;
  const auto half = static_cast<std::size_t>(std::ceil(reach / spec.spacing));

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(s[i] >= s[i - 1] && s[i] > s[i + 1] && s[i] >= threshold * smax)) continue;
    const std::size_t a = i > half ? i - half : 0;
    const std::size_t b = std::min(n - 1, i + half);
    const double local = *std::max_element(s.begin() + a, s.begin() + b + 1);
    if (s[i] >= 0.05 * local) peaks.push_back(i);
  }

  for (std::size_t k = 0; k < peaks.size(); ++k) {
    const std::size_t p = peaks[k];
    std::size_t lo = p > half ? p - half : 0;
    std::size_t hi = std::min(n - 1, p + half);
    if (k > 0) lo = std::max(lo, (peaks[k - 1] + p + 1) / 2);
    if (k + 1 < peaks.size()) hi = std::min(hi, (p + peaks[k + 1]) / 2);
    out.push_back({spec.energies[lo], spec.energies[hi]});
  }
  return out;
}

}  // namespace soqft
