#pragma once

#include <cstddef>
#include <vector>

#include "soqft/series.hpp"
#include "soqft/units.hpp"

namespace soqft {

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct SpectrumOptions {
  int pad = 4;           // zero-padding factor for the presentation grid
  double e_min = 0.0;    // cm^-1
  double e_max = 12000.0;
  units::ConstantsBundle constants{};
};

/// sigma(E) in cm^2 per molecule on a zero-padded FFT grid. Grid point i sits at
/// (first_index + i) * spacing; points with (first_index + i) % pad == 0 are
/// the native (unpadded) samples.
struct Spectrum {
  std::vector<double> energies;
  std::vector<char> axes;
  std::vector<std::vector<double>> sigma_axis;
  std::vector<double> sigma;
  int pad = 1;
  std::size_t first_index = 0;
  double spacing = 0.0;         // padded grid step, cm^-1
  double native_spacing = 0.0;  // 1 / (c dt n_intervals)
  double resolution = 0.0;      // 1 / (2 c T)
  units::ConstantsBundle constants{};

  bool is_native(std::size_t i) const { return (first_index + i) % static_cast<std::size_t>(pad) == 0; }
};

struct BandReport {
  Window window;
  double centroid = 0.0;
  double ci95 = 0.0;
  double intensity = 0.0;  // km/mol
  std::size_t n_points = 0;
};

struct CentroidResult {
  double centroid = 0.0;
  double ci95 = 0.0;
  std::size_t n_points = 0;
};

/// Multiplies A(t) by cos^2(pi t / 2T).
AutocorrelationSeries damp(const AutocorrelationSeries& series);

/// Half-range Fourier transform (trapezoid weights) with phase
/// exp(+i 2 pi c (E + E0) t), real part, times the line-strength prefactor.
/// All series must share one time grid; their spectra are summed.
Spectrum cross_section(const std::vector<AutocorrelationSeries>& series, const SpectrumOptions& opt = {});

/// Intensity-weighted mean over padded samples in the window; CI95 =
/// t(0.975, n-1) * s / sqrt(n) with the weighted standard deviation s.
CentroidResult centroid(const Spectrum& spec, const Window& w);

/// N_A * trapezoid integral of sigma over native samples in the window, km/mol.
double integrate_intensity(const Spectrum& spec, const Window& w);

BandReport band_report(const Spectrum& spec, const Window& w);

/// Peak detection: local maxima above threshold * max(sigma) that also reach
/// 5% of the largest value within four native spacings (rejects window
/// sidelobes). Each window extends four native spacings from its peak;
/// windows of neighbouring peaks that would overlap are split at the midpoint.
std::vector<Window> auto_window(const Spectrum& spec, double threshold = 1e-3);

}  // namespace soqft
