#pragma once

#include <limits>
#include <vector>

#include "soqft/grid.hpp"

namespace soqft {

/// A(t) = <mu psi0| exp(-iHt) |mu psi0> sampled on a uniform time grid (fs),
/// denormalized by ||mu psi0||^2. Energies in cm^-1.
struct AutocorrelationSeries {
  char axis = '?';
  double norm_mu_sq = 1.0;
  double E0 = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> times;
  std::vector<cplx> values;
  /// Present only for finite-shot records.
  std::vector<double> std_error_re;
  std::vector<double> std_error_im;

  double total_time() const { return times.empty() ? 0.0 : times.back(); }
  double time_step() const { return times.size() < 2 ? 0.0 : times[1] - times[0]; }
};

}  // namespace soqft
