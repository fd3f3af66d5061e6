#pragma once

#include <numbers>

namespace soqft::units {

/// Speed of light in cm/fs; every evolution phase is 2 pi c E[cm^-1] t[fs].
inline constexpr double c_cm_per_fs = 2.99792458e-5;
inline constexpr double two_pi_c = 2.0 * std::numbers::pi * c_cm_per_fs;

/// SI constants used by the cross-section and intensity conversions.
struct ConstantsBundle {
  double c_cm_per_s = 2.99792458e10;
  double avogadro = 6.02214076e23;
  double epsilon0 = 8.8541878128e-12;
  double hbar = 1.054571817e-34;
  double debye = 3.33564e-30;

  /// Integrated cross section (cm per molecule) of a line at nu [cm^-1] with
  /// squared transition dipole 1 D^2: pi nu |mu|^2 / (3 eps0 hbar c).
  double integrated_cross_section_per_debye2(double nu) const {
    const double c_si = c_cm_per_s * 1e-2;
    const double nu_si = nu * 1e2;
    return 1e2 * std::numbers::pi * nu_si * debye * debye / (3.0 * epsilon0 * hbar * c_si);
  }
  /// Integrated band intensity in km/mol for a stick at nu with strength mu2 [D^2].
  double stick_intensity_km_per_mol(double nu, double mu2) const {
    return avogadro * integrated_cross_section_per_debye2(nu) * mu2 * 1e-5;
  }
};

}  // namespace soqft::units
