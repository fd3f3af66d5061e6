#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace soqft {

/// Sorted mode-index tuple naming one Taylor monomial, e.g. {0,0,2} for Q0^2 Q2.
using IndexKey = std::vector<int>;
/// Each entry holds the total coefficient of its monomial (summed once per key).
using CoefficientTable = std::map<IndexKey, double>;

/// Taylor-expanded PES and dipole surface in dimensionless normal coordinates.
/// Energies are wavenumbers (cm^-1); dipole terms are debye.
struct ForceField {
  std::string name;
  int n_modes = 0;
  std::vector<double> omega;
  CoefficientTable cubic;
  CoefficientTable quartic;
  /// Axis ('x', 'y', 'z') -> monomials of order 1..3. Absent axis means zero.
  std::map<char, CoefficientTable> dipole;

  const CoefficientTable& dipole_axis(char axis) const;
  bool operator==(const ForceField&) const = default;
};

class ForceFieldError : public std::runtime_error {
 public:
  ForceFieldError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

struct Diagnostic {
  enum class Severity { warning, error };
  Severity severity;
  std::string message;
};

/// Parses the line-oriented `.ff` format. Indices are canonicalized to
/// sorted order; a key given twice (in any permutation) is an error.
ForceField parse_forcefield(std::string_view text);
ForceField load_forcefield(const std::string& path);
std::string serialize_forcefield(const ForceField& ff);

/// Structural errors and physical warnings; never throws.
std::vector<Diagnostic> validate(const ForceField& ff);

IndexKey canonical_key(IndexKey key);
bool is_valid_axis(char axis);

}  // namespace soqft
