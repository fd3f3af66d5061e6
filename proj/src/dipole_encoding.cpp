#include "soqft/dipole_encoding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "soqft/circuits.hpp"
#include "soqft/hamiltonian.hpp"

namespace soqft {

namespace {

void require_normalized(const Wavefunction& psi, const char* who) {
  if (psi.space != Space::position) throw std::invalid_argument(std::string(who) + ": need a position-space state");
  if (std::abs(psi.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

DipoleState apply_dipole_exact(const Wavefunction& psi, const ForceField& ff, char axis, int order) {
  require_normalized(psi, "apply_dipole_exact");
  const auto mu = dipole_on_grid(ff, psi.grid, axis, order);
  if (max_abs(mu.values) == 0.0)
    throw std::invalid_argument(std::string("apply_dipole_exact: dipole is identically zero on axis ") + axis);
  DipoleState out{psi, 0.0};
  for (std::size_t i = 0; i < mu.values.size(); ++i) out.state.amplitudes[i] *= mu.values[i];
  out.norm_mu_sq = out.state.norm_squared();
  out.state.normalize();
  return out;
}

double choose_beta(const ForceField& ff, const GridSpec& g, char axis, int order, double margin) {
  if (!(margin >= 1.0)) throw std::invalid_argument("choose_beta: margin must be at least 1");
  const double m = max_abs(dipole_on_grid(ff, g, axis, order).values);
  if (m == 0.0) throw std::invalid_argument(std::string("choose_beta: dipole is identically zero on axis ") + axis);
  return margin * m;
}

ProbabilisticDipole apply_dipole_probabilistic(const Wavefunction& psi, const ForceField& ff, char axis, int order,
                                               double beta, ThetaMode mode, double threshold) {
  require_normalized(psi, "apply_dipole_probabilistic");
  if (!(beta > 0.0)) throw std::invalid_argument("apply_dipole_probabilistic: beta must be positive");
  const GridSpec& g = psi.grid;
  const auto mu = dipole_on_grid(ff, g, axis, order);
  const double scaled = max_abs(mu.values) / beta;
  if (scaled > threshold)
    throw std::invalid_argument("apply_dipole_probabilistic: max|mu/beta| = " + std::to_string(scaled) +
                                " exceeds the approximation threshold " + std::to_string(threshold));
  const auto exact = apply_dipole_exact(psi, ff, axis, order);

  ProbabilisticDipole out;
  Wavefunction branch0(g), branch1(g);
  if (mode == ThetaMode::taylor) {
    const Circuit c = build_dipole_circuit(ff, g, axis, order, beta);
    StateVector s = embed(psi, c.layout);
    execute(c, s);
    double joint = 0.0;
    for (const auto& a : s) joint += std::norm(a);
    out.record.joint_norm = joint;
    branch0 = extract(s, c.layout, g, 0b0000);
    branch1 = extract(s, c.layout, g, 0b0001);
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t1 = -std::asin(mu.values[i] / beta);
      branch0.amplitudes[i] = std::sin(t1) * psi.amplitudes[i];
      branch1.amplitudes[i] = std::cos(t1) * psi.amplitudes[i];
    }
    out.record.joint_norm = branch0.norm_squared() + branch1.norm_squared();
  }

  out.record.axis = axis;
  out.record.truncation_order = order;
  out.record.beta = beta;
  out.record.success_probability = branch0.norm_squared();
  out.record.failure_probability = branch1.norm_squared();
  out.record.norm_mu_sq = beta * beta * out.record.success_probability;
  if (!(out.record.success_probability > 0.0))
    throw std::runtime_error("apply_dipole_probabilistic: ancilla |0> branch has zero probability");
  branch0.normalize();
  out.record.overlap_with_exact = std::abs(inner_product(exact.state, branch0));
  out.state = std::move(branch0);
  return out;
}

}  // namespace soqft
