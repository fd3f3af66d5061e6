#include "soqft/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace soqft {

namespace {
// FFTW planner calls are not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int r = 0; r < d; ++r) s *= points_per_mode();
  return s;
}

double GridSpec::momentum(std::size_t k) const {
  return momentum_spacing() * (static_cast<double>(k) - 0.5 * static_cast<double>(points_per_mode()));
}

double GridSpec::momentum_spacing() const { return 2.0 * std::numbers::pi / L; }

std::size_t GridSpec::stride(int mode) const {
  std::size_t s = 1;
  for (int r = mode + 1; r < d; ++r) s *= points_per_mode();
  return s;
}

GridSpec make_grid(int n, int d, double L) {
  if (n < 2) throw std::invalid_argument("make_grid: need at least 2 qubits per mode, got " + std::to_string(n));
  if (d < 1) throw std::invalid_argument("make_grid: need at least one mode");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("make_grid: extent L must be positive");
  if (static_cast<long>(n) * d > 40) throw std::invalid_argument("make_grid: grid too large");
  return GridSpec{n, d, L};
}

Wavefunction::Wavefunction(const GridSpec& g, Space s) : grid(g), amplitudes(g.size()), space(s) {}

double Wavefunction::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

void Wavefunction::normalize() {
  double nrm = std::sqrt(norm_squared());
  if (!(nrm > 0.0)) throw std::runtime_error("cannot normalize a zero wavefunction");
  for (auto& a : amplitudes) a /= nrm;
}

bool Wavefunction::is_finite() const {
  for (const auto& a : amplitudes)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

cplx inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid) || a.amplitudes.size() != b.amplitudes.size())
    throw std::invalid_argument("inner_product: grid mismatch");
  if (a.space != b.space) throw std::invalid_argument("inner_product: space tag mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

std::size_t centered_shift(const GridSpec& g, std::size_t flat) {
  std::size_t mask = 0;
  for (int r = 0; r < g.d; ++r) mask |= (g.points_per_mode() >> 1) * g.stride(r);
  return flat ^ mask;
}

GridFft::GridFft(const GridSpec& g) : size_(g.size()) {
  data_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size_));
  if (!data_) throw std::bad_alloc();
  std::vector<int> dims(g.d, static_cast<int>(g.points_per_mode()));
  auto* buf = reinterpret_cast<fftw_complex*>(data_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft(g.d, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(g.d, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < size_; ++i) data_[i] = 0.0;
}

GridFft::~GridFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(data_);
}

void GridFft::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void GridFft::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

void fourier_transform(Wavefunction& psi, Space target) {
  if (psi.space == target) return;
  const GridSpec& g = psi.grid;
  GridFft fft(g);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  cplx* buf = fft.data();
  if (target == Space::momentum) {
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = psi.amplitudes[i];
    fft.forward();
    for (std::size_t i = 0; i < g.size(); ++i) psi.amplitudes[centered_shift(g, i)] = buf[i] * scale;
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = psi.amplitudes[centered_shift(g, i)];
    fft.backward();
    for (std::size_t i = 0; i < g.size(); ++i) psi.amplitudes[i] = buf[i] * scale;
  }
  psi.space = target;
}

}  // namespace soqft
