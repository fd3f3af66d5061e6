#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace soqft {

using cplx = std::complex<double>;

/// Tensor-product grid: N = 2^n points per mode over the half-open range
/// [-L/2, L/2). Flattened index has mode 0 slowest:
///   flat = sum_r x_r * N^(d-1-r).
struct GridSpec {
  int n = 0;
  int d = 0;
  double L = 10.0;

  std::size_t points_per_mode() const { return std::size_t{1} << n; }
  std::size_t size() const;
  double dq() const { return L / static_cast<double>(points_per_mode()); }
  /// Q(x) = -L/2 + x dQ.
  double coordinate(std::size_t x) const { return -0.5 * L + static_cast<double>(x) * dq(); }
  /// Centered momentum label k in [0, N): p = 2 pi (k - N/2) / L.
  double momentum(std::size_t k) const;
  double momentum_spacing() const;
  std::size_t stride(int mode) const;
  std::size_t digit(std::size_t flat, int mode) const { return (flat / stride(mode)) % points_per_mode(); }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n, int d, double L = 10.0);

enum class Space { position, momentum };

/// Amplitudes over the flattened grid. In momentum space the per-mode label is
/// the centered index k (frequency f = k - N/2).
struct Wavefunction {
  GridSpec grid;
  std::vector<cplx> amplitudes;
  Space space = Space::position;

  Wavefunction() = default;
  explicit Wavefunction(const GridSpec& g, Space s = Space::position);

  double norm_squared() const;
  void normalize();
  bool is_finite() const;
};

/// <a|b> = sum conj(a_x) b_x, without a volume element.
cplx inner_product(const Wavefunction& a, const Wavefunction& b);

/// Flips the most significant bit of every mode digit: converts between
/// FFT storage order (f mod N) and centered order (f + N/2).
std::size_t centered_shift(const GridSpec& g, std::size_t flat);

/// In-place unnormalized multi-mode DFT on an owned aligned buffer in FFT
/// storage order. forward uses exp(-2 pi i f x / N).
class GridFft {
 public:
  explicit GridFft(const GridSpec& g);
  ~GridFft();
  GridFft(const GridFft&) = delete;
  GridFft& operator=(const GridFft&) = delete;

  cplx* data() { return data_; }
  const cplx* data() const { return data_; }
  std::size_t size() const { return size_; }
  void forward();
  void backward();

 private:
  std::size_t size_;
  cplx* data_;
  void* plan_fwd_;
  void* plan_bwd_;
};

/// Unitary position <-> momentum transform; the result is tagged and stored
/// in centered order.
void fourier_transform(Wavefunction& psi, Space target);

}  // namespace soqft
