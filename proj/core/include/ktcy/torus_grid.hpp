#pragma once

// Periodic scalar fields on the unit 2-torus and their pseudo-spectral calculus.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ktcy {

/// Uniform n x n sampling of [0,1)^2. n must be even and at least 4.
class Grid {
 public:
  explicit Grid(int n);

  int n() const { return n_; }
  double spacing() const { return 1.0 / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double coord(int i) const { return static_cast<double>(i) / n_; }

  /// Signed wavenumber for a full-length FFT index in [0, n).
  /// The Nyquist index n/2 maps to +n/2.
  int wavenumber(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
  bool is_nyquist(int idx) const { return idx == n_ / 2; }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
};

/// Real samples f(i/n, j/n), row-major with the x index outermost.
/// Immutable once constructed; every value is finite.
class TorusField {
 public:
  TorusField(Grid grid, std::vector<double> values);

  static TorusField constant(Grid grid, double value);
  static TorusField zeros(Grid grid) { return constant(grid, 0.0); }

  /// Samples fn(x, y) at every grid node.
  template <typename Fn>
  static TorusField sample(Grid grid, Fn&& fn) {
    const int n = grid.n();
    std::vector<double> v(grid.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = fn(grid.coord(i), grid.coord(j));
    return TorusField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  std::span<const double> values() const { return values_; }

  /// Periodic lookup: indices are reduced modulo n.
  double operator()(int i, int j) const;
  double at(std::size_t flat) const { return values_[flat]; }

  double min() const;
  double max() const;
  double sup_norm() const;
  /// Root-mean-square value, the discrete L2 norm on the unit torus.
  double l2_norm() const;

  TorusField operator-() const;
  TorusField& operator+=(const TorusField& other);
  TorusField& operator-=(const TorusField& other);

 private:
  Grid grid_;
  std::vector<double> values_;
};

TorusField operator+(TorusField a, const TorusField& b);
TorusField operator-(TorusField a, const TorusField& b);
TorusField operator*(const TorusField& a, const TorusField& b);
TorusField operator/(const TorusField& a, const TorusField& b);
TorusField operator*(double s, const TorusField& a);
TorusField operator*(const TorusField& a, double s);
TorusField operator+(const TorusField& a, double s);
TorusField operator-(const TorusField& a, double s);
TorusField operator+(double s, const TorusField& a);
TorusField operator-(double s, const TorusField& a);

TorusField exp(const TorusField& f);
TorusField log(const TorusField& f);
TorusField square(const TorusField& f);

/// Pointwise map.
template <typename Fn>
TorusField map(const TorusField& f, Fn&& fn) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x = fn(x);
  return TorusField(f.grid(), std::move(v));
}

/// Fourier coefficients of a real field in FFTW's half-complex layout:
/// n x (n/2 + 1), entry (k, l) with k the full x index and l in [0, n/2].
/// Unnormalized, so the (0,0) entry is n^2 times the mean.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);

  const Grid& grid() const { return grid_; }
  int half() const { return grid_.n() / 2 + 1; }
  std::complex<double>& operator()(int k, int l) { return coeffs_[static_cast<std::size_t>(k) * half() + l]; }
  const std::complex<double>& operator()(int k, int l) const {
    return coeffs_[static_cast<std::size_t>(k) * half() + l];
  }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum forward(const TorusField& f);
TorusField inverse(const Spectrum& s);

enum class Partial { x, y, xx, yy, xy };

/// Pseudo-spectral partial derivative. The Nyquist mode of any direction
/// differentiated an odd number of times is zeroed.
TorusField derivative(const TorusField& f, Partial which);
TorusField derivative(const TorusField& f, int order_x, int order_y);

struct Hessian {
  TorusField xx, yy, xy;
};

/// The three second derivatives from a single forward transform.
Hessian hessian(const TorusField& f);

/// Mean of the samples; the spectrally accurate integral over the unit torus.
double integrate(const TorusField& f);

/// Mean-free solution g of Lap g = f - mean(f).
/// Throws NonZeroMeanInput if |mean(f)| > mean_tol.
TorusField invert_laplacian(const TorusField& f, double mean_tol = 1e-10);

/// f - mean(f).
TorusField remove_mean(const TorusField& f);

}  // namespace ktcy
