#include "ktcy/krylov.hpp"

#include <cmath>
#include <numeric>

namespace ktcy {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

GmresResult gmres(const LinearMap& apply_a, const LinearMap& apply_precond, std::span<const double> b,
                  const GmresOptions& opts) {
  const std::size_t n = b.size();
  const int m = opts.restart;
  GmresResult result;
  result.x.assign(n, 0.0);

  const double b_norm = norm(b);
  if (b_norm == 0.0) {
    result.converged = true;
    return result;
  }

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> tmp(n), z(n);
  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1);

  double r_norm = b_norm;
  while (result.iterations < opts.max_iters) {
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / r_norm;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = r_norm;

    int j = 0;
    for (; j < m && result.iterations < opts.max_iters; ++j, ++result.iterations) {
      apply_precond(V[j], z);
      apply_a(z, V[j + 1]);
      // Modified Gram-Schmidt, applied twice for stability near convergence.
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const double h = dot(V[i], V[j + 1]);
          H[i][j] += h;
          axpy(-h, V[i], V[j + 1]);
        }
      H[j + 1][j] = norm(V[j + 1]);
      if (H[j + 1][j] > 0.0)
        for (auto& v : V[j + 1]) v /= H[j + 1][j];

      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double denom = std::hypot(H[j][j], H[j + 1][j]);
      cs[j] = H[j][j] / denom;
      sn[j] = H[j + 1][j] / denom;
      H[j][j] = denom;
      H[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      if (std::abs(g[j + 1]) <= opts.rel_tol * b_norm) {
        ++j;
        ++result.iterations;
        break;
      }
    }

    // Back-substitute and update x += M^-1 V y.
    std::vector<double> y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = s / H[i][i];
    }
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (int i = 0; i < j; ++i) axpy(y[i], V[i], tmp);
    apply_precond(tmp, z);
    axpy(1.0, z, result.x);

    // True residual guards against drift in the Givens estimate.
    apply_a(result.x, tmp);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - tmp[i];
    r_norm = norm(r);
    result.rel_residual = r_norm / b_norm;
    if (result.rel_residual <= opts.rel_tol) {
      result.converged = true;
      return result;
    }
    for (auto& row : H) std::fill(row.begin(), row.end(), 0.0);
  }
  return result;
}

}  // namespace ktcy
