#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ktcy {

using LinearMap = std::function<void(std::span<const double> in, std::span<double> out)>;

struct GmresOptions {
  int restart = 40;
  int max_iters = 400;
  /// Target ||b - A x|| / ||b||.
  double rel_tol = 1e-10;
};

struct GmresResult {
  std::vector<double> x;
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Restarted GMRES with right preconditioning: solves A M^-1 y = b and
/// returns x = M^-1 y. Starts from x = 0.
GmresResult gmres(const LinearMap& apply_a, const LinearMap& apply_precond, std::span<const double> b,
                  const GmresOptions& opts = {});

}  // namespace ktcy
