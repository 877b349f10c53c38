#pragma once

// Reduction of the T^2-invariant Calabi-Yau equation to the periodic
// Monge-Ampere equation (1 + phi_xx)(1 + phi_yy) - phi_xy^2 = e^(F + c).
//
// A compatible invariant form Omega + da is parametrized by a zero-mean
// potential phi with (f2, f4) = (phi_x, phi_y); the closedness constraint
// f2_y = f4_x then holds identically.

#include <array>

#include <Eigen/Core>

#include "ktcy/frame_calculus.hpp"
#include "ktcy/torus_grid.hpp"

namespace ktcy {

class Potential {
 public:
  /// Throws std::invalid_argument unless |mean(phi)| <= mean_tol.
  explicit Potential(TorusField phi, double mean_tol = 1e-12);

  static Potential zero(Grid grid) { return Potential(TorusField::zeros(grid)); }
  /// Subtracts the mean first.
  static Potential projected(const TorusField& phi) { return Potential(remove_mean(phi)); }

  const TorusField& phi() const { return phi_; }
  const Grid& grid() const { return phi_.grid(); }

 private:
  TorusField phi_;
};

/// A = 1 + f2_x, B = 1 + f4_y, D = f4_x and nu = AB - D^2.
struct ReducedMetric {
  TorusField A, B, D, nu;
};

/// Log-density F with its additive normalization c, mean(e^(F + c)) = 1.
class DensityData {
 public:
  /// Throws std::invalid_argument if the normalization fails by more than tol.
  DensityData(TorusField F, double c, double tol = 1e-12);
  /// Picks c = -log mean(e^F).
  static DensityData normalized(TorusField F);

  const TorusField& F() const { return F_; }
  double c() const { return c_; }
  /// e^(F + c)
  TorusField density() const;

 private:
  TorusField F_;
  double c_;
};

inline constexpr double kDefaultAdmissibilityDelta = 1e-8;

ReducedMetric reduced_metric(const Potential& p);

/// min A, min B and min nu all exceed delta.
bool is_admissible(const ReducedMetric& m, double delta = kDefaultAdmissibilityDelta);

/// nu - e^(F + c).
TorusField residual(const Potential& p, const DensityData& d);

/// u = tr_g(g~)/2 = 2 + phi_xx + phi_yy.
TorusField trace_u(const Potential& p);

TorusField laplace_flat(const TorusField& psi);

/// (A psi_yy + B psi_xx - 2 D psi_xy) / nu. Throws DegenerateMetric if nu <= 0.
TorusField laplace_tilde(const TorusField& psi, const ReducedMetric& m);

/// Pointwise LHS - RHS of
///   Lap~ u = Lap log nu + (1/nu)(nu_x^2/nu + nu_y^2/nu
///            + 2(-f2_xx f2_yy + f2_yx^2 - f4_yy f4_xx + f4_yx^2)).
/// Vanishes identically in the continuum; on the grid it measures aliasing.
TorusField key_identity_gap(const Potential& p);

/// min(Lap~ u) - min(Lap(F + c)). Non-negative for exact solutions.
double lemma22_margin(const Potential& p, const DensityData& d);

/// (tr PQ)^2 - 2 det(PQ) for symmetric P, Q with P positive definite.
/// Throws NotPositiveDefinite if P fails the leading-minor test.
double la_inequality(const Eigen::Matrix2d& P, const Eigen::Matrix2d& Q);

/// A primitive a with Omega + da compatible with J: f2 = phi_x, f4 = phi_y
/// and f3_x - f1_y = f4 solved mode by mode (zero-mode gauge for f1, f3).
InvariantOneForm reconstruct_one_form(const Potential& p);

/// Omega~ = A e1 + D e3 - D e4 + B e6.
InvariantTwoForm assemble_omega_tilde(const Potential& p);

/// Matrix of g~ in the frame {d_x, d_t, d_y + x d_z, d_z}.
using MetricMatrix = std::array<std::array<TorusField, 4>, 4>;
MetricMatrix metric_matrix(const Potential& p);

/// Pointwise diagnostics of a candidate solution.
struct Diagnostics {
  double residual_sup = 0.0;
  double residual_l2 = 0.0;
  double min_nu = 0.0;
  double min_A = 0.0;
  double sup_u = 0.0;
  double lemma22_margin = 0.0;
  double key_identity_sup = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

Diagnostics diagnose(const Potential& p, const DensityData& d);

}  // namespace ktcy
