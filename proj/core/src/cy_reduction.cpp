#include "ktcy/cy_reduction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

#include "ktcy/errors.hpp"

namespace ktcy {

Potential::Potential(TorusField phi, double mean_tol) : phi_(std::move(phi)) {
  const double mean = integrate(phi_);
  if (std::abs(mean) > mean_tol) {
    std::ostringstream os;
    os << "Potential must be mean-free, got mean " << mean;
    throw std::invalid_argument(os.str());
  }
}

DensityData::DensityData(TorusField F, double c, double tol) : F_(std::move(F)), c_(c) {
  const double total = integrate(density());
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os << "DensityData not normalized: mean(e^(F+c)) = " << total;
    throw std::invalid_argument(os.str());
  }
}

DensityData DensityData::normalized(TorusField F) {
  const double c = -std::log(integrate(exp(F)));
  return DensityData(std::move(F), c);
}

TorusField DensityData::density() const { return exp(F_ + c_); }

ReducedMetric reduced_metric(const Potential& p) {
  auto h = hessian(p.phi());
  auto A = h.xx + 1.0;
  auto B = h.yy + 1.0;
  auto D = std::move(h.xy);
  auto nu = A * B - square(D);
  return {std::move(A), std::move(B), std::move(D), std::move(nu)};
}

bool is_admissible(const ReducedMetric& m, double delta) {
  return m.A.min() > delta && m.B.min() > delta && m.nu.min() > delta;
}

TorusField residual(const Potential& p, const DensityData& d) { return reduced_metric(p).nu - d.density(); }

TorusField trace_u(const Potential& p) {
  return derivative(p.phi(), Partial::xx) + derivative(p.phi(), Partial::yy) + 2.0;
}

TorusField laplace_flat(const TorusField& psi) {
  return derivative(psi, Partial::xx) + derivative(psi, Partial::yy);
}

TorusField laplace_tilde(const TorusField& psi, const ReducedMetric& m) {
  const double min_nu = m.nu.min();
  if (!(min_nu > 0.0)) throw DegenerateMetric(min_nu);
  return (m.A * derivative(psi, Partial::yy) + m.B * derivative(psi, Partial::xx) -
          2.0 * (m.D * derivative(psi, Partial::xy))) /
         m.nu;
}

TorusField key_identity_gap(const Potential& p) {
  const auto m = reduced_metric(p);
  const auto u = m.A + m.B;
  const auto lhs = laplace_tilde(u, m);

  // Third derivatives of phi, grouped through A, B, D.
  const auto f2_xx = derivative(m.A, Partial::x);
  const auto f2_yx = derivative(m.A, Partial::y);
  const auto f2_yy = derivative(m.D, Partial::y);
  const auto f4_xx = derivative(m.D, Partial::x);
  const auto f4_yx = derivative(m.B, Partial::x);
  const auto f4_yy = derivative(m.B, Partial::y);

  const auto nu_x = derivative(m.nu, Partial::x);
  const auto nu_y = derivative(m.nu, Partial::y);

  const auto bracket = square(f2_yx) - f2_xx * f2_yy + square(f4_yx) - f4_yy * f4_xx;
  const auto rhs = laplace_flat(log(m.nu)) + ((square(nu_x) + square(nu_y)) / m.nu + 2.0 * bracket) / m.nu;
  return lhs - rhs;
}

double lemma22_margin(const Potential& p, const DensityData& d) {
  const auto m = reduced_metric(p);
  const auto lap_u = laplace_tilde(m.A + m.B, m);
  return lap_u.min() - laplace_flat(d.F()).min();
}

double la_inequality(const Eigen::Matrix2d& P, const Eigen::Matrix2d& Q) {
  if (!(P(0, 0) > 0.0) || !(P.determinant() > 0.0)) throw NotPositiveDefinite("P fails the leading-minor test");
  const Eigen::Matrix2d PQ = P * Q;
  const double tr = PQ.trace();
  return tr * tr - 2.0 * PQ.determinant();
}

InvariantOneForm reconstruct_one_form(const Potential& p) {
  const auto& phi = p.phi();
  const Grid g = phi.grid();
  auto f2 = derivative(phi, Partial::x);
  auto f4 = derivative(phi, Partial::y);

  // f3_x - f1_y = f4, mode by mode. Modes with a resolvable x wavenumber go
  // to f3; the rest (k = 0 or the x Nyquist index) go to f1.
  const Spectrum s4 = forward(f4);
  Spectrum s1(g), s3(g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < g.n(); ++k) {
    const int kx = g.wavenumber(k);
    for (int l = 0; l < s4.half(); ++l) {
      const auto c = s4(k, l);
      if (kx != 0 && !g.is_nyquist(k)) {
        s3(k, l) = c / std::complex<double>(0.0, two_pi * kx);
      } else if (l != 0 && !g.is_nyquist(l)) {
        s1(k, l) = -c / std::complex<double>(0.0, two_pi * l);
      }
    }
  }
  return {inverse(s1), std::move(f2), inverse(s3), std::move(f4)};
}

InvariantTwoForm assemble_omega_tilde(const Potential& p) {
  const auto m = reduced_metric(p);
  return InvariantTwoForm({m.A, TorusField::zeros(p.grid()), m.D, -m.D, TorusField::zeros(p.grid()), m.B});
}

MetricMatrix metric_matrix(const Potential& p) {
  const auto m = reduced_metric(p);
  const auto z = TorusField::zeros(p.grid());
  return {{{m.A, z, m.D, z}, {z, m.A, z, m.D}, {m.D, z, m.B, z}, {z, m.D, z, m.B}}};
}

Diagnostics diagnose(const Potential& p, const DensityData& d) {
  const auto m = reduced_metric(p);
  const auto r = m.nu - d.density();
  Diagnostics out;
  out.residual_sup = r.sup_norm();
  out.residual_l2 = r.l2_norm();
  out.min_nu = m.nu.min();
  out.min_A = m.A.min();
  out.sup_u = (m.A + m.B).max();
  out.lemma22_margin = lemma22_margin(p, d);
  out.key_identity_sup = key_identity_gap(p).sup_norm();
  const auto coeffs = cohomology_coeffs(assemble_omega_tilde(p));
  out.alpha = coeffs.alpha;
  out.beta = coeffs.beta;
  return out;
}

}  // namespace ktcy
