#pragma once

// T^2-invariant differential forms on the Kodaira-Thurston manifold written in
// the left-invariant coframe {dx, dt, dy, dz - x dy}. Coefficients depend on
// (x, y) only and are stored as TorusFields.

#include <array>
#include <filesystem>
#include <string_view>

#include "ktcy/torus_grid.hpp"

namespace ktcy {

/// a = f1 dx + f2 dt + f3 dy + f4 (dz - x dy)
struct InvariantOneForm {
  TorusField f1, f2, f3, f4;

  InvariantOneForm(TorusField f1, TorusField f2, TorusField f3, TorusField f4);
  static InvariantOneForm zero(Grid grid);
  const Grid& grid() const { return f1.grid(); }
};

/// Coefficients over e1 = dx^dt, e2 = dx^dy, e3 = dx^(dz-xdy),
/// e4 = dt^dy, e5 = dt^(dz-xdy), e6 = dy^(dz-xdy). Index k holds e_{k+1}.
struct InvariantTwoForm {
  std::array<TorusField, 6> c;

  explicit InvariantTwoForm(std::array<TorusField, 6> coeffs);
  static InvariantTwoForm zero(Grid grid);
  /// Constant-coefficient form.
  static InvariantTwoForm constant(Grid grid, const std::array<double, 6>& coeffs);

  const Grid& grid() const { return c[0].grid(); }
  const TorusField& operator[](int k) const { return c[k]; }

  InvariantTwoForm& operator+=(const InvariantTwoForm& other);
  InvariantTwoForm& operator-=(const InvariantTwoForm& other);
  /// Largest coefficient-wise sup-norm.
  double sup_norm() const;
};

InvariantTwoForm operator+(InvariantTwoForm a, const InvariantTwoForm& b);
InvariantTwoForm operator-(InvariantTwoForm a, const InvariantTwoForm& b);
InvariantTwoForm operator*(double s, const InvariantTwoForm& w);

/// Names of e1..e6, e.g. "dx^dt".
std::string_view basis_name(int k);

/// Omega = dx^dt + dy^(dz-xdy), the reference symplectic form.
InvariantTwoForm omega(Grid grid);
/// Omega_1 = dx^(dz-xdy) + dt^dy, the anti-invariant harmonic form.
InvariantTwoForm omega_one(Grid grid);

/// J(dx) = dt, J(dt) = -dx, J(dy) = dz-xdy, J(dz-xdy) = -dy.
InvariantOneForm j_one_form(const InvariantOneForm& a);
/// (J w)(X, Y) = w(JX, JY).
InvariantTwoForm j_two_form(const InvariantTwoForm& w);

/// dF = F_x dx + F_y dy for an invariant function.
InvariantOneForm ext_d(const TorusField& f);
/// Uses d(dz - x dy) = -dx^dy.
InvariantTwoForm ext_d(const InvariantOneForm& a);

/// Sign of e_i ^ e_j relative to vol' = dx^dt^dy^(dz-xdy); zero when the
/// two basis 2-forms share a factor. Built from permutation parity.
const std::array<std::array<int, 6>, 6>& pairing_table();

/// Coefficient of w1 ^ w2 relative to vol' (so Omega ^ Omega gives 2).
TorusField wedge_top(const InvariantTwoForm& w1, const InvariantTwoForm& w2);

struct CohomologyCoeffs {
  double alpha;
  double beta;
};

/// Projection of the class of w onto span{Omega, Omega_1} via the
/// intersection pairing.
CohomologyCoeffs cohomology_coeffs(const InvariantTwoForm& w);

/// Largest coefficient of J(w) - w; zero iff w is of type (1,1).
double j_invariance_defect(const InvariantTwoForm& w);

/// Writes e1..e6 as <stem>_e<k>.ktcy plus <stem>_manifest.json naming each
/// file's basis element.
void export_two_form(const std::filesystem::path& dir, std::string_view stem, const InvariantTwoForm& w);

}  // namespace ktcy
