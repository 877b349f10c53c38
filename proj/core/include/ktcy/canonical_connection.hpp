#pragma once

// Canonical connection of the left-invariant almost-Kaehler structure
// (g, J) in the unitary coframe
//   theta^1 = (dx + i dt)/sqrt2,  theta^2 = (dy + i(dz - x dy))/sqrt2.
// All left-invariant quantities are exact; only the Ricci form of a
// solution involves floating point (through the density F).

#include <array>
#include <string>

#include "ktcy/exact_scalar.hpp"
#include "ktcy/frame_calculus.hpp"

namespace ktcy {

/// Position in the complex coframe {theta^1, theta^2, conj theta^1, conj theta^2}.
enum class Coframe : int { theta1 = 0, theta2 = 1, theta1_bar = 2, theta2_bar = 3 };

/// Constant-coefficient complex form of degree 1 or 2. Degree-2 forms are
/// stored over the six products a^b with a < b, ordered
/// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
class ComplexInvariantForm {
 public:
  static ComplexInvariantForm zero(int degree);
  static ComplexInvariantForm basis(Coframe a);
  /// theta^a ^ theta^b (a != b).
  static ComplexInvariantForm basis(Coframe a, Coframe b);
  /// Raw coefficients in storage order (degree 1 reads the first four).
  static ComplexInvariantForm from_coeffs(int degree, const std::array<ExactScalar, 6>& coeffs);

  int degree() const { return degree_; }
  /// Degree 1 coefficient.
  const ExactScalar& coeff(Coframe a) const;
  /// Degree 2 coefficient of theta^a ^ theta^b; antisymmetric in (a, b).
  ExactScalar coeff(Coframe a, Coframe b) const;
  const std::array<ExactScalar, 6>& raw() const { return c_; }

  ComplexInvariantForm conj() const;
  bool is_zero() const;

  ComplexInvariantForm& operator+=(const ComplexInvariantForm& o);
  ComplexInvariantForm& operator-=(const ComplexInvariantForm& o);
  friend ComplexInvariantForm operator+(ComplexInvariantForm a, const ComplexInvariantForm& b) { return a += b; }
  friend ComplexInvariantForm operator-(ComplexInvariantForm a, const ComplexInvariantForm& b) { return a -= b; }
  friend ComplexInvariantForm operator*(const ExactScalar& s, const ComplexInvariantForm& f);
  ComplexInvariantForm operator-() const { return ExactScalar(-1) * *this; }
  bool operator==(const ComplexInvariantForm&) const = default;

  std::string to_string() const;

 private:
  ComplexInvariantForm(int degree) : degree_(degree) {}

  int degree_ = 1;
  // Degree 1 uses the first four slots.
  std::array<ExactScalar, 6> c_{};
};

ComplexInvariantForm wedge(const ComplexInvariantForm& a, const ComplexInvariantForm& b);

/// Coefficients over {dx, dt, dy, dz - x dy} (degree 1, first four used) or
/// e1..e6 (degree 2). Complex in general; real for real forms.
std::array<ExactScalar, 6> to_real_basis(const ComplexInvariantForm& f);
ComplexInvariantForm from_real_basis(int degree, const std::array<ExactScalar, 6>& coeffs);

/// Exterior derivative of a constant-coefficient 1-form, derived from the
/// real structure equation d(dz - x dy) = -dx^dy.
ComplexInvariantForm structure_d(const ComplexInvariantForm& form);

template <typename T>
using Matrix2 = std::array<std::array<T, 2>, 2>;

/// theta[i][j] is theta^{i+1}_{j+1}.
struct ConnectionMatrix {
  Matrix2<ComplexInvariantForm> theta;
};

struct CurvatureMatrix {
  Matrix2<ComplexInvariantForm> psi;
};

/// True iff m[j][i] = -conj(m[i][j]) for all i, j.
bool is_skew_hermitian(const Matrix2<ComplexInvariantForm>& m);

ConnectionMatrix canonical_connection_forms();

/// Theta^i = d theta^i + theta^i_j ^ theta^j.
std::array<ComplexInvariantForm, 2> torsion();

/// Psi^i_j = d theta^i_j + theta^i_k ^ theta^k_j.
CurvatureMatrix curvature();

/// Closed-form values the structure equations must reproduce.
namespace closed_form {
std::array<ComplexInvariantForm, 2> torsion();
CurvatureMatrix curvature();
/// d theta^2 written in the complex coframe.
ComplexInvariantForm d_theta2();
}  // namespace closed_form

/// The (1,1) part: components along theta^a ^ conj theta^b.
ComplexInvariantForm part_11(const ComplexInvariantForm& f);

/// Real coefficients of i * psi, exact. Throws std::domain_error if the
/// result is not real.
std::array<ExactScalar, 6> i_times_real(const ComplexInvariantForm& psi);

/// (i / 2 pi) psi as a constant InvariantTwoForm on grid.
InvariantTwoForm ricci_contribution(const ComplexInvariantForm& psi, Grid grid);

/// Ric(Omega, J) = (i / 2 pi)(Psi^1_1 + Psi^2_2), which vanishes.
InvariantTwoForm ricci_flat(Grid grid);

/// Ric(omega~, J) = -1/2 d(J dF) for the solution with density e^(F + c).
InvariantTwoForm ricci_tilde(const TorusField& F, double c);

/// Human-readable exact listing of theta^i_j, Theta^i and Psi^i_j.
std::string connection_report();

}  // namespace ktcy
