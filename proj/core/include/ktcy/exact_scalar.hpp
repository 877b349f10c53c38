#pragma once

// Exact arithmetic in Q(i, sqrt 2): values a + b*sqrt(2) with a, b Gaussian
// rationals. Closed under + - * / and complex conjugation, which is all the
// constant-coefficient coframe algebra needs.

#include <complex>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ktcy {

using Rational = boost::rational<std::int64_t>;

/// Gaussian rational re + i*im.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational conj() const { return {re, -im}; }
  bool is_zero() const { return re.numerator() == 0 && im.numerator() == 0; }
  bool operator==(const GaussRational&) const = default;
};

class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(std::int64_t n) : a_{Rational(n), Rational(0)} {}  // NOLINT: implicit from integers
  ExactScalar(GaussRational a, GaussRational b) : a_(a), b_(b) {}

  static ExactScalar rational(std::int64_t num, std::int64_t den) { return {{Rational(num, den), 0}, {}}; }
  static ExactScalar i() { return {{0, 1}, {}}; }
  static ExactScalar sqrt2() { return {{}, {1, 0}}; }

  /// Rational part a and sqrt(2) coefficient b.
  const GaussRational& rational_part() const { return a_; }
  const GaussRational& sqrt2_part() const { return b_; }

  ExactScalar conj() const { return {a_.conj(), b_.conj()}; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// Imaginary parts both vanish.
  bool is_real() const { return a_.im.numerator() == 0 && b_.im.numerator() == 0; }

  ExactScalar operator-() const { return {GaussRational{} - a_, GaussRational{} - b_}; }
  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y);
  /// Throws std::domain_error on division by zero.
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y);
  ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
  ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }

  bool operator==(const ExactScalar&) const = default;

  std::complex<double> to_complex() const;
  /// e.g. "-1/4*i*sqrt2", "1/8", "0".
  std::string to_string() const;

 private:
  GaussRational a_{};
  GaussRational b_{};
};

}  // namespace ktcy
