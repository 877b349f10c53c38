#include "ktcy/exact_scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ktcy {

ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
  const GaussRational two{Rational(2), Rational(0)};
  return {x.a_ * y.a_ + two * (x.b_ * y.b_), x.a_ * y.b_ + x.b_ * y.a_};
}

ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
  if (y.is_zero()) throw std::domain_error("ExactScalar: division by zero");
  // Multiply through by the sqrt2-conjugate a - b*sqrt2 to clear the surd,
  // then by the complex conjugate of the Gaussian denominator.
  const ExactScalar surd_conj{y.a_, GaussRational{} - y.b_};
  const ExactScalar num = x * surd_conj;
  const GaussRational two{Rational(2), Rational(0)};
  const GaussRational den = y.a_ * y.a_ - two * (y.b_ * y.b_);
  const Rational norm = den.re * den.re + den.im * den.im;
  if (norm.numerator() == 0) throw std::domain_error("ExactScalar: singular denominator");
  auto div = [&](const GaussRational& g) {
    const GaussRational p = g * den.conj();
    return GaussRational{p.re / norm, p.im / norm};
  };
  return {div(num.a_), div(num.b_)};
}

std::complex<double> ExactScalar::to_complex() const {
  auto d = [](const Rational& r) { return boost::rational_cast<double>(r); };
  const double s = std::numbers::sqrt2;
  return {d(a_.re) + s * d(b_.re), d(a_.im) + s * d(b_.im)};
}

std::string ExactScalar::to_string() const {
  struct Term {
    Rational coef;
    const char* unit;
  };
  const std::vector<Term> terms{{a_.re, ""}, {a_.im, "i"}, {b_.re, "sqrt2"}, {b_.im, "i*sqrt2"}};
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef.numerator() == 0) continue;
    Rational c = t.coef;
    if (c.numerator() < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    const bool unit_only = *t.unit && c == Rational(1);
    if (!unit_only) {
      os << c.numerator();
      if (c.denominator() != 1) os << '/' << c.denominator();
      if (*t.unit) os << '*';
    }
    os << t.unit;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace ktcy
