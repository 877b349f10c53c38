#include "ktcy/canonical_connection.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ktcy {

namespace {

using Basis4 = std::array<std::array<ExactScalar, 4>, 4>;

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pair_index(int a, int b) {
  for (int k = 0; k < 6; ++k)
    if (kPairs[k][0] == a && kPairs[k][1] == b) return k;
  throw std::out_of_range("pair_index: need a < b");
}

int conj_index(int a) { return (a + 2) % 4; }

// 1/sqrt2 = sqrt2/2
ExactScalar inv_sqrt2() { return {{}, {Rational(1, 2), 0}}; }

// Row a: theta^a in terms of {dx, dt, dy, dz - x dy}.
const Basis4& complex_to_real() {
  static const Basis4 m = [] {
    const ExactScalar s = inv_sqrt2();
    const ExactScalar is = ExactScalar::i() * s;
    return Basis4{{{s, is, 0, 0}, {0, 0, s, is}, {s, -is, 0, 0}, {0, 0, s, -is}}};
  }();
  return m;
}

// Row r: real coframe element r in terms of {theta^1, theta^2, conj theta^1, conj theta^2}.
const Basis4& real_to_complex() {
  static const Basis4 m = [] {
    const ExactScalar s = inv_sqrt2();
    const ExactScalar is = ExactScalar::i() * s;
    return Basis4{{{s, 0, s, 0}, {-is, 0, is, 0}, {0, s, 0, s}, {0, -is, 0, is}}};
  }();
  return m;
}

std::array<ExactScalar, 6> change_basis(int degree, const std::array<ExactScalar, 6>& c, const Basis4& m) {
  std::array<ExactScalar, 6> out{};
  if (degree == 1) {
    for (int src = 0; src < 4; ++src)
      for (int t = 0; t < 4; ++t) out[t] += c[src] * m[src][t];
    return out;
  }
  for (int k = 0; k < 6; ++k) {
    if (c[k].is_zero()) continue;
    const int a = kPairs[k][0], b = kPairs[k][1];
    for (int t = 0; t < 4; ++t)
      for (int u = 0; u < 4; ++u) {
        if (t == u) continue;
        const ExactScalar w = c[k] * m[a][t] * m[b][u];
        if (t < u)
          out[pair_index(t, u)] += w;
        else
          out[pair_index(u, t)] -= w;
      }
  }
  return out;
}

const char* coframe_name(int a) {
  static constexpr const char* names[] = {"theta^1", "theta^2", "conj(theta^1)", "conj(theta^2)"};
  return names[a];
}

// i / (2 sqrt2) = i sqrt2 / 4
ExactScalar k_const() { return {{}, {0, Rational(1, 4)}}; }

ComplexInvariantForm b(Coframe a) { return ComplexInvariantForm::basis(a); }
ComplexInvariantForm b(Coframe a, Coframe c) { return ComplexInvariantForm::basis(a, c); }

constexpr auto T1 = Coframe::theta1;
constexpr auto T2 = Coframe::theta2;
constexpr auto T1b = Coframe::theta1_bar;
constexpr auto T2b = Coframe::theta2_bar;

}  // namespace

ComplexInvariantForm ComplexInvariantForm::zero(int degree) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("ComplexInvariantForm: degree must be 1 or 2");
  return ComplexInvariantForm(degree);
}

ComplexInvariantForm ComplexInvariantForm::from_coeffs(int degree, const std::array<ExactScalar, 6>& coeffs) {
  auto f = zero(degree);
  f.c_ = coeffs;
  if (degree == 1) f.c_[4] = f.c_[5] = 0;
  return f;
}

ComplexInvariantForm ComplexInvariantForm::basis(Coframe a) {
  ComplexInvariantForm f(1);
  f.c_[static_cast<int>(a)] = 1;
  return f;
}

ComplexInvariantForm ComplexInvariantForm::basis(Coframe a, Coframe c) {
  if (a == c) throw std::invalid_argument("ComplexInvariantForm::basis: repeated factor");
  return wedge(basis(a), basis(c));
}

const ExactScalar& ComplexInvariantForm::coeff(Coframe a) const {
  if (degree_ != 1) throw std::logic_error("coeff(a) on a 2-form");
  return c_[static_cast<int>(a)];
}

ExactScalar ComplexInvariantForm::coeff(Coframe a, Coframe c) const {
  if (degree_ != 2) throw std::logic_error("coeff(a, b) on a 1-form");
  const int i = static_cast<int>(a), j = static_cast<int>(c);
  if (i == j) return 0;
  return i < j ? c_[pair_index(i, j)] : -c_[pair_index(j, i)];
}

ComplexInvariantForm ComplexInvariantForm::conj() const {
  ComplexInvariantForm out(degree_);
  if (degree_ == 1) {
    for (int a = 0; a < 4; ++a) out.c_[conj_index(a)] = c_[a].conj();
    return out;
  }
  for (int k = 0; k < 6; ++k) {
    const int a = conj_index(kPairs[k][0]), bb = conj_index(kPairs[k][1]);
    if (a < bb)
      out.c_[pair_index(a, bb)] += c_[k].conj();
    else
      out.c_[pair_index(bb, a)] -= c_[k].conj();
  }
  return out;
}

bool ComplexInvariantForm::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

ComplexInvariantForm& ComplexInvariantForm::operator+=(const ComplexInvariantForm& o) {
  if (degree_ != o.degree_) throw std::invalid_argument("adding forms of different degree");
  for (int k = 0; k < 6; ++k) c_[k] += o.c_[k];
  return *this;
}

ComplexInvariantForm& ComplexInvariantForm::operator-=(const ComplexInvariantForm& o) {
  if (degree_ != o.degree_) throw std::invalid_argument("subtracting forms of different degree");
  for (int k = 0; k < 6; ++k) c_[k] -= o.c_[k];
  return *this;
}

ComplexInvariantForm operator*(const ExactScalar& s, const ComplexInvariantForm& f) {
  ComplexInvariantForm out = f;
  for (auto& v : out.c_) v = s * v;
  return out;
}

std::string ComplexInvariantForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const ExactScalar& v, const std::string& name) {
    if (v.is_zero()) return;
    if (!first) os << " + ";
    os << '(' << v.to_string() << ") " << name;
    first = false;
  };
  if (degree_ == 1) {
    for (int a = 0; a < 4; ++a) term(c_[a], coframe_name(a));
  } else {
    for (int k = 0; k < 6; ++k)
      term(c_[k], std::string(coframe_name(kPairs[k][0])) + "^" + coframe_name(kPairs[k][1]));
  }
  return first ? "0" : os.str();
}

ComplexInvariantForm wedge(const ComplexInvariantForm& x, const ComplexInvariantForm& y) {
  if (x.degree() != 1 || y.degree() != 1) throw std::invalid_argument("wedge: only 1-form ^ 1-form is representable");
  std::array<ExactScalar, 6> c{};
  for (int k = 0; k < 6; ++k) {
    const auto a = static_cast<Coframe>(kPairs[k][0]);
    const auto bb = static_cast<Coframe>(kPairs[k][1]);
    c[k] = x.coeff(a) * y.coeff(bb) - x.coeff(bb) * y.coeff(a);
  }
  return ComplexInvariantForm::from_coeffs(2, c);
}

std::array<ExactScalar, 6> to_real_basis(const ComplexInvariantForm& f) {
  return change_basis(f.degree(), f.raw(), complex_to_real());
}

ComplexInvariantForm from_real_basis(int degree, const std::array<ExactScalar, 6>& coeffs) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("from_real_basis: degree must be 1 or 2");
  return ComplexInvariantForm::from_coeffs(degree, change_basis(degree, coeffs, real_to_complex()));
}

ComplexInvariantForm structure_d(const ComplexInvariantForm& form) {
  if (form.degree() != 1) throw std::invalid_argument("structure_d: expects a 1-form");
  const auto r = to_real_basis(form);
  // d(dx) = d(dt) = d(dy) = 0, d(dz - x dy) = -dx^dy = -e2.
  std::array<ExactScalar, 6> d{};
  d[1] = -r[3];
  return from_real_basis(2, d);
}

bool is_skew_hermitian(const Matrix2<ComplexInvariantForm>& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(m[j][i] == ExactScalar(-1) * m[i][j].conj())) return false;
  return true;
}

ConnectionMatrix canonical_connection_forms() {
  const ExactScalar k = k_const();
  ConnectionMatrix m{{{{ComplexInvariantForm::zero(1), -k * b(T2)}, {-k * b(T2b), k * (b(T1) + b(T1b))}}}};
  return m;
}

std::array<ComplexInvariantForm, 2> torsion() {
  const auto conn = canonical_connection_forms();
  const std::array<ComplexInvariantForm, 2> coframe{b(T1), b(T2)};
  std::array<ComplexInvariantForm, 2> out{ComplexInvariantForm::zero(2), ComplexInvariantForm::zero(2)};
  for (int i = 0; i < 2; ++i) {
    out[i] = structure_d(coframe[i]);
    for (int j = 0; j < 2; ++j) out[i] += wedge(conn.theta[i][j], coframe[j]);
  }
  return out;
}

CurvatureMatrix curvature() {
  const auto conn = canonical_connection_forms();
  CurvatureMatrix out{{{{ComplexInvariantForm::zero(2), ComplexInvariantForm::zero(2)},
                        {ComplexInvariantForm::zero(2), ComplexInvariantForm::zero(2)}}}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.psi[i][j] = structure_d(conn.theta[i][j]);
      for (int k = 0; k < 2; ++k) out.psi[i][j] += wedge(conn.theta[i][k], conn.theta[k][j]);
    }
  return out;
}

namespace closed_form {

ComplexInvariantForm d_theta2() {
  return -k_const() * (b(T1, T2b) - b(T2, T1b) + b(T1, T2) + b(T1b, T2b));
}

std::array<ComplexInvariantForm, 2> torsion() {
  return {ComplexInvariantForm::zero(2), -k_const() * b(T1b, T2b)};
}

CurvatureMatrix curvature() {
  const ExactScalar e = ExactScalar::rational(1, 8);
  const ExactScalar two = 2;
  return {{{{-e * b(T2, T2b), e * (-b(T1, T2b) + two * b(T2, T1b) - two * b(T1, T2) - b(T1b, T2b))},
            {e * (-b(T2, T1b) + two * b(T1, T2b) + two * b(T1b, T2b) + b(T1, T2)), e * b(T2, T2b)}}}};
}

}  // namespace closed_form

ComplexInvariantForm part_11(const ComplexInvariantForm& f) {
  if (f.degree() != 2) throw std::invalid_argument("part_11: expects a 2-form");
  auto out = ComplexInvariantForm::zero(2);
  for (int a : {0, 1})
    for (int c : {2, 3}) {
      const auto ca = static_cast<Coframe>(a), cc = static_cast<Coframe>(c);
      out += f.coeff(ca, cc) * ComplexInvariantForm::basis(ca, cc);
    }
  return out;
}

std::array<ExactScalar, 6> i_times_real(const ComplexInvariantForm& psi) {
  const auto r = to_real_basis(ExactScalar::i() * psi);
  for (const auto& v : r)
    if (!v.is_real()) throw std::domain_error("i * psi is not a real form");
  return r;
}

InvariantTwoForm ricci_contribution(const ComplexInvariantForm& psi, Grid grid) {
  const auto r = i_times_real(psi);
  std::array<double, 6> v{};
  for (int k = 0; k < 6; ++k) v[k] = r[k].to_complex().real() / (2.0 * std::numbers::pi);
  return InvariantTwoForm::constant(grid, v);
}

InvariantTwoForm ricci_flat(Grid grid) {
  const auto psi = curvature().psi;
  return ricci_contribution(psi[0][0] + psi[1][1], grid);
}

InvariantTwoForm ricci_tilde(const TorusField& F, double c) {
  return -0.5 * ext_d(j_one_form(ext_d(F + c)));
}

std::string connection_report() {
  std::ostringstream os;
  const auto conn = canonical_connection_forms();
  const auto tor = torsion();
  const auto curv = curvature();
  os << "# canonical connection of (g, J), unitary coframe theta^1 = (dx + i dt)/sqrt2,"
        " theta^2 = (dy + i(dz - x dy))/sqrt2\n";
  os << "d theta^1 = " << structure_d(b(T1)).to_string() << '\n';
  os << "d theta^2 = " << structure_d(b(T2)).to_string() << '\n';
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      os << "theta^" << i + 1 << "_" << j + 1 << " = " << conn.theta[i][j].to_string() << '\n';
  for (int i = 0; i < 2; ++i) os << "Theta^" << i + 1 << " = " << tor[i].to_string() << '\n';
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      os << "Psi^" << i + 1 << "_" << j + 1 << " = " << curv.psi[i][j].to_string() << '\n';
  os << "Psi^1_1 + Psi^2_2 = " << (curv.psi[0][0] + curv.psi[1][1]).to_string() << '\n';
  return os.str();
}

}  // namespace ktcy
