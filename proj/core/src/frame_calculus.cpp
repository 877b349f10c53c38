#include "ktcy/frame_calculus.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ktcy/field_io.hpp"

namespace ktcy {

namespace {

// 1-form factors of each basis 2-form: 0 = dx, 1 = dt, 2 = dy, 3 = dz - x dy.
constexpr std::array<std::array<int, 2>, 6> kFactors{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr std::array<std::string_view, 6> kNames{"dx^dt", "dx^dy", "dx^(dz-xdy)", "dt^dy", "dt^(dz-xdy)",
                                                 "dy^(dz-xdy)"};

int permutation_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

std::array<std::array<int, 6>, 6> build_pairing_table() {
  std::array<std::array<int, 6>, 6> t{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      t[i][j] = permutation_sign({kFactors[i][0], kFactors[i][1], kFactors[j][0], kFactors[j][1]});
  // Hand-checkable anchors.
  if (t[0][5] != 1 || t[1][4] != -1 || t[2][3] != 1) throw std::logic_error("pairing table sign mismatch");
  return t;
}

void require_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("forms live on different grids");
}

}  // namespace

InvariantOneForm::InvariantOneForm(TorusField a1, TorusField a2, TorusField a3, TorusField a4)
    : f1(std::move(a1)), f2(std::move(a2)), f3(std::move(a3)), f4(std::move(a4)) {
  require_grid(f1.grid(), f2.grid());
  require_grid(f1.grid(), f3.grid());
  require_grid(f1.grid(), f4.grid());
}

InvariantOneForm InvariantOneForm::zero(Grid grid) {
  const auto z = TorusField::zeros(grid);
  return {z, z, z, z};
}

InvariantTwoForm::InvariantTwoForm(std::array<TorusField, 6> coeffs) : c(std::move(coeffs)) {
  for (const auto& f : c) require_grid(c[0].grid(), f.grid());
}

InvariantTwoForm InvariantTwoForm::zero(Grid grid) { return constant(grid, {0, 0, 0, 0, 0, 0}); }

InvariantTwoForm InvariantTwoForm::constant(Grid grid, const std::array<double, 6>& v) {
  return InvariantTwoForm({TorusField::constant(grid, v[0]), TorusField::constant(grid, v[1]),
                           TorusField::constant(grid, v[2]), TorusField::constant(grid, v[3]),
                           TorusField::constant(grid, v[4]), TorusField::constant(grid, v[5])});
}

InvariantTwoForm& InvariantTwoForm::operator+=(const InvariantTwoForm& other) {
  for (int k = 0; k < 6; ++k) c[k] += other.c[k];
  return *this;
}

InvariantTwoForm& InvariantTwoForm::operator-=(const InvariantTwoForm& other) {
  for (int k = 0; k < 6; ++k) c[k] -= other.c[k];
  return *this;
}

double InvariantTwoForm::sup_norm() const {
  double m = 0.0;
  for (const auto& f : c) m = std::max(m, f.sup_norm());
  return m;
}

InvariantTwoForm operator+(InvariantTwoForm a, const InvariantTwoForm& b) { return a += b; }
InvariantTwoForm operator-(InvariantTwoForm a, const InvariantTwoForm& b) { return a -= b; }

InvariantTwoForm operator*(double s, const InvariantTwoForm& w) {
  return InvariantTwoForm({s * w.c[0], s * w.c[1], s * w.c[2], s * w.c[3], s * w.c[4], s * w.c[5]});
}

std::string_view basis_name(int k) { return kNames.at(static_cast<std::size_t>(k)); }

InvariantTwoForm omega(Grid grid) { return InvariantTwoForm::constant(grid, {1, 0, 0, 0, 0, 1}); }
InvariantTwoForm omega_one(Grid grid) { return InvariantTwoForm::constant(grid, {0, 0, 1, 1, 0, 0}); }

InvariantOneForm j_one_form(const InvariantOneForm& a) { return {-a.f2, a.f1, -a.f4, a.f3}; }

InvariantTwoForm j_two_form(const InvariantTwoForm& w) {
  // e1 -> e1, e2 <-> e5, e3 -> -e4, e4 -> -e3, e6 -> e6
  return InvariantTwoForm({w.c[0], w.c[4], -w.c[3], -w.c[2], w.c[1], w.c[5]});
}

InvariantOneForm ext_d(const TorusField& f) {
  const auto z = TorusField::zeros(f.grid());
  return {derivative(f, Partial::x), z, derivative(f, Partial::y), z};
}

InvariantTwoForm ext_d(const InvariantOneForm& a) {
  const Grid g = a.grid();
  return InvariantTwoForm({derivative(a.f2, Partial::x),
                           derivative(a.f3, Partial::x) - derivative(a.f1, Partial::y) - a.f4,
                           derivative(a.f4, Partial::x), -derivative(a.f2, Partial::y), TorusField::zeros(g),
                           derivative(a.f4, Partial::y)});
}

const std::array<std::array<int, 6>, 6>& pairing_table() {
  static const auto table = build_pairing_table();
  return table;
}

TorusField wedge_top(const InvariantTwoForm& w1, const InvariantTwoForm& w2) {
  require_grid(w1.grid(), w2.grid());
  const auto& t = pairing_table();
  std::vector<double> out(w1.grid().size(), 0.0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (t[i][j] == 0) continue;
      const double s = t[i][j];
      const auto a = w1.c[i].values();
      const auto b = w2.c[j].values();
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += s * a[k] * b[k];
    }
  return TorusField(w1.grid(), std::move(out));
}

CohomologyCoeffs cohomology_coeffs(const InvariantTwoForm& w) {
  const Grid g = w.grid();
  const auto om = omega(g);
  const auto om1 = omega_one(g);
  return {integrate(wedge_top(w, om)) / integrate(wedge_top(om, om)),
          integrate(wedge_top(w, om1)) / integrate(wedge_top(om1, om1))};
}

double j_invariance_defect(const InvariantTwoForm& w) { return (j_two_form(w) - w).sup_norm(); }

void export_two_form(const std::filesystem::path& dir, std::string_view stem, const InvariantTwoForm& w) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "KTCY v1";
  manifest["grid_n"] = w.grid().n();
  manifest["coframe"] = {"dx", "dt", "dy", "dz-xdy"};
  for (int k = 0; k < 6; ++k) {
    const std::string file = std::string(stem) + "_e" + std::to_string(k + 1) + ".ktcy";
    write_ktcy(dir / file, w.c[k]);
    manifest["files"].push_back({{"file", file}, {"basis", std::string(basis_name(k))}});
  }
  std::ofstream os(dir / (std::string(stem) + "_manifest.json"));
  os << manifest.dump(2) << '\n';
}

}  // namespace ktcy
