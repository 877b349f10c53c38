// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ktcy/canonical_connection.hpp"
#include "ktcy/continuity_solver.hpp"
#include "ktcy/cy_reduction.hpp"
#include "ktcy/frame_calculus.hpp"
#include "test_support.hpp"

using namespace ktcy;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string violations;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      violations += " [violated: " + what + "]";
    }
  }
};

TorusField preset(const std::string& name, int n) {
  const Grid g(n);
  const double a = 0.5, b = 0.3;
  if (name == "zero") return TorusField::zeros(g);
  if (name == "oneD") return TorusField::sample(g, [a](double x, double) { return a * std::cos(kTwoPi * x); });
  if (name == "checker")
    return TorusField::sample(g, [a](double x, double y) { return a * std::cos(kTwoPi * x) * std::cos(kTwoPi * y); });
  return TorusField::sample(g, [a, b](double x, double y) { return a * std::cos(kTwoPi * (x + y)) + b * std::sin(kTwoPi * y); });
}

const std::vector<std::string> kPresets{"zero", "oneD", "checker", "skew"};

SolverConfig config_for(int n) {
  SolverConfig cfg;
  cfg.grid_n = n;
  return cfg;
}

// Solved paths are shared between criteria.
const std::vector<ContinuityState>& solved(const std::string& name, int n) {
  static std::map<std::pair<std::string, int>, std::vector<ContinuityState>> cache;
  const auto key = std::make_pair(name, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, continuity_solve(preset(name, n), config_for(n))).first;
  return it->second;
}

// ---------------------------------------------------------------- 1

Verdict exact_connection_algebra() {
  Verdict v;
  const auto t0 = Clock::now();
  using F = ComplexInvariantForm;
  const auto T1 = Coframe::theta1, T2 = Coframe::theta2, T1b = Coframe::theta1_bar, T2b = Coframe::theta2_bar;
  auto b1 = [](Coframe a) { return F::basis(a); };
  auto b2 = [](Coframe a, Coframe c) { return F::basis(a, c); };
  const ExactScalar k = ExactScalar::i() / (ExactScalar(2) * ExactScalar::sqrt2());
  const ExactScalar e = ExactScalar::rational(1, 8), two = 2;

  const auto conn = canonical_connection_forms();
  v.require(conn.theta[0][0].is_zero(), "theta^1_1 = 0");
  v.require(conn.theta[0][1] == -k * b1(T2), "theta^1_2");
  v.require(conn.theta[1][0] == -k * b1(T2b), "theta^2_1");
  v.require(conn.theta[1][1] == k * (b1(T1) + b1(T1b)), "theta^2_2");

  v.require(structure_d(b1(T1)).is_zero(), "d theta^1 = 0");
  v.require(structure_d(b1(T2)) == -k * (b2(T1, T2b) - b2(T2, T1b) + b2(T1, T2) + b2(T1b, T2b)), "d theta^2");

  const auto tor = torsion();
  v.require(tor[0].is_zero(), "Theta^1 = 0");
  v.require(tor[1] == -k * b2(T1b, T2b), "Theta^2");

  const auto psi = curvature().psi;
  v.require(psi[0][0] == -e * b2(T2, T2b), "Psi^1_1");
  v.require(psi[0][1] == e * (-b2(T1, T2b) + two * b2(T2, T1b) - two * b2(T1, T2) - b2(T1b, T2b)), "Psi^1_2");
  v.require(psi[1][0] == e * (-b2(T2, T1b) + two * b2(T1, T2b) + two * b2(T1b, T2b) + b2(T1, T2)), "Psi^2_1");
  v.require(psi[1][1] == e * b2(T2, T2b), "Psi^2_2");
  v.require((psi[0][0] + psi[1][1]).is_zero(), "Psi^1_1 + Psi^2_2 = 0");
  v.require(ricci_flat(Grid(8)).sup_norm() == 0.0, "Ric(Omega, J) = 0");

  const double secs = seconds_since(t0);
  v.require(secs < 1.0, "runtime < 1 s");
  v.detail << "all displayed forms equal exactly; runtime " << secs << " s";
  return v;
}

// ---------------------------------------------------------------- 2

Verdict trivial_solution() {
  Verdict v;
  for (int n : {4, 8, 16, 32, 64, 128, 256}) {
    const auto path = continuity_solve(TorusField::zeros(Grid(n)), config_for(n));
    const auto& s = path.back();
    const auto m = metric_matrix(s.phi);
    const auto tr = m[0][0] + m[1][1] + m[2][2] + m[3][3];
    const auto res = residual(s.phi, DensityData(TorusField::zeros(Grid(n)), s.c_t));
    const std::string at = " at n = " + std::to_string(n);
    v.require(path.size() == 1 && s.t == 1.0, "single state at t = 1" + at);
    v.require(s.phi.phi().sup_norm() == 0.0, "phi = 0" + at);
    v.require(res.sup_norm() == 0.0, "residual = 0" + at);
    v.require(trace_u(s.phi).min() == 2.0 && trace_u(s.phi).max() == 2.0, "u = 2" + at);
    v.require(tr.min() == 4.0 && tr.max() == 4.0, "tr_g g~ = 4" + at);
  }
  v.detail << "phi, residual, u - 2 and tr_g g~ - 4 all exactly 0 for n in {4..256}";
  return v;
}

// ---------------------------------------------------------------- 3

Verdict one_d_oracle() {
  Verdict v;
  const auto t0 = Clock::now();
  const int n = 256;
  const double a = 0.5;
  const auto& path = solved("oneD", n);
  const double i0 = std::cyl_bessel_i(0.0, a);
  // e^(a cos s) = I0(a) + 2 sum I_k(a) cos(ks), integrated twice in x.
  const auto oracle = TorusField::sample(Grid(n), [&](double x, double) {
    double phi = 0.0;
    for (int k = 1; k <= 40; ++k)
      phi -= 2.0 * std::cyl_bessel_i(static_cast<double>(k), a) / i0 * std::cos(kTwoPi * k * x) /
             (kTwoPi * kTwoPi * k * k);
    return phi;
  });
  const double err = (path.back().phi.phi() - oracle).sup_norm();
  const double c_err = std::abs(path.back().c_t + std::log(i0));
  const double secs = seconds_since(t0);
  v.require(err <= 1e-8, "sup error <= 1e-8");
  v.require(c_err <= 1e-12, "c = -log I0(a)");
  v.require(secs < 30.0, "runtime < 30 s");
  v.detail << "sup|phi - phi_oracle| = " << err << " at n = 256, |c + log I0| = " << c_err << ", runtime " << secs
           << " s";
  return v;
}

// ---------------------------------------------------------------- 4

Verdict key_identity() {
  Verdict v;
  const double g128 = solved("checker", 128).back().diagnostics.key_identity_sup;
  const double g256 = solved("checker", 256).back().diagnostics.key_identity_sup;
  v.require(g128 <= 1e-8, "sup gap <= 1e-8 at n = 128");
  v.require(g256 < g128, "gap decreases from n = 128 to n = 256");
  v.detail << "checker: sup|Lap~ u - RHS| = " << g128 << " (n = 128), " << g256 << " (n = 256)";
  return v;
}

// ---------------------------------------------------------------- 5

Verdict lemma22() {
  Verdict v;
  double worst = std::numeric_limits<double>::infinity();
  int states = 0;
  for (const auto& name : kPresets)
    for (int n : {64, 128, 256}) {
      if (n == 256 && name != "checker" && name != "oneD") continue;
      for (const auto& s : solved(name, n)) {
        ++states;
        worst = std::min(worst, s.diagnostics.lemma22_margin);
        v.require(s.diagnostics.lemma22_margin >= -1e-6,
                  name + " n = " + std::to_string(n) + " t = " + std::to_string(s.t));
      }
    }
  v.detail << "min margin " << worst << " over " << states << " accepted states";
  return v;
}

// ---------------------------------------------------------------- 6

Verdict normalization_identities() {
  Verdict v;
  std::mt19937_64 rng(2024);
  double nu_err = 0.0, u_err = 0.0, res_err = 0.0;
  int samples = 0;
  for (int n : {8, 16, 32, 64, 128}) {
    const Grid g(n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto raw = remove_mean(testing::random_band_limited(g, rng, std::min(3, n / 2 - 1)));
      const auto h = hessian(raw);
      const double hs = std::max({h.xx.sup_norm(), h.yy.sup_norm(), h.xy.sup_norm()});
      std::uniform_real_distribution<double> strength(0.05, 0.45);
      const Potential p = Potential::projected(raw * (strength(rng) / hs));
      const auto m = reduced_metric(p);
      if (!is_admissible(m)) continue;
      ++samples;
      const auto d = DensityData::normalized(testing::random_band_limited(g, rng, 2, 0.5));
      nu_err = std::max(nu_err, std::abs(integrate(m.nu) - 1.0));
      u_err = std::max(u_err, std::abs(integrate(trace_u(p)) - 2.0));
      res_err = std::max(res_err, std::abs(integrate(residual(p, d))));
    }
  }
  v.require(samples >= 150, "enough admissible samples");
  v.require(nu_err <= 1e-10, "int nu = 1 to 1e-10");
  v.require(u_err <= 1e-12, "int u = 2 to 1e-12");
  v.require(res_err <= 1e-10, "int residual = 0 to 1e-10");
  v.detail << samples << " admissible potentials: max |int nu - 1| = " << nu_err << ", |int u - 2| = " << u_err
           << ", |int residual| = " << res_err;
  return v;
}

// ---------------------------------------------------------------- 7

Verdict cohomology_projection() {
  Verdict v;
  double a_err = 0.0, b_err = 0.0, j_err = 0.0;
  for (const auto& name : kPresets) {
    const auto& s = solved(name, 128).back();
    const auto w = assemble_omega_tilde(s.phi);
    const auto cc = cohomology_coeffs(w);
    a_err = std::max(a_err, std::abs(cc.alpha - 1.0));
    b_err = std::max(b_err, std::abs(cc.beta));
    j_err = std::max(j_err, (j_two_form(w) - w).sup_norm());
  }
  v.require(a_err <= 1e-10, "alpha = 1 to 1e-10");
  v.require(b_err <= 1e-10, "beta = 0 to 1e-10");
  v.require(j_err <= 4 * std::numeric_limits<double>::epsilon(), "J(omega~) = omega~ to round-off");
  v.detail << "all presets at n = 128: |alpha - 1| = " << a_err << ", |beta| = " << b_err
           << ", sup|J(omega~) - omega~| = " << j_err;
  return v;
}

// ---------------------------------------------------------------- 8

Verdict la_inequality_samples() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int violations = 0, eig_mismatch = 0;
  double min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100000; ++i) {
    Eigen::Matrix2d a;
    a << u(rng), u(rng), u(rng), u(rng);
    const Eigen::Matrix2d P = a.transpose() * a + 1e-3 * Eigen::Matrix2d::Identity();
    Eigen::Matrix2d Q;
    Q << u(rng), 0, 0, u(rng);
    Q(0, 1) = Q(1, 0) = u(rng);
    const double val = la_inequality(P, Q);
    min_value = std::min(min_value, val);
    if (val < 0.0) ++violations;
    // PQ is similar to the symmetric P^(1/2) Q P^(1/2): the value is the sum of its squared eigenvalues.
    const Eigen::EigenSolver<Eigen::Matrix2d> es(P * Q);
    const double ref = es.eigenvalues().cwiseAbs2().sum();
    if (std::abs(val - ref) > 1e-9 * std::max(1.0, ref)) ++eig_mismatch;
  }
  v.require(violations == 0, "no negative value");
  v.require(eig_mismatch == 0, "agrees with eigenvalue oracle");
  v.detail << "1e5 samples: " << violations << " violations, min value " << min_value << ", " << eig_mismatch
           << " eigenvalue-oracle mismatches";
  return v;
}

// ---------------------------------------------------------------- 9

Verdict uniqueness() {
  Verdict v;
  const int n = 128;
  auto cfg = config_for(n);
  cfg.seed = 17;
  const auto probe = uniqueness_probe(solved("checker", n).back().phi, preset("checker", n), cfg, 4);
  v.require(probe.endpoints.size() == 4, "four starts");
  v.require(probe.max_distance <= 1e-8, "potentials agree to 1e-8");
  v.require(probe.max_form_distance <= 1e-8, "2-forms agree to 1e-8");
  v.detail << "checker n = 128, 4 starts: max sup|phi_i - phi_j| = " << probe.max_distance
           << ", max form distance = " << probe.max_form_distance;
  return v;
}

// ---------------------------------------------------------------- 10

Verdict ricci_tilde_consistency() {
  Verdict v;
  const Grid g(64);
  double pair_err = 0.0, table_err = 0.0, d_err = 0.0;
  // -1/2 (Fxx, -Fy, Fyx, -Fxy, 0, Fyy), expanded by hand.
  using Fn = std::function<double(double, double)>;
  struct Case {
    Fn f;
    std::array<Fn, 6> table;
  };
  const Fn zero = [](double, double) { return 0.0; };
  const std::vector<Case> table_cases{
      {[](double x, double) { return std::sin(kTwoPi * x); },
       {[](double x, double) { return 2 * kPi * kPi * std::sin(kTwoPi * x); }, zero, zero, zero, zero, zero}},
      {[](double, double y) { return std::sin(kTwoPi * y); },
       {zero, [](double, double y) { return kPi * std::cos(kTwoPi * y); }, zero, zero, zero,
        [](double, double y) { return 2 * kPi * kPi * std::sin(kTwoPi * y); }}},
  };
  for (const auto& c : table_cases) {
    const auto F = TorusField::sample(g, c.f);
    const auto ric = ricci_tilde(F, 0.0);
    for (int j = 0; j < 6; ++j) table_err = std::max(table_err, (ric[j] - TorusField::sample(g, c.table[j])).sup_norm());
  }

  std::vector<TorusField> densities;
  for (const auto& name : kPresets) densities.push_back(preset(name, 64));
  for (const auto& c : table_cases) densities.push_back(TorusField::sample(g, c.f));
  for (const auto& F : densities) {
    const double c = normalize_ct(F, 1.0);
    const auto ric = ricci_tilde(F, c);
    pair_err = std::max(pair_err, std::abs(integrate(wedge_top(ric, omega(g)))));
    pair_err = std::max(pair_err, std::abs(integrate(wedge_top(ric, omega_one(g)))));
    d_err = std::max(d_err, (ric - (-0.5) * ext_d(j_one_form(ext_d(F)))).sup_norm());
  }
  v.require(pair_err <= 1e-10, "pairings with Omega and Omega_1 vanish to 1e-10");
  v.require(table_err <= 1e-10, "hand-expanded table for sin(2 pi x), sin(2 pi y)");
  v.require(d_err <= 1e-10, "equals -1/2 d(J dF)");
  v.detail << "max pairing " << pair_err << ", table error " << table_err << ", |Ric~ + d(J dF)/2| " << d_err;
  return v;
}

// ---------------------------------------------------------------- 11

Verdict a_priori_bound() {
  Verdict v;
  std::ostringstream report;
  for (const auto& name : kPresets) {
    double path_max = 0.0;
    for (const auto& s : solved(name, 128)) {
      v.require(std::isfinite(s.diagnostics.sup_u), name + " sup u finite");
      path_max = std::max(path_max, s.diagnostics.sup_u);
    }
    const double coarse = solved(name, 64).back().diagnostics.sup_u;
    const double fine = solved(name, 128).back().diagnostics.sup_u;
    v.require(std::abs(fine - coarse) <= 1e-6, name + " endpoint sup u stable under n = 64 -> 128");
    report << " " << name << ": max_path sup u = " << path_max << ", |delta| = " << std::abs(fine - coarse) << ";";
  }
  v.detail << "sup u along each path (C not asserted):" << report.str();
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "exact connection, torsion and curvature", exact_connection_algebra},
      {2, "trivial solution", trivial_solution},
      {3, "1D oracle", one_d_oracle},
      {4, "key identity", key_identity},
      {5, "inequality margin", lemma22},
      {6, "normalization identities", normalization_identities},
      {7, "cohomology projection and compatibility", cohomology_projection},
      {8, "linear-algebra inequality", la_inequality_samples},
      {9, "uniqueness", uniqueness},
      {10, "Ricci form consistency", ricci_tilde_consistency},
      {11, "a priori bound exhibit", a_priori_bound},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.title << "): " << v.detail.str()
              << v.violations << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
