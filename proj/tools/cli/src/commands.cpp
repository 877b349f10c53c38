#include "ktcy_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ktcy/canonical_connection.hpp"
#include "ktcy/field_io.hpp"
#include "ktcy_cli/report.hpp"

namespace ktcy::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ostream& log_of(const RunOptions& o) {
  static std::ostringstream sink;
  if (o.log) return *o.log;
  sink.str({});
  return sink;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory '" + dir.string() + "'");
}

SolverConfig config_for(const ProblemSpec& spec, int n) {
  SolverConfig cfg = spec.solver;
  cfg.grid_n = n;
  return cfg;
}

struct PathOutcome {
  std::vector<ContinuityState> path;
  bool stalled = false;
  std::string error;
  double failed_t = 0.0;
};

PathOutcome solve_path(const TorusField& F, const SolverConfig& cfg) {
  PathOutcome out;
  try {
    out.path = continuity_solve(F, cfg);
  } catch (const ContinuationStalled& e) {
    out.path = e.path();
    out.stalled = true;
    out.error = e.what();
    out.failed_t = e.failed_t();
  } catch (const Error& e) {
    out.stalled = true;
    out.error = e.what();
    out.failed_t = 1.0;
  }
  return out;
}

OrderedJson path_json(const PathOutcome& o) {
  auto arr = OrderedJson::array();
  for (const auto& s : o.path) arr.push_back(state_json(s));
  return arr;
}

void add_status(OrderedJson& j, const PathOutcome& o) {
  j["status"] = o.stalled ? "stalled" : "converged";
  if (o.stalled) {
    j["error"] = o.error;
    j["failed_t"] = o.failed_t;
  }
}

std::string index_tag(std::size_t i) {
  std::ostringstream os;
  os << 't' << std::setw(3) << std::setfill('0') << i;
  return os.str();
}

void dump_fields(const fs::path& dir, const TorusField& F, const PathOutcome& o) {
  write_ktcy(dir / "density.ktcy", F);
  for (std::size_t i = 0; i < o.path.size(); ++i) {
    const auto& s = o.path[i];
    const auto tag = index_tag(i + 1);
    const DensityData d(s.t * F, s.c_t, 1e-9);
    write_ktcy(dir / (tag + "_phi.ktcy"), s.phi.phi());
    write_ktcy(dir / (tag + "_u.ktcy"), trace_u(s.phi));
    write_ktcy(dir / (tag + "_nu.ktcy"), reduced_metric(s.phi).nu);
    write_ktcy(dir / (tag + "_residual.ktcy"), residual(s.phi, d));
  }
  if (o.path.empty()) return;
  const auto& last = o.path.back();
  const DensityData d(last.t * F, last.c_t, 1e-9);
  write_csv(dir / "phi.csv", last.phi.phi());
  write_csv(dir / "u.csv", trace_u(last.phi));
  write_csv(dir / "nu.csv", reduced_metric(last.phi).nu);
  write_csv(dir / "residual.csv", residual(last.phi, d));
  export_two_form(dir, "omega_tilde", assemble_omega_tilde(last.phi));
  export_two_form(dir, "ricci_tilde", ricci_tilde(last.t * F, last.c_t));
  std::ofstream(dir / "connection_report.txt") << connection_report();
}

struct Check {
  std::string suite;
  std::string name;
  std::string invariant;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// measured <= tolerance
Check bounded(std::string suite, std::string name, std::string invariant, double measured, double tol) {
  return {std::move(suite), std::move(name), std::move(invariant), measured, tol, measured <= tol};
}

// measured >= -tolerance
Check lower_bounded(std::string suite, std::string name, std::string invariant, double measured, double tol) {
  return {std::move(suite), std::move(name), std::move(invariant), measured, tol, measured >= -tol};
}

void identity_checks(const TorusField& F, const ContinuityState& s, const SolverConfig& cfg, std::vector<Check>& out) {
  const std::string suite = "identities";
  const auto& d = s.diagnostics;
  const DensityData dens(s.t * F, s.c_t, 1e-9);
  const auto m = reduced_metric(s.phi);
  out.push_back(bounded(suite, "residual_sup", "sup|nu - e^(F + c)| <= newton_tol", d.residual_sup, cfg.newton_tol));
  out.push_back(bounded(suite, "key_identity_sup", "sup|Lap~ u - RHS| <= 1e-8", d.key_identity_sup, 1e-8));
  out.push_back(bounded(suite, "integral_nu", "|mean(nu) - 1| <= 1e-10", std::abs(integrate(m.nu) - 1.0), 1e-10));
  out.push_back(
      bounded(suite, "integral_u", "|mean(u) - 2| <= 1e-12", std::abs(integrate(trace_u(s.phi)) - 2.0), 1e-12));
  out.push_back(bounded(suite, "integral_residual", "|mean(residual)| <= 1e-10",
                        std::abs(integrate(residual(s.phi, dens))), 1e-10));
  out.push_back(bounded(suite, "alpha", "|alpha - 1| <= 1e-10", std::abs(d.alpha - 1.0), 1e-10));
  out.push_back(bounded(suite, "beta", "|beta| <= 1e-10", std::abs(d.beta), 1e-10));
  out.push_back(bounded(suite, "j_invariance", "sup|J(omega~) - omega~| <= 1e-14",
                        j_invariance_defect(assemble_omega_tilde(s.phi)), 1e-14));
}

void connection_checks(const TorusField& F, std::vector<Check>& out) {
  const std::string suite = "connection";
  auto exact = [&](const std::string& name, const std::string& invariant, bool ok) {
    out.push_back({suite, name, invariant, ok ? 0.0 : 1.0, 0.0, ok});
  };
  const auto conn = canonical_connection_forms();
  const auto tor = torsion();
  const auto curv = curvature();
  const auto cf_tor = closed_form::torsion();
  const auto cf_curv = closed_form::curvature();
  exact("skew_hermitian_connection", "theta^i_j skew-Hermitian", is_skew_hermitian(conn.theta));
  exact("d_theta2", "d theta^2 matches its closed form", structure_d(ComplexInvariantForm::basis(Coframe::theta2)) ==
                                                              closed_form::d_theta2());
  exact("torsion", "Theta^i match their closed forms", tor == cf_tor);
  exact("torsion_no_11_part", "Theta^i have no (1,1) part", part_11(tor[0]).is_zero() && part_11(tor[1]).is_zero());
  bool curv_ok = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) curv_ok = curv_ok && curv.psi[i][j] == cf_curv.psi[i][j];
  exact("curvature", "Psi^i_j match their closed forms", curv_ok);
  exact("trace_free_curvature", "Psi^1_1 + Psi^2_2 = 0", (curv.psi[0][0] + curv.psi[1][1]).is_zero());
  exact("ricci_flat", "Ric(Omega, J) = 0", ricci_flat(F.grid()).sup_norm() == 0.0);

  const auto ric = ricci_tilde(F, 0.0);
  out.push_back(bounded(suite, "ricci_tilde_pairing_omega", "|int Ric~ ^ Omega| <= 1e-10",
                        std::abs(integrate(wedge_top(ric, omega(F.grid())))), 1e-10));
  out.push_back(bounded(suite, "ricci_tilde_pairing_omega1", "|int Ric~ ^ Omega_1| <= 1e-10",
                        std::abs(integrate(wedge_top(ric, omega_one(F.grid())))), 1e-10));
}

OrderedJson checks_json(const std::vector<Check>& checks) {
  auto arr = OrderedJson::array();
  for (const auto& c : checks)
    arr.push_back({{"suite", c.suite},
                   {"name", c.name},
                   {"invariant", c.invariant},
                   {"measured", c.measured},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed}});
  return arr;
}

bool needs_solve(Suite s) { return s != Suite::connection; }

bool includes(Suite requested, Suite s) { return requested == Suite::all || requested == s; }

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "identities") return Suite::identities;
  if (name == "lemma22") return Suite::lemma22;
  if (name == "connection") return Suite::connection;
  if (name == "uniqueness") return Suite::uniqueness;
  if (name == "all") return Suite::all;
  throw InputError("unknown suite '" + name + "' (expected identities, lemma22, connection, uniqueness or all)");
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::identities: return "identities";
    case Suite::lemma22: return "lemma22";
    case Suite::connection: return "connection";
    case Suite::uniqueness: return "uniqueness";
    case Suite::all: return "all";
  }
  return "all";
}

double roundoff_floor(int n, double phi_sup) {
  const double k = std::numbers::pi * n;
  return 10.0 * std::numeric_limits<double>::epsilon() * k * k * k * phi_sup;
}

int run_solve(const ProblemSpec& spec, const RunOptions& opts) {
  const auto t0 = Clock::now();
  auto& log = log_of(opts);
  spec.validate();
  prepare_out_dir(opts.out_dir);
  const int n = spec.resolved_n();
  const auto F = build_density(spec, n);
  const auto cfg = config_for(spec, n);

  const auto outcome = solve_path(F, cfg);
  for (const auto& s : outcome.path)
    log << "t = " << s.t << "  newton " << s.diagnostics.newton_iterations << "  residual "
        << s.diagnostics.residual_sup << "  sup_u " << s.diagnostics.sup_u << '\n';
  const double solve_seconds = seconds_since(t0);

  OrderedJson report;
  report["spec_echo"] = spec_echo(spec);
  report["grid_n"] = n;
  add_status(report, outcome);
  report["path"] = path_json(outcome);
  report["final"] = outcome.path.empty() ? OrderedJson(nullptr) : final_json(outcome.path.back());
  if (opts.dump_fields) dump_fields(opts.out_dir, F, outcome);
  report["timings"] = {{"solve_seconds", solve_seconds}, {"total_seconds", seconds_since(t0)}};
  if (!all_finite(report)) log << "warning: report contains non-finite values\n";
  write_json(opts.out_dir / "report.json", report);

  if (outcome.stalled) {
    log << "stalled: " << outcome.error << '\n';
    return kStalled;
  }
  log << "converged at t = 1, residual " << outcome.path.back().diagnostics.residual_sup << '\n';
  return kOk;
}

int run_verify(const ProblemSpec& spec, Suite suite, int starts, const RunOptions& opts) {
  const auto t0 = Clock::now();
  auto& log = log_of(opts);
  spec.validate();
  if (starts < 2) throw InputError("--starts must be at least 2");
  prepare_out_dir(opts.out_dir);
  const int n = spec.resolved_n();
  const auto F = build_density(spec, n);
  const auto cfg = config_for(spec, n);

  OrderedJson report;
  report["spec_echo"] = spec_echo(spec);
  report["grid_n"] = n;
  report["suite"] = suite_name(suite);

  std::vector<Check> checks;
  PathOutcome outcome;
  if (needs_solve(suite)) {
    outcome = solve_path(F, cfg);
    add_status(report, outcome);
    report["path"] = path_json(outcome);
  }
  if (includes(suite, Suite::connection)) connection_checks(F, checks);
  if (!outcome.stalled && !outcome.path.empty()) {
    const auto& last = outcome.path.back();
    if (includes(suite, Suite::identities)) identity_checks(F, last, cfg, checks);
    if (includes(suite, Suite::lemma22))
      for (const auto& s : outcome.path) {
        std::ostringstream name;
        name << "lemma22_margin[t=" << s.t << "]";
        checks.push_back(lower_bounded("lemma22", name.str(), "min(Lap~ u) - min(Lap F_t) >= -1e-6",
                                       s.diagnostics.lemma22_margin, 1e-6));
      }
    if (includes(suite, Suite::uniqueness)) {
      const auto probe = uniqueness_probe(last.phi, F, cfg, starts);
      checks.push_back(bounded("uniqueness", "max_distance", "max pairwise sup|phi_i - phi_j| <= 1e-8",
                               probe.max_distance, 1e-8));
      checks.push_back(bounded("uniqueness", "max_form_distance", "max pairwise sup|omega~_i - omega~_j| <= 1e-8",
                               probe.max_form_distance, 1e-8));
    }
  }

  bool all_passed = true;
  for (const auto& c : checks) {
    all_passed = all_passed && c.passed;
    log << (c.passed ? "PASS " : "FAIL ") << c.suite << '/' << c.name << ": " << c.invariant << " (measured "
        << c.measured << ")\n";
  }
  report["checks"] = checks_json(checks);
  report["passed"] = all_passed && !outcome.stalled;
  report["timings"] = {{"total_seconds", seconds_since(t0)}};
  write_json(opts.out_dir / "verify.json", report);

  if (outcome.stalled) {
    log << "stalled: " << outcome.error << '\n';
    return kStalled;
  }
  return all_passed ? kOk : kCheckFailed;
}

int run_sweep(const ProblemSpec& spec, const std::vector<int>& resolutions, const RunOptions& opts) {
  const auto t0 = Clock::now();
  auto& log = log_of(opts);
  spec.validate();
  if (resolutions.empty()) throw InputError("--resolutions is empty");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    const int n = resolutions[i];
    if (n < 4 || n % 2 != 0) throw InputError("resolution " + std::to_string(n) + " must be even and >= 4");
    if (i > 0 && n <= resolutions[i - 1]) throw InputError("resolutions must be increasing");
  }
  prepare_out_dir(opts.out_dir);

  OrderedJson report;
  report["spec_echo"] = spec_echo(spec);
  auto rows = OrderedJson::array();
  bool stalled = false;
  std::vector<double> gaps, floors, sup_us;
  for (int n : resolutions) {
    const auto F = build_density(spec, n);
    const auto outcome = solve_path(F, config_for(spec, n));
    OrderedJson row;
    row["grid_n"] = n;
    add_status(row, outcome);
    if (outcome.stalled) {
      stalled = true;
      rows.push_back(row);
      log << "n = " << n << ": stalled\n";
      break;
    }
    const auto& last = outcome.path.back();
    const auto& d = last.diagnostics;
    const double floor = roundoff_floor(n, last.phi.phi().sup_norm());
    row["sup_u"] = d.sup_u;
    row["residual_sup"] = d.residual_sup;
    row["key_identity_sup"] = d.key_identity_sup;
    row["roundoff_floor"] = floor;
    row["min_nu"] = d.min_nu;
    row["lemma22_margin"] = d.lemma22_margin;
    row["path_length"] = outcome.path.size();
    rows.push_back(row);
    gaps.push_back(d.key_identity_sup);
    floors.push_back(floor);
    sup_us.push_back(d.sup_u);
    log << "n = " << n << "  key_identity_sup " << d.key_identity_sup << "  (floor " << floor << ")  sup_u "
        << std::setprecision(15) << d.sup_u << std::setprecision(6) << "  residual " << d.residual_sup << '\n';
  }

  bool strictly_decreasing = true;
  bool decay_ok = true;
  double sup_u_change = 0.0;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const bool dec = gaps[i] < gaps[i - 1];
    strictly_decreasing = strictly_decreasing && dec;
    decay_ok = decay_ok && (dec || gaps[i] <= floors[i]);
    sup_u_change = std::max(sup_u_change, std::abs(sup_us[i] - sup_us[i - 1]));
  }
  report["resolutions"] = rows;
  report["key_identity_strictly_decreasing"] = strictly_decreasing;
  report["key_identity_decay_ok"] = decay_ok;
  report["sup_u_max_change"] = sup_u_change;
  report["timings"] = {{"total_seconds", seconds_since(t0)}};
  write_json(opts.out_dir / "sweep.json", report);

  log << "key_identity_sup strictly decreasing: " << (strictly_decreasing ? "yes" : "no")
      << "; decreasing or at round-off floor: " << (decay_ok ? "yes" : "no") << '\n';
  if (stalled) return kStalled;
  return decay_ok ? kOk : kCheckFailed;
}

}  // namespace ktcy::cli
