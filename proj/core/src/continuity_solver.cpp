#include "ktcy/continuity_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ktcy/krylov.hpp"

namespace ktcy {

void SolverConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SolverConfig: " + msg); };
  if (grid_n < 4 || grid_n % 2 != 0) fail("grid_n must be even and >= 4");
  if (!(newton_tol > 0.0)) fail("newton_tol must be positive");
  if (max_newton_iters < 1) fail("max_newton_iters must be >= 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) fail("armijo_c must lie in (0, 1)");
  if (!(admissibility_delta > 0.0)) fail("admissibility_delta must be positive");
  if (!(t_step_min > 0.0 && t_step_min <= t_step_initial && t_step_initial <= 1.0))
    fail("require 0 < t_step_min <= t_step_initial <= 1");
  if (krylov_restart < 1 || krylov_max_iters < 1) fail("Krylov limits must be positive");
  if (!(krylov_rel_tol > 0.0)) fail("krylov_rel_tol must be positive");
}

ContinuationStalled::ContinuationStalled(const std::string& what, std::vector<ContinuityState> path,
                                         double failed_t)
    : Error(what), path_(std::move(path)), failed_t_(failed_t) {}

double normalize_ct(const TorusField& F, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("normalize_ct: t outside [0, 1]");
  return 0.0 - std::log(integrate(exp(t * F)));
}

namespace {

// Linearized Monge-Ampere operator d -> B d_xx + A d_yy - 2 D d_xy,
// projected onto mean-free fields.
class LinearizedOperator {
 public:
  LinearizedOperator(const ReducedMetric& m) : m_(m) {}

  void operator()(std::span<const double> in, std::span<double> out) const {
    const Grid g = m_.A.grid();
    const auto h = hessian(TorusField(g, std::vector<double>(in.begin(), in.end())));
    const auto A = m_.A.values(), B = m_.B.values(), D = m_.D.values();
    const auto xx = h.xx.values(), yy = h.yy.values(), xy = h.xy.values();
    double mean = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = B[k] * xx[k] + A[k] * yy[k] - 2.0 * D[k] * xy[k];
      mean += out[k];
    }
    mean /= static_cast<double>(out.size());
    for (auto& v : out) v -= mean;
  }

 private:
  const ReducedMetric& m_;
};

void inverse_laplacian_map(const Grid& g, std::span<const double> in, std::span<double> out) {
  const auto f = remove_mean(TorusField(g, std::vector<double>(in.begin(), in.end())));
  const auto sol = invert_laplacian(f);
  std::copy(sol.values().begin(), sol.values().end(), out.begin());
}

}  // namespace

NewtonResult newton_step(const Potential& phi, const DensityData& d, const SolverConfig& cfg) {
  const Grid g = phi.grid();
  const auto m = reduced_metric(phi);
  if (!is_admissible(m, 0.0)) throw DegenerateMetric(m.nu.min());

  const auto dens = d.density();
  const auto r = m.nu - dens;
  StepDiagnostics diag;
  diag.residual_before = r.sup_norm();
  diag.residual_after = diag.residual_before;
  if (diag.residual_before == 0.0) return {phi, diag};

  diag.rhs_mean_defect = std::abs(integrate(r));
  const auto rhs = remove_mean(-r);

  const LinearizedOperator op(m);
  const auto precond = [&g](std::span<const double> in, std::span<double> out) {
    inverse_laplacian_map(g, in, out);
  };
  const GmresOptions opts{cfg.krylov_restart, cfg.krylov_max_iters, cfg.krylov_rel_tol};
  auto sol = gmres(op, precond, rhs.values(), opts);
  diag.krylov_iterations = sol.iterations;
  diag.linear_rel_residual = sol.rel_residual;
  if (!sol.converged) {
    std::ostringstream os;
    os << "linear solve stagnated at relative residual " << sol.rel_residual << " after " << sol.iterations
       << " iterations";
    throw LinearSolveStagnated(os.str());
  }
  const auto delta = remove_mean(TorusField(g, std::move(sol.x)));

  constexpr double kMinStep = 0x1p-30;
  for (double s = 1.0; s >= kMinStep; s *= 0.5) {
    Potential trial = Potential::projected(phi.phi() + s * delta);
    const auto tm = reduced_metric(trial);
    if (!is_admissible(tm, cfg.admissibility_delta)) continue;
    const double r_new = (tm.nu - dens).sup_norm();
    if (r_new <= (1.0 - cfg.armijo_c * s) * diag.residual_before) {
      diag.step_length = s;
      diag.residual_after = r_new;
      return {std::move(trial), diag};
    }
  }
  std::ostringstream os;
  os << "line search failed from residual " << diag.residual_before;
  throw LineSearchFailed(os.str());
}

ContinuityState solve_at_t(const Potential& phi0, const TorusField& F, double t, const SolverConfig& cfg) {
  cfg.validate();
  if (!(phi0.grid() == F.grid())) throw std::invalid_argument("solve_at_t: potential and F grids differ");
  const double c_t = normalize_ct(F, t);
  const DensityData d(t * F, c_t);

  ContinuityState state{t, phi0, c_t, {}, false};
  auto& diag = state.diagnostics;
  for (int iter = 0;; ++iter) {
    const double r = residual(state.phi, d).sup_norm();
    diag.residual_history.push_back(r);
    if (r <= cfg.newton_tol) break;
    if (iter == cfg.max_newton_iters) {
      std::ostringstream os;
      os << "Newton did not converge in " << cfg.max_newton_iters << " iterations at t = " << t
         << " (residual " << r << ")";
      throw MaxItersExceeded(os.str());
    }
    auto step = newton_step(state.phi, d, cfg);
    diag.max_rhs_mean_defect = std::max(diag.max_rhs_mean_defect, step.diagnostics.rhs_mean_defect);
    diag.steps.push_back(step.diagnostics);
    state.phi = std::move(step.phi);
    diag.newton_iterations = iter + 1;
  }
  static_cast<Diagnostics&>(diag) = diagnose(state.phi, d);
  state.converged = true;
  return state;
}

std::vector<ContinuityState> continuity_solve(const TorusField& F, const SolverConfig& cfg) {
  cfg.validate();
  if (cfg.grid_n != F.n()) throw std::invalid_argument("continuity_solve: grid_n does not match F");
  const Potential zero = Potential::zero(F.grid());

  // tF + c_t is then constant in t and the family is trivial.
  if (F.max() == F.min()) return {solve_at_t(zero, F, 1.0, cfg)};

  std::vector<ContinuityState> path;
  double t = 0.0;
  double h = cfg.t_step_initial;
  Potential warm = zero;
  while (t < 1.0) {
    const double t_try = std::min(1.0, t + h);
    try {
      path.push_back(solve_at_t(warm, F, t_try, cfg));
      warm = path.back().phi;
      t = t_try;
      h = std::min(1.0, 1.5 * h);
    } catch (const Error& e) {
      if (dynamic_cast<const ContinuationStalled*>(&e)) throw;
      h *= 0.5;
      if (h < cfg.t_step_min) {
        std::ostringstream os;
        os << "continuation stalled at t = " << t << " trying t = " << t_try << ": " << e.what();
        throw ContinuationStalled(os.str(), std::move(path), t_try);
      }
    }
  }
  return path;
}

namespace {

TorusField random_low_mode_field(Grid g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  struct Mode {
    int k, l;
    double a, b;
  };
  std::vector<Mode> modes;
  for (int k = 0; k <= 2; ++k)
    for (int l = -2; l <= 2; ++l) {
      if (k == 0 && l <= 0) continue;
      const double a = coef(rng);
      const double b = coef(rng);
      modes.push_back({k, l, a, b});
    }
  return TorusField::sample(g, [&](double x, double y) {
    double v = 0.0;
    for (const auto& m : modes) {
      const double arg = 2.0 * std::numbers::pi * (m.k * x + m.l * y);
      v += m.a * std::cos(arg) + m.b * std::sin(arg);
    }
    return v;
  });
}

double max_pairwise(const std::vector<Potential>& ps) {
  double d = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) d = std::max(d, (ps[i].phi() - ps[j].phi()).sup_norm());
  return d;
}

}  // namespace

ProbeResult uniqueness_probe(const Potential& endpoint, const TorusField& F, const SolverConfig& cfg,
                             int n_starts) {
  if (n_starts < 2) throw std::invalid_argument("uniqueness_probe needs at least two starts");
  const Grid g = F.grid();
  const auto base = reduced_metric(endpoint);
  const double floor_metric = std::min({base.A.min(), base.B.min(), std::sqrt(base.nu.min())});

  std::mt19937_64 rng(cfg.seed);
  ProbeResult out;
  for (int s = 0; s < n_starts; ++s) {
    const auto pert = remove_mean(random_low_mode_field(g, rng));
    const auto h = hessian(pert);
    const double hess_sup = std::max({h.xx.sup_norm(), h.yy.sup_norm(), h.xy.sup_norm()});
    double scale = 0.05 * floor_metric / hess_sup;
    Potential start = endpoint;
    for (int attempt = 0; attempt < 60; ++attempt, scale *= 0.5) {
      Potential candidate = Potential::projected(endpoint.phi() + scale * pert);
      if (is_admissible(reduced_metric(candidate), cfg.admissibility_delta)) {
        start = std::move(candidate);
        break;
      }
    }
    out.endpoints.push_back(solve_at_t(start, F, 1.0, cfg).phi);
  }
  out.max_distance = max_pairwise(out.endpoints);
  for (std::size_t i = 0; i < out.endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < out.endpoints.size(); ++j) {
      const auto diff = assemble_omega_tilde(out.endpoints[i]) - assemble_omega_tilde(out.endpoints[j]);
      out.max_form_distance = std::max(out.max_form_distance, diff.sup_norm());
    }
  return out;
}

ProbeResult uniqueness_probe(const TorusField& F, const SolverConfig& cfg, int n_starts) {
  if (n_starts < 2) throw std::invalid_argument("uniqueness_probe needs at least two starts");
  const auto path = continuity_solve(F, cfg);
  return uniqueness_probe(path.back().phi, F, cfg, n_starts);
}

}  // namespace ktcy
