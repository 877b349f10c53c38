#pragma once

// Damped Newton-Krylov solver for the reduced Monge-Ampere equation, driven
// along the continuity family nu = e^(tF + c_t), t in [0, 1].

#include <cstdint>
#include <optional>
#include <vector>

#include "ktcy/cy_reduction.hpp"
#include "ktcy/errors.hpp"
#include "ktcy/frame_calculus.hpp"

namespace ktcy {

struct SolverConfig {
  int grid_n = 128;
  double newton_tol = 1e-11;
  int max_newton_iters = 50;
  double armijo_c = 1e-4;
  double admissibility_delta = kDefaultAdmissibilityDelta;
  double t_step_initial = 0.25;
  double t_step_min = 1e-4;
  std::uint64_t seed = 0;

  // Inner linear solve.
  int krylov_restart = 40;
  int krylov_max_iters = 400;
  double krylov_rel_tol = 1e-10;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct StepDiagnostics {
  double residual_before = 0.0;
  double residual_after = 0.0;
  double step_length = 0.0;
  int krylov_iterations = 0;
  double linear_rel_residual = 0.0;
  /// |mean| of the unprojected right-hand side; zero in exact arithmetic.
  double rhs_mean_defect = 0.0;
};

struct StateDiagnostics : Diagnostics {
  int newton_iterations = 0;
  std::vector<double> residual_history;
  std::vector<StepDiagnostics> steps;
  double max_rhs_mean_defect = 0.0;
};

struct ContinuityState {
  double t = 0.0;
  Potential phi;
  double c_t = 0.0;
  StateDiagnostics diagnostics;
  bool converged = false;
};

struct NewtonResult {
  Potential phi;
  StepDiagnostics diagnostics;
};

/// The path stopped because the continuity step fell below t_step_min.
class ContinuationStalled : public Error {
 public:
  ContinuationStalled(const std::string& what, std::vector<ContinuityState> path, double failed_t);
  /// Accepted states up to the stall (may be empty).
  const std::vector<ContinuityState>& path() const { return path_; }
  double failed_t() const { return failed_t_; }

 private:
  std::vector<ContinuityState> path_;
  double failed_t_;
};

/// c_t = -log mean(e^(tF)).
double normalize_ct(const TorusField& F, double t);

/// One damped Newton step for nu(phi) = e^(F + c).
/// Throws LineSearchFailed or LinearSolveStagnated.
NewtonResult newton_step(const Potential& phi, const DensityData& d, const SolverConfig& cfg);

/// Newton iteration to sup|residual| <= newton_tol for the level-t equation.
/// Throws MaxItersExceeded in addition to newton_step's errors.
ContinuityState solve_at_t(const Potential& phi0, const TorusField& F, double t, const SolverConfig& cfg);

/// Adaptive march from t = 0 to t = 1. Returns the accepted states with
/// t > 0; a constant F yields the single state at t = 1.
std::vector<ContinuityState> continuity_solve(const TorusField& F, const SolverConfig& cfg);

struct ProbeResult {
  /// Largest pairwise sup-distance between the converged potentials.
  double max_distance = 0.0;
  /// Largest pairwise coefficient sup-distance between the assembled 2-forms.
  double max_form_distance = 0.0;
  std::vector<Potential> endpoints;
};

/// Re-solves the t = 1 equation from n_starts random admissible
/// perturbations of the continuity endpoint.
ProbeResult uniqueness_probe(const TorusField& F, const SolverConfig& cfg, int n_starts);
/// Same, reusing an already computed endpoint.
ProbeResult uniqueness_probe(const Potential& endpoint, const TorusField& F, const SolverConfig& cfg,
                             int n_starts);

}  // namespace ktcy
