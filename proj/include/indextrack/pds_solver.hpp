#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

#include "indextrack/objective.hpp"

namespace indextrack {

/// Sparsity constraint: at most k nonzero weights (Portfolio mode) or at most
/// k weights changed from a reference portfolio w0 (Turnover mode).
struct SparsitySet {
  enum class Mode { Portfolio, Turnover };

  Mode mode = Mode::Portfolio;
  Eigen::Index k = 1;
  Eigen::VectorXd w0;  ///< reference portfolio, Turnover mode only

  static SparsitySet portfolio(Eigen::Index k1);
  static SparsitySet turnover(Eigen::Index k2, Eigen::VectorXd w0);

  /// Projection onto the set (hard thresholding, shifted in Turnover mode).
  Eigen::VectorXd project(const Eigen::VectorXd& z) const;
};

/// Per-weight bounds l <= w_i <= u. The default lower bound 0 forbids short
/// selling.
struct BoxSet {
  double l = 0.0;
  double u = 1.0;
};

/// One sparse tracking problem:
///   minimize  objective(w)
///   subject to  w in sparsity set, l <= w <= u, 1^T w = 1.
///
/// Construction validates that dimensions agree and that the constraint system
/// is not trivially empty: k*u >= 1 (k capped weights must be able to reach
/// total weight 1) and N*l <= 1. Violations throw std::invalid_argument.
class TrackingProblem {
 public:
  TrackingProblem(Objective objective, SparsitySet sparsity, BoxSet box);

  const Objective& objective() const { return objective_; }
  const SparsitySet& sparsity() const { return sparsity_; }
  const BoxSet& box() const { return box_; }
  Eigen::Index n() const { return objective_.n(); }

 private:
  Objective objective_;
  SparsitySet sparsity_;
  BoxSet box_;
};

/// Primal starting point:
///   A: w = 0
///   B: w = (1/N) 1
///   C: Portfolio mode: 1/k on k seeded uniformly-random distinct indices;
///      Turnover mode: w = w0.
enum class InitMode { A, B, C };

struct SolverConfig {
  /// Stepsizes; when unset they come from default_stepsizes(beta). Custom
  /// values must satisfy 1/gamma1 - 2*gamma2 >= beta/2 (checked at solve
  /// start).
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  double decay = 0.999;  ///< per-iteration multiplier applied to both stepsizes
  double stop_tol = 1e-5;
  long max_iter = 50000;
  InitMode init = InitMode::A;
  std::optional<std::uint64_t> seed;  ///< for InitMode::C index sampling
};

struct SolverState {
  Eigen::VectorXd w;
  Eigen::VectorXd v1;  ///< dual for the box constraint
  Eigen::VectorXd v2;  ///< dual for the sum-to-one constraint
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double decay = 1.0;
  long iter = 0;
  double last_rel_change = std::numeric_limits<double>::infinity();
};

/// Constraint residuals of a weight vector. The sparsity constraint is exact
/// by construction of the final projection; box and sum-to-one are enforced
/// through dual variables and hold only approximately at finite iteration
/// counts.
struct FeasibilityReport {
  double sum_to_one_residual = 0.0;   ///< |1^T w - 1|
  double box_violation = 0.0;         ///< max_i max(l - w_i, w_i - u, 0)
  Eigen::Index sparsity_count = 0;    ///< nnz(w) or #{i : w_i != w0_i}
  bool sparsity_ok = true;            ///< sparsity_count <= k
};

struct SolveResult {
  Eigen::VectorXd w;
  long iterations = 0;
  bool converged = false;
  double objective_value = 0.0;
  FeasibilityReport feasibility;
  bool uniform_fallback = false;  ///< set by the baseline on empty selection
};

/// gamma2 = 1, gamma1 = 0.99 / (beta/2 + 2*gamma2). The stepsize condition
/// 1/gamma1 - 2*gamma2 >= beta/2 then holds with 1% slack (the dual operator
/// stacks the box and sum-to-one identities, so lambda_max(A^T A) = 2).
std::pair<double, double> default_stepsizes(double beta);

/// Builds the starting state: primal per cfg.init, duals v1 = v2 = 0,
/// stepsizes from cfg or default_stepsizes(beta). Validates the stepsize
/// condition and config ranges. InitMode::C without an explicit seed warns on
/// stderr and falls back to seed 0.
SolverState initialize(const TrackingProblem& problem, const SolverConfig& cfg);

/// One primal-dual iteration:
///   1. w+  = P_sparsity(w - gamma1 (grad(w) + v1 + v2))
///   2. v1 += gamma2 (2 w+ - w);  v2 += gamma2 (2 w+ - w)
///   3. v1 -= gamma2 P_box(v1/gamma2);  v2 -= gamma2 P_hyperplane(v2/gamma2)
///   4. gamma1 *= decay;  gamma2 *= decay
/// Records last_rel_change = ||w+ - w|| / ||w||, defined as 0 when both are
/// zero and +inf when only ||w|| is. Throws SolverError (with the iteration
/// index) when any component of the new state is non-finite.
SolverState iterate(SolverState state, const TrackingProblem& problem);

/// Runs iterate until last_rel_change <= cfg.stop_tol (converged = true) or
/// cfg.max_iter iterations (converged = false). The returned w is the final
/// primal iterate, so its sparsity constraint holds exactly; box and
/// sum-to-one residuals are reported, not repaired.
SolveResult solve(const TrackingProblem& problem, const SolverConfig& cfg = {});

/// Residuals of w against the given constraint sets.
FeasibilityReport feasibility_report(const Eigen::VectorXd& w,
                                     const SparsitySet& sparsity,
                                     const BoxSet& box);

}  // namespace indextrack
