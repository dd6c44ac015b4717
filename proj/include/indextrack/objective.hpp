#pragma once

#include <Eigen/Dense>

namespace indextrack {

enum class ObjectiveKind { ETE, DR };

/// Tracking objectives over a T x N daily return matrix X and a length-T
/// benchmark series r_b:
///
///   ETE(w) = (1/T) ||r_b - X w||^2          (empirical tracking error)
///   DR(w)  = (1/T) ||(r_b - X w)_+||^2      (downside risk: only days the
///                                            portfolio lags the benchmark)
///
/// Gradients:
///   grad ETE(w) = -(2/T) X^T (r_b - X w)
///   grad DR(w)  = -(2/T) X^T (r_b - X w)_+
///
/// Instances are immutable after construction; evaluation is reentrant and
/// safe for concurrent callers.
class Objective {
 public:
  /// Throws std::invalid_argument when X.rows() != r_b.size() or T == 0.
  Objective(ObjectiveKind kind, Eigen::MatrixXd X, Eigen::VectorXd r_b);

  ObjectiveKind kind() const { return kind_; }
  const Eigen::MatrixXd& X() const { return X_; }
  const Eigen::VectorXd& benchmark() const { return r_b_; }
  Eigen::Index T() const { return X_.rows(); }
  Eigen::Index n() const { return X_.cols(); }

  /// Objective value for this instance's kind.
  double value(const Eigen::VectorXd& w) const;

  /// Kind-independent evaluations (used by oracles and reports).
  double ete(const Eigen::VectorXd& w) const;
  double dr(const Eigen::VectorXd& w) const;

  /// Gradient for this instance's kind. At a residual entry exactly 0, the DR
  /// gradient contribution is 0 (the clipped residual vanishes there).
  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const;

  /// beta = (2/T) lambda_max(X^T X), estimated matrix-free. The same bound is
  /// used for ETE and DR (the DR gradient is at most as steep). Throws
  /// SolverError when the eigenvalue estimate does not settle.
  double lipschitz() const;

 private:
  ObjectiveKind kind_;
  Eigen::MatrixXd X_;
  Eigen::VectorXd r_b_;
};

/// Largest eigenvalue of M^T M (the squared top singular value of M) by power
/// iteration on v -> M^T (M v), never forming M^T M. Deterministic all-ones
/// start vector; stops when the eigenvalue estimate's relative change falls
/// below tol. Returns 0 for an all-zero M. Throws SolverError (reporting the
/// iteration count) when the estimate has not settled after max_iter steps.
double largest_eigenvalue_mtm(const Eigen::MatrixXd& M, double tol = 1e-10,
                              int max_iter = 10000);

}  // namespace indextrack
