#pragma once

#include <vector>

#include "indextrack/pds_solver.hpp"

namespace indextrack {

/// Greedy selection output: chosen column indices and the nonnegative
/// least-squares coefficients refit on that support (unnormalized).
struct SelectionResult {
  std::vector<Eigen::Index> support;  ///< size <= k, in selection order
  Eigen::VectorXd coeffs;             ///< aligned with support, all >= 0
};

/// Nonnegative orthogonal matching pursuit: up to k greedy rounds, each
/// picking the unselected column with the largest positive correlation
/// X_j^T residual (lowest index on ties), refitting nonnegative least squares
/// over the accumulated support by projected gradient (stepsize 1/beta,
/// relative-change tolerance 1e-10, at most 20000 iterations), and updating
/// the residual. Stops early when no remaining column has positive
/// correlation. Throws std::invalid_argument when k is out of [1, N].
SelectionResult nnomp_select(const Eigen::MatrixXd& X,
                             const Eigen::VectorXd& r_b, Eigen::Index k);

/// Projected gradient descent for min ETE over the probability simplex,
/// restricted to the support columns X_sub. Starts at uniform 1/k, steps by
/// 1/beta_sub, projects with the sort-and-threshold simplex projection, and
/// stops on relative change <= tol. A zero X_sub returns the uniform start.
/// iters_out / converged_out, when non-null, receive the iteration count and
/// whether tol was reached.
Eigen::VectorXd pgd_allocate(const Eigen::MatrixXd& X_sub,
                             const Eigen::VectorXd& r_b, long max_iter = 50000,
                             double tol = 1e-8, long* iters_out = nullptr,
                             bool* converged_out = nullptr);

/// Two-stage baseline: nnomp_select for the support, pgd_allocate for the
/// capital split, zero-padded back to length N. An empty selection falls back
/// to uniform weights over all N assets with uniform_fallback set. The
/// reported objective value is the full-universe ETE.
SolveResult nnomp_pgd(const Eigen::MatrixXd& X, const Eigen::VectorXd& r_b,
                      Eigen::Index k);

}  // namespace indextrack
