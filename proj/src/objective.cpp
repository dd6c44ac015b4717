#include "indextrack/objective.hpp"

#include <cmath>
#include <string>

#include "indextrack/errors.hpp"

namespace indextrack {

Objective::Objective(ObjectiveKind kind, Eigen::MatrixXd X, Eigen::VectorXd r_b)
    : kind_(kind), X_(std::move(X)), r_b_(std::move(r_b)) {
  if (X_.rows() == 0 || X_.cols() == 0)
    throw std::invalid_argument("objective: empty return matrix");
  if (X_.rows() != r_b_.size())
    throw std::invalid_argument(
        "objective: X has " + std::to_string(X_.rows()) +
        " rows but the benchmark has " + std::to_string(r_b_.size()) +
        " entries");
}

namespace {

void check_dim(const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  if (w.size() != X.cols())
    throw std::invalid_argument("objective: weight vector has " +
                                std::to_string(w.size()) + " entries, expected " +
                                std::to_string(X.cols()));
}

// Residual r_b - X w, evaluated with one dot product per row. Benchmark
// series are built from the same per-row expression, so a portfolio that
// equals the benchmark weights bit for bit yields a residual of exactly zero
// instead of accumulation noise from a fused matrix-vector kernel.
Eigen::VectorXd tracking_residual(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& r_b,
                                  const Eigen::VectorXd& w) {
  Eigen::VectorXd residual(X.rows());
  for (Eigen::Index t = 0; t < X.rows(); ++t)
    residual(t) = r_b(t) - X.row(t).dot(w);
  return residual;
}

}  // namespace

double Objective::ete(const Eigen::VectorXd& w) const {
  check_dim(X_, w);
  return tracking_residual(X_, r_b_, w).squaredNorm() / double(T());
}

double Objective::dr(const Eigen::VectorXd& w) const {
  check_dim(X_, w);
  const Eigen::VectorXd clipped = tracking_residual(X_, r_b_, w).cwiseMax(0.0);
  return clipped.squaredNorm() / double(T());
}

double Objective::value(const Eigen::VectorXd& w) const {
  return kind_ == ObjectiveKind::ETE ? ete(w) : dr(w);
}

Eigen::VectorXd Objective::gradient(const Eigen::VectorXd& w) const {
  check_dim(X_, w);
  Eigen::VectorXd residual = tracking_residual(X_, r_b_, w);
  if (kind_ == ObjectiveKind::DR) residual = residual.cwiseMax(0.0);
  return (-2.0 / double(T())) * (X_.transpose() * residual);
}

double Objective::lipschitz() const {
  return (2.0 / double(T())) * largest_eigenvalue_mtm(X_);
}

double largest_eigenvalue_mtm(const Eigen::MatrixXd& M, double tol,
                              int max_iter) {
  const Eigen::Index n = M.cols();
  if (n == 0) return 0.0;
  if (M.isZero(0.0)) return 0.0;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  // The all-ones start can sit in the null space of M^T M; fall back to the
  // heaviest column's basis vector, whose Rayleigh quotient is positive.
  if ((M * v).isZero(0.0)) {
    Eigen::Index heaviest = 0;
    M.colwise().squaredNorm().maxCoeff(&heaviest);
    v.setZero();
    v(heaviest) = 1.0;
  }

  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd mv = M * v;
    Eigen::VectorXd gv = M.transpose() * mv;  // (M^T M) v
    const double norm = gv.norm();
    if (norm == 0.0) return 0.0;  // v landed in the null space exactly
    const double next = v.dot(gv);  // Rayleigh quotient (||v|| = 1)
    v = gv / norm;
    const double denom = std::max(std::abs(next), 1e-300);
    if (it > 1 && std::abs(next - lambda) / denom <= tol)
      return next;
    lambda = next;
  }
  throw SolverError("eigenvalue estimation did not settle within " +
                    std::to_string(max_iter) + " iterations");
}

}  // namespace indextrack
