#include "indextrack/nnomp_pgd.hpp"

#include <cmath>
#include <string>

#include "indextrack/errors.hpp"
#include "indextrack/proximal.hpp"

namespace indextrack {

namespace {

// Nonnegative least squares min ||r_b - X theta||^2, theta >= 0, by projected
// gradient from theta = 0 with the fixed stepsize 1/beta.
Eigen::VectorXd nnls_projected_gradient(const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& r_b,
                                        double tol = 1e-10,
                                        long max_iter = 20000) {
  const double T = double(X.rows());
  const double beta = (2.0 / T) * largest_eigenvalue_mtm(X);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(X.cols());
  if (beta == 0.0) return theta;

  for (long it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd grad = (-2.0 / T) * (X.transpose() * (r_b - X * theta));
    const Eigen::VectorXd next = (theta - grad / beta).cwiseMax(0.0);
    const double diff = (next - theta).norm();
    const double base = theta.norm();
    theta = next;
    if (base == 0.0 ? diff == 0.0 : diff / base <= tol) break;
  }
  return theta;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& X,
                        const std::vector<Eigen::Index>& support) {
  Eigen::MatrixXd sub(X.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    sub.col(static_cast<Eigen::Index>(i)) = X.col(support[i]);
  return sub;
}

}  // namespace

SelectionResult nnomp_select(const Eigen::MatrixXd& X,
                             const Eigen::VectorXd& r_b, Eigen::Index k) {
  const Eigen::Index n = X.cols();
  if (k < 1 || k > n)
    throw std::invalid_argument("nnomp_select: k " + std::to_string(k) +
                                " out of range [1, " + std::to_string(n) + "]");
  if (X.rows() != r_b.size())
    throw std::invalid_argument("nnomp_select: X has " +
                                std::to_string(X.rows()) +
                                " rows, benchmark has " +
                                std::to_string(r_b.size()));

  SelectionResult result;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  Eigen::VectorXd residual = r_b;

  for (Eigen::Index round = 0; round < k; ++round) {
    const Eigen::VectorXd corr = X.transpose() * residual;
    Eigen::Index best = -1;
    double best_corr = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (chosen[static_cast<std::size_t>(j)]) continue;
      if (corr(j) > best_corr) {
        best_corr = corr(j);
        best = j;
      }
    }
    if (best < 0) break;  // no remaining column correlates positively

    chosen[static_cast<std::size_t>(best)] = true;
    result.support.push_back(best);
    const Eigen::MatrixXd sub = columns(X, result.support);
    result.coeffs = nnls_projected_gradient(sub, r_b);
    residual = r_b - sub * result.coeffs;
  }
  return result;
}

Eigen::VectorXd pgd_allocate(const Eigen::MatrixXd& X_sub,
                             const Eigen::VectorXd& r_b, long max_iter,
                             double tol, long* iters_out, bool* converged_out) {
  const Eigen::Index k = X_sub.cols();
  if (k < 1) throw std::invalid_argument("pgd_allocate: empty support");
  if (X_sub.rows() != r_b.size())
    throw std::invalid_argument("pgd_allocate: X_sub has " +
                                std::to_string(X_sub.rows()) +
                                " rows, benchmark has " +
                                std::to_string(r_b.size()));

  const double T = double(X_sub.rows());
  const double beta = (2.0 / T) * largest_eigenvalue_mtm(X_sub);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / double(k));
  long iters = 0;
  bool converged = true;

  if (beta > 0.0) {
    converged = false;
    for (; iters < max_iter; ++iters) {
      const Eigen::VectorXd grad =
          (-2.0 / T) * (X_sub.transpose() * (r_b - X_sub * w));
      const Eigen::VectorXd next = prox::project_simplex(w - grad / beta);
      const double diff = (next - w).norm();
      const double base = w.norm();
      w = next;
      if (base == 0.0 ? diff == 0.0 : diff / base <= tol) {
        converged = true;
        ++iters;
        break;
      }
    }
  }
  if (iters_out) *iters_out = iters;
  if (converged_out) *converged_out = converged;
  return w;
}

SolveResult nnomp_pgd(const Eigen::MatrixXd& X, const Eigen::VectorXd& r_b,
                      Eigen::Index k) {
  const Eigen::Index n = X.cols();
  const SelectionResult selection = nnomp_select(X, r_b, k);

  SolveResult result;
  if (selection.support.empty()) {
    result.w = Eigen::VectorXd::Constant(n, 1.0 / double(n));
    result.uniform_fallback = true;
    result.converged = true;
    result.iterations = 0;
  } else {
    long pgd_iters = 0;
    bool pgd_converged = false;
    const Eigen::VectorXd alloc =
        pgd_allocate(columns(X, selection.support), r_b, 50000, 1e-8,
                     &pgd_iters, &pgd_converged);
    result.w = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < selection.support.size(); ++i)
      result.w(selection.support[i]) = alloc(static_cast<Eigen::Index>(i));
    result.iterations =
        static_cast<long>(selection.support.size()) + pgd_iters;
    result.converged = pgd_converged;
  }

  const Objective full(ObjectiveKind::ETE, X, r_b);
  result.objective_value = full.ete(result.w);
  const Eigen::Index k_eff = result.uniform_fallback ? n : k;
  result.feasibility = feasibility_report(
      result.w, SparsitySet::portfolio(k_eff),
      BoxSet{0.0, std::numeric_limits<double>::infinity()});
  return result;
}

}  // namespace indextrack
