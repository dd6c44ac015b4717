#include "indextrack/proximal.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace indextrack::prox {

Eigen::VectorXd project_l0(const Eigen::VectorXd& z, Eigen::Index k) {
  const Eigen::Index n = z.size();
  if (k < 1)
    throw std::invalid_argument("project_l0: k must be >= 1, got " +
                                std::to_string(k));
  if (k >= n) return z;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Stable sort by descending magnitude keeps the lowest index first among
  // ties, making the kept support deterministic.
  std::stable_sort(order.begin(), order.end(),
                   [&z](Eigen::Index a, Eigen::Index b) {
                     return std::abs(z(a)) > std::abs(z(b));
                   });

  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index j = order[static_cast<std::size_t>(i)];
    out(j) = z(j);
  }
  return out;
}

Eigen::VectorXd project_turnover(const Eigen::VectorXd& z, Eigen::Index k2,
                                 const Eigen::VectorXd& w0) {
  if (z.size() != w0.size())
    throw std::invalid_argument("project_turnover: z has " +
                                std::to_string(z.size()) + " entries, w0 has " +
                                std::to_string(w0.size()));
  return w0 + project_l0(z - w0, k2);
}

Eigen::VectorXd project_box(const Eigen::VectorXd& z, double l, double u) {
  if (l > u)
    throw std::invalid_argument("project_box: l (" + std::to_string(l) +
                                ") exceeds u (" + std::to_string(u) + ")");
  return z.cwiseMax(l).cwiseMin(u);
}

Eigen::VectorXd project_hyperplane(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  return (z.array() + (1.0 - z.sum()) / double(n)).matrix();
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  std::vector<double> u(z.data(), z.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());

  double running = 0.0;
  double tau = 0.0;
  Eigen::Index rho = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    running += u[static_cast<std::size_t>(j)];
    const double candidate = (running - 1.0) / double(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > 0.0) {
      tau = candidate;
      rho = j + 1;
    }
  }
  (void)rho;  // rho >= 1 always: the largest entry passes the test
  return (z.array() - tau).max(0.0).matrix();
}

Eigen::VectorXd conjugate_prox(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& prox_of_f,
    double gamma, const Eigen::VectorXd& x) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("conjugate_prox: gamma must be positive, got " +
                                std::to_string(gamma));
  return x - gamma * prox_of_f(x / gamma);
}

}  // namespace indextrack::prox
