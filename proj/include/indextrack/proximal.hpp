#pragma once

#include <Eigen/Dense>
#include <functional>

namespace indextrack::prox {

/// Euclidean projection onto {x : ||x||_0 <= k}: keeps the k entries of
/// largest magnitude, zeros the rest. Ties are broken toward the lowest
/// original index (stable order), so the result is deterministic. k >= len(z)
/// is the vacuous constraint and returns z unchanged. Throws
/// std::invalid_argument when k < 1.
Eigen::VectorXd project_l0(const Eigen::VectorXd& z, Eigen::Index k);

/// Projection onto {x : ||x - w0||_0 <= k2}, computed as
/// w0 + project_l0(z - w0, k2). Coordinates outside the kept difference
/// support equal w0 exactly (bitwise), which downstream code relies on when
/// counting changed assets. Throws std::invalid_argument on a length mismatch
/// or k2 < 1.
Eigen::VectorXd project_turnover(const Eigen::VectorXd& z, Eigen::Index k2,
                                 const Eigen::VectorXd& w0);

/// Elementwise clamp onto [l, u]. Throws std::invalid_argument when l > u.
Eigen::VectorXd project_box(const Eigen::VectorXd& z, double l, double u);

/// Projection onto the hyperplane {x : 1^T x = 1}:
/// z + ((1 - sum(z)) / N) 1.
Eigen::VectorXd project_hyperplane(const Eigen::VectorXd& z);

/// Euclidean projection onto the probability simplex {x >= 0, 1^T x = 1} by
/// the sort-and-threshold method: with u the entries of z sorted descending,
/// rho = max{ j : u_j - (sum_{i<=j} u_i - 1)/j > 0 } and
/// tau = (sum_{i<=rho} u_i - 1)/rho, the result is max(z - tau, 0).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& z);

/// Prox of the Fenchel conjugate via the Moreau identity:
///   prox_{gamma f*}(x) = x - gamma prox_{f/gamma}(x/gamma).
/// For an indicator function the inner prox is the metric projection at any
/// index, so prox_of_f is passed as a plain projection routine. This is the
/// transform the dual updates of the tracking solver apply to its box and
/// hyperplane constraints. Throws std::invalid_argument when gamma <= 0.
Eigen::VectorXd conjugate_prox(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& prox_of_f,
    double gamma, const Eigen::VectorXd& x);

}  // namespace indextrack::prox
