#include "indextrack/pds_solver.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "indextrack/errors.hpp"
#include "indextrack/proximal.hpp"

namespace indextrack {

SparsitySet SparsitySet::portfolio(Eigen::Index k1) {
  if (k1 < 1)
    throw std::invalid_argument("sparsity: k1 must be >= 1, got " +
                                std::to_string(k1));
  SparsitySet s;
  s.mode = Mode::Portfolio;
  s.k = k1;
  return s;
}

SparsitySet SparsitySet::turnover(Eigen::Index k2, Eigen::VectorXd w0) {
  if (k2 < 1)
    throw std::invalid_argument("sparsity: k2 must be >= 1, got " +
                                std::to_string(k2));
  if (w0.size() < 1)
    throw std::invalid_argument("sparsity: turnover mode needs a reference w0");
  SparsitySet s;
  s.mode = Mode::Turnover;
  s.k = k2;
  s.w0 = std::move(w0);
  return s;
}

Eigen::VectorXd SparsitySet::project(const Eigen::VectorXd& z) const {
  return mode == Mode::Portfolio ? prox::project_l0(z, k)
                                 : prox::project_turnover(z, k, w0);
}

TrackingProblem::TrackingProblem(Objective objective, SparsitySet sparsity,
                                 BoxSet box)
    : objective_(std::move(objective)),
      sparsity_(std::move(sparsity)),
      box_(box) {
  const Eigen::Index n = objective_.n();
  if (sparsity_.mode == SparsitySet::Mode::Turnover &&
      sparsity_.w0.size() != n)
    throw std::invalid_argument(
        "tracking problem: w0 has " + std::to_string(sparsity_.w0.size()) +
        " entries but the universe has " + std::to_string(n) + " assets");
  if (sparsity_.k > n)
    throw std::invalid_argument("tracking problem: sparsity k " +
                                std::to_string(sparsity_.k) +
                                " exceeds universe size " + std::to_string(n));
  if (box_.l > box_.u)
    throw std::invalid_argument("tracking problem: box lower bound " +
                                std::to_string(box_.l) + " exceeds upper " +
                                std::to_string(box_.u));
  // Feasibility sanity: k weights capped at u must be able to sum to 1, and
  // N floors at l must not already exceed 1.
  if (double(sparsity_.k) * box_.u < 1.0)
    throw std::invalid_argument(
        "tracking problem: infeasible, k*u = " +
        std::to_string(double(sparsity_.k) * box_.u) + " < 1");
  if (double(n) * box_.l > 1.0)
    throw std::invalid_argument("tracking problem: infeasible, N*l = " +
                                std::to_string(double(n) * box_.l) + " > 1");
}

std::pair<double, double> default_stepsizes(double beta) {
  if (beta < 0.0)
    throw std::invalid_argument("default_stepsizes: beta must be >= 0, got " +
                                std::to_string(beta));
  const double gamma2 = 1.0;
  const double gamma1 = 0.99 / (beta / 2.0 + 2.0 * gamma2);
  return {gamma1, gamma2};
}

SolverState initialize(const TrackingProblem& problem,
                       const SolverConfig& cfg) {
  if (!(cfg.decay > 0.0) || cfg.decay > 1.0)
    throw std::invalid_argument("solver config: decay must be in (0, 1], got " +
                                std::to_string(cfg.decay));
  if (cfg.stop_tol < 0.0)
    throw std::invalid_argument("solver config: stop_tol must be >= 0");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("solver config: max_iter must be >= 1");

  const double beta = problem.objective().lipschitz();
  double gamma1, gamma2;
  if (cfg.gamma1 || cfg.gamma2) {
    if (!cfg.gamma1 || !cfg.gamma2)
      throw std::invalid_argument(
          "solver config: set both stepsizes or neither");
    gamma1 = *cfg.gamma1;
    gamma2 = *cfg.gamma2;
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
      throw std::invalid_argument("solver config: stepsizes must be positive");
  } else {
    std::tie(gamma1, gamma2) = default_stepsizes(beta);
  }
  // lambda_max(A^T A) = 2 for the stacked box + sum-to-one dual operator.
  if (1.0 / gamma1 - 2.0 * gamma2 < beta / 2.0)
    throw std::invalid_argument(
        "solver config: stepsizes violate 1/gamma1 - 2*gamma2 >= beta/2 "
        "(gamma1 = " + std::to_string(gamma1) + ", gamma2 = " +
        std::to_string(gamma2) + ", beta = " + std::to_string(beta) + ")");

  const Eigen::Index n = problem.n();
  SolverState state;
  state.gamma1 = gamma1;
  state.gamma2 = gamma2;
  state.decay = cfg.decay;
  state.v1 = Eigen::VectorXd::Zero(n);
  state.v2 = Eigen::VectorXd::Zero(n);

  switch (cfg.init) {
    case InitMode::A:
      state.w = Eigen::VectorXd::Zero(n);
      break;
    case InitMode::B:
      state.w = Eigen::VectorXd::Constant(n, 1.0 / double(n));
      break;
    case InitMode::C: {
      const auto& sparsity = problem.sparsity();
      if (sparsity.mode == SparsitySet::Mode::Turnover) {
        state.w = sparsity.w0;
        break;
      }
      if (!cfg.seed)
        std::cerr << "warning: init mode C without an explicit seed; "
                     "using seed 0\n";
      std::mt19937_64 rng(cfg.seed.value_or(0));
      std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      for (Eigen::Index i = 0; i < sparsity.k; ++i) {
        std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(pick(rng))]);
      }
      state.w = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < sparsity.k; ++i)
        state.w(order[static_cast<std::size_t>(i)]) = 1.0 / double(sparsity.k);
      break;
    }
  }
  return state;
}

SolverState iterate(SolverState state, const TrackingProblem& problem) {
  const auto& box = problem.box();
  const double g1 = state.gamma1;
  const double g2 = state.gamma2;

  const Eigen::VectorXd grad = problem.objective().gradient(state.w);
  const Eigen::VectorXd w_next =
      problem.sparsity().project(state.w - g1 * (grad + state.v1 + state.v2));

  const Eigen::VectorXd reflected = 2.0 * w_next - state.w;
  state.v1 += g2 * reflected;
  state.v2 += g2 * reflected;
  state.v1 -= g2 * prox::project_box(state.v1 / g2, box.l, box.u);
  state.v2 -= g2 * prox::project_hyperplane(state.v2 / g2);

  const double diff = (w_next - state.w).norm();
  const double base = state.w.norm();
  if (base == 0.0)
    state.last_rel_change =
        diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  else
    state.last_rel_change = diff / base;

  state.w = w_next;
  state.gamma1 *= state.decay;
  state.gamma2 *= state.decay;
  state.iter += 1;

  if (!state.w.allFinite() || !state.v1.allFinite() || !state.v2.allFinite())
    throw SolverError("non-finite iterate at iteration " +
                      std::to_string(state.iter));
  return state;
}

SolveResult solve(const TrackingProblem& problem, const SolverConfig& cfg) {
  SolverState state = initialize(problem, cfg);

  bool converged = false;
  while (state.iter < cfg.max_iter) {
    state = iterate(std::move(state), problem);
    if (state.last_rel_change <= cfg.stop_tol) {
      converged = true;
      break;
    }
  }

  SolveResult result;
  result.w = std::move(state.w);
  result.iterations = state.iter;
  result.converged = converged;
  result.objective_value = problem.objective().value(result.w);
  result.feasibility =
      feasibility_report(result.w, problem.sparsity(), problem.box());
  return result;
}

FeasibilityReport feasibility_report(const Eigen::VectorXd& w,
                                     const SparsitySet& sparsity,
                                     const BoxSet& box) {
  FeasibilityReport report;
  report.sum_to_one_residual = std::abs(w.sum() - 1.0);
  double violation = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    violation = std::max({violation, box.l - w(i), w(i) - box.u});
  report.box_violation = std::max(violation, 0.0);

  Eigen::Index count = 0;
  if (sparsity.mode == SparsitySet::Mode::Portfolio) {
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w(i) != 0.0) ++count;
  } else {
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w(i) != sparsity.w0(i)) ++count;
  }
  report.sparsity_count = count;
  report.sparsity_ok = count <= sparsity.k;
  return report;
}

}  // namespace indextrack
