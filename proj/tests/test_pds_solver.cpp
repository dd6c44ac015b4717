#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "indextrack/errors.hpp"
#include "indextrack/pds_solver.hpp"

using namespace indextrack;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> d(0.0, sigma);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

TrackingProblem small_problem(std::mt19937_64& rng, Eigen::Index T = 20,
                              Eigen::Index N = 8, Eigen::Index k = 3,
                              double u = 1.0) {
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  Eigen::VectorXd r_b = X * Eigen::VectorXd::Constant(N, 1.0 / double(N));
  return TrackingProblem(Objective(ObjectiveKind::ETE, X, r_b),
                         SparsitySet::portfolio(k), BoxSet{0.0, u});
}

}  // namespace

TEST_CASE("default_stepsizes satisfy the surrogate condition with 1% slack") {
  SUBCASE("flat objective") {
    auto [g1, g2] = default_stepsizes(0.0);
    CHECK(g2 == 1.0);
    CHECK(g1 == doctest::Approx(0.495).epsilon(1e-15));
  }
  SUBCASE("beta = 4") {
    auto [g1, g2] = default_stepsizes(4.0);
    CHECK(g2 == 1.0);
    CHECK(g1 == doctest::Approx(0.2475).epsilon(1e-15));
  }
  SUBCASE("condition 1/g1 - 2 g2 >= beta/2 holds for sampled betas") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> beta_draw(0.0, 500.0);
    for (int rep = 0; rep < 200; ++rep) {
      const double beta = beta_draw(rng);
      auto [g1, g2] = default_stepsizes(beta);
      CHECK(1.0 / g1 - 2.0 * g2 >= beta / 2.0);
    }
  }
  SUBCASE("negative curvature bound is rejected") {
    CHECK_THROWS_AS(default_stepsizes(-1.0), std::invalid_argument);
  }
}

TEST_CASE("initialize builds the documented starting points") {
  std::mt19937_64 rng(12);
  TrackingProblem problem = small_problem(rng, 20, 5, 2);

  SUBCASE("mode A starts at zero") {
    SolverConfig cfg;
    cfg.init = InitMode::A;
    SolverState s = initialize(problem, cfg);
    CHECK(s.w.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.v1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.v2.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.iter == 0);
  }
  SUBCASE("mode B starts uniform") {
    SolverConfig cfg;
    cfg.init = InitMode::B;
    SolverState s = initialize(problem, cfg);
    for (Eigen::Index i = 0; i < 5; ++i) CHECK(s.w(i) == 1.0 / 5.0);
  }
  SUBCASE("mode C seeds a random k-sparse equal-weight start") {
    SolverConfig cfg;
    cfg.init = InitMode::C;
    cfg.seed = 42;
    SolverState s = initialize(problem, cfg);
    int nnz = 0;
    for (Eigen::Index i = 0; i < 5; ++i) {
      if (s.w(i) != 0.0) {
        CHECK(s.w(i) == 0.5);
        ++nnz;
      }
    }
    CHECK(nnz == 2);
    SolverState again = initialize(problem, cfg);
    CHECK((again.w - s.w).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("mode C under a turnover set starts at the reference portfolio") {
    Eigen::VectorXd w0(5);
    w0 << 0.4, 0.0, 0.3, 0.3, 0.0;
    std::mt19937_64 rng2(13);
    Eigen::MatrixXd X = random_matrix(20, 5, rng2);
    TrackingProblem turnover(
        Objective(ObjectiveKind::ETE, X, Eigen::VectorXd::Zero(20)),
        SparsitySet::turnover(2, w0), BoxSet{0.0, 1.0});
    SolverConfig cfg;
    cfg.init = InitMode::C;
    cfg.seed = 1;
    SolverState s = initialize(turnover, cfg);
    CHECK((s.w - w0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("stepsizes default from the objective's curvature") {
    SolverConfig cfg;
    SolverState s = initialize(problem, cfg);
    auto [g1, g2] = default_stepsizes(problem.objective().lipschitz());
    CHECK(s.gamma1 == g1);
    CHECK(s.gamma2 == g2);
  }
  SUBCASE("bad configs are rejected") {
    SolverConfig cfg;
    cfg.decay = 0.0;
    CHECK_THROWS_AS(initialize(problem, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.max_iter = 0;
    CHECK_THROWS_AS(initialize(problem, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.gamma1 = 0.5;  // partner stepsize missing
    CHECK_THROWS_AS(initialize(problem, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.gamma1 = 100.0;  // violates 1/g1 - 2 g2 >= beta/2
    cfg.gamma2 = 1.0;
    CHECK_THROWS_AS(initialize(problem, cfg), std::invalid_argument);
  }
}

TEST_CASE("problem construction rejects empty feasible sets") {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd X = random_matrix(10, 4, rng);
  Eigen::VectorXd r_b = Eigen::VectorXd::Zero(10);
  Objective obj(ObjectiveKind::ETE, X, r_b);

  // k * u < 1: two assets capped at 0.4 cannot sum to 1.
  CHECK_THROWS_AS(
      TrackingProblem(obj, SparsitySet::portfolio(2), BoxSet{0.0, 0.4}),
      std::invalid_argument);
  // N * l > 1: every weight at least 0.3 oversubscribes.
  CHECK_THROWS_AS(
      TrackingProblem(obj, SparsitySet::portfolio(4), BoxSet{0.3, 0.5}),
      std::invalid_argument);
  // sparsity wider than the universe
  CHECK_THROWS_AS(
      TrackingProblem(obj, SparsitySet::portfolio(9), BoxSet{0.0, 1.0}),
      std::invalid_argument);
  // reference portfolio of the wrong length
  CHECK_THROWS_AS(
      TrackingProblem(obj, SparsitySet::turnover(2, Eigen::VectorXd::Zero(7)),
                      BoxSet{0.0, 1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(SparsitySet::portfolio(0), std::invalid_argument);
}

TEST_CASE("a fixed point of the iteration map stays fixed") {
  // Uniform weights with r_b built from the same per-row expression give a
  // bitwise-zero gradient; inside the box and on the hyperplane the dual
  // updates cancel exactly, so one iterate must reproduce the state.
  std::mt19937_64 rng(77);
  const Eigen::Index N = 4, T = 6;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  const Eigen::VectorXd w_star = Eigen::VectorXd::Constant(N, 0.25);
  Eigen::VectorXd r_b(T);
  for (Eigen::Index t = 0; t < T; ++t) r_b(t) = X.row(t).dot(w_star);

  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::portfolio(N), BoxSet{0.0, 1.0});
  SolverConfig cfg;
  cfg.init = InitMode::B;  // exactly w_star
  SolverState s0 = initialize(problem, cfg);
  SolverState s1 = iterate(s0, problem);

  CHECK((s1.w - w_star).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s1.v1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s1.v2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s1.last_rel_change == 0.0);
  CHECK(s1.iter == 1);
}

TEST_CASE("one step from rest with a flat objective stays at the projection") {
  std::mt19937_64 rng(5);
  const Eigen::Index N = 6, T = 12;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  Eigen::VectorXd r_b = Eigen::VectorXd::Zero(T);  // gradient at 0 is 0

  SUBCASE("portfolio sparsity keeps zero") {
    TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                            SparsitySet::portfolio(2), BoxSet{0.0, 1.0});
    SolverState s = iterate(initialize(problem, SolverConfig{}), problem);
    CHECK(s.w.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.last_rel_change == 0.0);
  }
  SUBCASE("turnover sparsity lands on the w0 projection of zero") {
    // Three holdings but only two may change, so the projection of the zero
    // vector keeps one coordinate of w0 and the step leaves the origin.
    Eigen::VectorXd w0(6);
    w0 << 0.5, 0.3, 0.2, 0.0, 0.0, 0.0;
    TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                            SparsitySet::turnover(2, w0), BoxSet{0.0, 1.0});
    SolverState s = iterate(initialize(problem, SolverConfig{}), problem);
    const Eigen::VectorXd expected =
        problem.sparsity().project(Eigen::VectorXd::Zero(6));
    CHECK((s.w - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.last_rel_change ==
          std::numeric_limits<double>::infinity());  // 0 -> nonzero
  }
}

TEST_CASE("ten iterations match a straight-line transcription to 1e-12") {
  std::mt19937_64 rng(2023);
  const Eigen::Index T = 20, N = 8, K = 3;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  Eigen::VectorXd w_true = Eigen::VectorXd::Zero(N);
  w_true(1) = 0.6;
  w_true(4) = 0.4;
  Eigen::VectorXd r_b = X * w_true;
  const double l = 0.0, u = 0.5, decay = 0.999;

  // Stepsizes fixed from a dense eigensolver so both code paths consume
  // identical values.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X.transpose() * X);
  const double beta = (2.0 / double(T)) * eig.eigenvalues().maxCoeff();
  const double g2_0 = 1.0;
  const double g1_0 = 0.9 / (beta / 2.0 + 2.0 * g2_0);

  // Reference: literal transcription of the iteration, no library calls.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd v1 = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd v2 = Eigen::VectorXd::Zero(N);
  double g1 = g1_0, g2 = g2_0;
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd resid(T);
    for (Eigen::Index t = 0; t < T; ++t) resid(t) = r_b(t) - X.row(t).dot(w);
    const Eigen::VectorXd grad = (-2.0 / double(T)) * (X.transpose() * resid);
    Eigen::VectorXd arg = w - g1 * (grad + v1 + v2);

    // top-K by |value|, lowest index on ties
    std::vector<Eigen::Index> order(N);
    for (Eigen::Index i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double ma = std::abs(arg(a)), mb = std::abs(arg(b));
      return ma != mb ? ma > mb : a < b;
    });
    Eigen::VectorXd w_next = Eigen::VectorXd::Zero(N);
    for (Eigen::Index r = 0; r < K; ++r) w_next(order[r]) = arg(order[r]);

    const Eigen::VectorXd reflected = 2.0 * w_next - w;
    v1 += g2 * reflected;
    v2 += g2 * reflected;
    Eigen::VectorXd b1 = v1 / g2;
    for (Eigen::Index i = 0; i < N; ++i)
      b1(i) = std::min(std::max(b1(i), l), u);
    v1 -= g2 * b1;
    Eigen::VectorXd b2 = v2 / g2;
    b2 = (b2.array() + (1.0 - b2.sum()) / double(N)).matrix();
    v2 -= g2 * b2;

    w = w_next;
    g1 *= decay;
    g2 *= decay;
  }

  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::portfolio(K), BoxSet{l, u});
  SolverConfig cfg;
  cfg.gamma1 = g1_0;
  cfg.gamma2 = g2_0;
  cfg.decay = decay;
  SolverState s = initialize(problem, cfg);
  for (int k = 0; k < 10; ++k) s = iterate(s, problem);

  CHECK((s.w - w).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.v1 - v1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.v2 - v2).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(s.gamma1 == doctest::Approx(g1).epsilon(1e-15));
}

TEST_CASE("stepsizes decay geometrically, both of them") {
  std::mt19937_64 rng(1);
  TrackingProblem problem = small_problem(rng);
  SolverConfig cfg;
  cfg.decay = 0.99;
  SolverState s = initialize(problem, cfg);
  double expected1 = s.gamma1, expected2 = s.gamma2;
  for (int k = 0; k < 7; ++k) {
    s = iterate(s, problem);
    expected1 *= 0.99;
    expected2 *= 0.99;
  }
  CHECK(s.gamma1 == expected1);
  CHECK(s.gamma2 == expected2);
  CHECK(s.iter == 7);
}

TEST_CASE("vacuous sparsity recovers a feasible planted portfolio") {
  std::mt19937_64 rng(404);
  const Eigen::Index T = 200, N = 10;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  const Eigen::VectorXd w_star = Eigen::VectorXd::Constant(N, 0.1);
  Eigen::VectorXd r_b(T);
  for (Eigen::Index t = 0; t < T; ++t) r_b(t) = X.row(t).dot(w_star);

  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::portfolio(N), BoxSet{0.0, 0.4});
  SolveResult res = solve(problem, SolverConfig{});
  CHECK(res.converged);
  CHECK(res.objective_value <= 1e-8);
  CHECK((res.w - w_star).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("planted sparse support is recovered on a clean instance") {
  std::mt19937_64 rng(7);
  const Eigen::Index T = 200, N = 50, K = 10;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < N; j += 5) support.push_back(j);  // 10 indices
  Eigen::VectorXd w_star = Eigen::VectorXd::Zero(N);
  for (Eigen::Index j : support) w_star(j) = 0.1;
  Eigen::VectorXd r_b(T);
  for (Eigen::Index t = 0; t < T; ++t) r_b(t) = X.row(t).dot(w_star);

  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::portfolio(K), BoxSet{0.0, 0.4});
  SolveResult res = solve(problem, SolverConfig{});
  CHECK(res.converged);
  CHECK(res.objective_value <= 1e-8);
  for (Eigen::Index j = 0; j < N; ++j) {
    const bool planted =
        std::find(support.begin(), support.end(), j) != support.end();
    CHECK((res.w(j) != 0.0) == planted);
  }
  CHECK(res.feasibility.sparsity_ok);
  CHECK(res.feasibility.sum_to_one_residual <= 1e-3);
  CHECK(res.feasibility.box_violation <= 1e-3);
}

TEST_CASE("turnover constraint holds exactly at the solution") {
  std::mt19937_64 rng(88);
  const Eigen::Index T = 120, N = 20, K2 = 4;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  Eigen::VectorXd w0 = Eigen::VectorXd::Zero(N);
  for (Eigen::Index j = 0; j < 10; ++j) w0(j) = 0.1;
  Eigen::VectorXd target = Eigen::VectorXd::Zero(N);
  for (Eigen::Index j = 5; j < 15; ++j) target(j) = 0.1;
  Eigen::VectorXd r_b(T);
  for (Eigen::Index t = 0; t < T; ++t) r_b(t) = X.row(t).dot(target);

  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::turnover(K2, w0), BoxSet{0.0, 1.0});
  SolveResult res = solve(problem, SolverConfig{});
  Eigen::Index changed = 0;
  for (Eigen::Index j = 0; j < N; ++j)
    if (res.w(j) != w0(j)) ++changed;
  CHECK(changed <= K2);
  CHECK(res.feasibility.sparsity_count == changed);
  CHECK(res.feasibility.sparsity_ok);
}

TEST_CASE("solver runs are deterministic") {
  std::mt19937_64 rng(55);
  TrackingProblem problem = small_problem(rng, 40, 12, 4);
  SolverConfig cfg;
  cfg.init = InitMode::C;
  cfg.seed = 9;
  SolveResult a = solve(problem, cfg);
  SolveResult b = solve(problem, cfg);
  CHECK((a.w - b.w).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.iterations == b.iterations);
  CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("non-finite data aborts with the failing iteration") {
  std::mt19937_64 rng(2);
  const Eigen::Index T = 10, N = 5;
  Eigen::MatrixXd X = random_matrix(T, N, rng);
  Eigen::VectorXd r_b = Eigen::VectorXd::Zero(T);
  r_b(0) = std::numeric_limits<double>::infinity();
  TrackingProblem problem(Objective(ObjectiveKind::ETE, X, r_b),
                          SparsitySet::portfolio(2), BoxSet{0.0, 1.0});
  CHECK_THROWS_AS(solve(problem, SolverConfig{}), SolverError);
}

TEST_CASE("max_iter exhaustion reports converged = false") {
  std::mt19937_64 rng(21);
  TrackingProblem problem = small_problem(rng, 30, 10, 3, 0.5);
  SolverConfig cfg;
  cfg.stop_tol = 0.0;  // unreachable in finite time with nonzero updates
  cfg.max_iter = 25;
  SolveResult res = solve(problem, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 25);
}
