#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "indextrack/proximal.hpp"

using namespace indextrack;

namespace {

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng,
                              double sigma = 1.0) {
  std::normal_distribution<double> d(0.0, sigma);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

// Exhaustive oracle: the squared distance from z to the nearest vector with
// support inside some K-subset is the sum of squares of the discarded
// entries; minimize it over all C(N,K) subsets by bitmask enumeration.
double best_l0_distance_sq(const Eigen::VectorXd& z, int k) {
  const int n = static_cast<int>(z.size());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > k) continue;
    double d = 0.0;
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) d += z(i) * z(i);
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

TEST_CASE("project_l0 keeps the largest magnitudes") {
  Eigen::VectorXd z(3);
  z << 0.5, -0.2, 0.1;
  Eigen::VectorXd p = prox::project_l0(z, 1);
  CHECK(p(0) == 0.5);
  CHECK(p(1) == 0.0);
  CHECK(p(2) == 0.0);
}

TEST_CASE("project_l0 breaks magnitude ties toward the lowest index") {
  Eigen::VectorXd z(3);
  z << 0.3, -0.3, 0.1;
  Eigen::VectorXd p = prox::project_l0(z, 1);
  CHECK(p(0) == 0.3);
  CHECK(p(1) == 0.0);
  CHECK(p(2) == 0.0);
}

TEST_CASE("project_l0 with k >= n is the identity") {
  std::mt19937_64 rng(3);
  Eigen::VectorXd z = random_vector(6, rng);
  Eigen::VectorXd p = prox::project_l0(z, 6);
  CHECK((p - z).cwiseAbs().maxCoeff() == 0.0);
  p = prox::project_l0(z, 9);
  CHECK((p - z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("project_l0 rejects k < 1") {
  Eigen::VectorXd z(3);
  z.setZero();
  CHECK_THROWS_AS(prox::project_l0(z, 0), std::invalid_argument);
}

TEST_CASE("l0 and turnover projections are distance-optimal vs brute force") {
  std::mt19937_64 rng(1234);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 9);  // N <= 10
    const int k = 1 + static_cast<int>(rng() % n);
    Eigen::VectorXd z = random_vector(n, rng);

    Eigen::VectorXd p = prox::project_l0(z, k);
    int nnz = 0;
    for (int i = 0; i < n; ++i) {
      if (p(i) != 0.0) {
        ++nnz;
        CHECK(p(i) == z(i));  // kept entries are copied verbatim
      }
    }
    CHECK(nnz <= k);
    CHECK(std::abs((z - p).squaredNorm() - best_l0_distance_sq(z, k)) <=
          1e-12);

    Eigen::VectorXd w0 = random_vector(n, rng, 0.5);
    Eigen::VectorXd q = prox::project_turnover(z, k, w0);
    int changed = 0;
    for (int i = 0; i < n; ++i)
      if (q(i) != w0(i)) ++changed;
    CHECK(changed <= k);
    CHECK(std::abs((z - q).squaredNorm() -
                   best_l0_distance_sq(z - w0, k)) <= 1e-12);
  }
}

TEST_CASE("project_turnover pinned cases") {
  std::mt19937_64 rng(8);
  Eigen::VectorXd w0 = random_vector(5, rng);

  SUBCASE("z equal to w0 maps to w0 exactly") {
    Eigen::VectorXd q = prox::project_turnover(w0, 2, w0);
    CHECK((q - w0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("zero reference reduces to plain l0") {
    Eigen::VectorXd z = random_vector(5, rng);
    Eigen::VectorXd q = prox::project_turnover(z, 3, Eigen::VectorXd::Zero(5));
    Eigen::VectorXd p = prox::project_l0(z, 3);
    CHECK((q - p).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("unchanged coordinates carry w0 bits exactly") {
    Eigen::VectorXd z = random_vector(5, rng);
    Eigen::VectorXd q = prox::project_turnover(z, 2, w0);
    int kept = 0;
    for (int i = 0; i < 5; ++i)
      if (q(i) == w0(i)) ++kept;
    CHECK(kept >= 3);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(
        prox::project_turnover(Eigen::VectorXd::Zero(4), 2, w0),
        std::invalid_argument);
  }
}

TEST_CASE("project_box clamps elementwise") {
  Eigen::VectorXd z(3);
  z << -0.05, 0.05, 0.2;
  Eigen::VectorXd p = prox::project_box(z, 0.0, 0.1);
  CHECK(p(0) == 0.0);
  CHECK(p(1) == 0.05);
  CHECK(p(2) == 0.1);

  SUBCASE("interior points are untouched") {
    Eigen::VectorXd inside(2);
    inside << 0.02, 0.08;
    Eigen::VectorXd q = prox::project_box(inside, 0.0, 0.1);
    CHECK((q - inside).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("degenerate box collapses to the constant") {
    Eigen::VectorXd q = prox::project_box(z, 0.07, 0.07);
    for (int i = 0; i < 3; ++i) CHECK(q(i) == 0.07);
  }
  SUBCASE("l > u is rejected") {
    CHECK_THROWS_AS(prox::project_box(z, 1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("project_hyperplane shifts onto the sum-to-one plane") {
  SUBCASE("zeros spread evenly") {
    Eigen::VectorXd p = prox::project_hyperplane(Eigen::VectorXd::Zero(3));
    for (int i = 0; i < 3; ++i)
      CHECK(p(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("uniform deficit is shared equally") {
    Eigen::VectorXd z = Eigen::VectorXd::Constant(3, 0.2);
    Eigen::VectorXd p = prox::project_hyperplane(z);
    for (int i = 0; i < 3; ++i)
      CHECK(p(i) == doctest::Approx(0.2 + 0.4 / 3.0).epsilon(1e-15));
  }
  SUBCASE("feasible points are fixed") {
    Eigen::VectorXd z(4);
    z << 0.25, 0.25, 0.25, 0.25;
    Eigen::VectorXd p = prox::project_hyperplane(z);
    CHECK((p - z).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("output sums to one") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::VectorXd z = random_vector(1 + static_cast<int>(rng() % 12), rng);
      CHECK(prox::project_hyperplane(z).sum() ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("project_simplex matches pinned cases and KKT conditions") {
  SUBCASE("symmetric input spreads evenly") {
    Eigen::VectorXd z = Eigen::VectorXd::Constant(3, 0.5);
    Eigen::VectorXd p = prox::project_simplex(z);
    for (int i = 0; i < 3; ++i)
      CHECK(p(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("dominant coordinate takes everything") {
    // The runner-up sits well below the threshold (0.1 vs tau = 0.3), so the
    // clamp to zero is exact rather than a rounding-sensitive boundary tie.
    Eigen::VectorXd z(3);
    z << 1.3, 0.1, 0.0;
    Eigen::VectorXd p = prox::project_simplex(z);
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p(1) == 0.0);
    CHECK(p(2) == 0.0);
  }
  SUBCASE("simplex points are fixed") {
    Eigen::VectorXd z(3);
    z << 0.6, 0.3, 0.1;
    Eigen::VectorXd p = prox::project_simplex(z);
    CHECK((p - z).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("KKT: active coordinates share one multiplier, inactive obey it") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 100; ++rep) {
      const int n = 1 + static_cast<int>(rng() % 10);
      Eigen::VectorXd z = random_vector(n, rng);
      Eigen::VectorXd p = prox::project_simplex(z);
      CHECK(p.minCoeff() >= 0.0);
      CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
      // Stationarity: p_i > 0 implies z_i - p_i = tau (common multiplier);
      // p_i = 0 implies z_i <= tau.
      double tau = 0.0;
      int active = 0;
      for (int i = 0; i < n; ++i)
        if (p(i) > 0.0) {
          tau += z(i) - p(i);
          ++active;
        }
      REQUIRE(active > 0);
      tau /= active;
      for (int i = 0; i < n; ++i) {
        if (p(i) > 0.0)
          CHECK(std::abs(z(i) - p(i) - tau) <= 1e-9);
        else
          CHECK(z(i) <= tau + 1e-9);
      }
    }
  }
}

TEST_CASE("convex projections are idempotent and nonexpansive") {
  std::mt19937_64 rng(2718);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Eigen::VectorXd x = random_vector(n, rng);
    Eigen::VectorXd y = random_vector(n, rng);
    const double dist = (x - y).norm();

    Eigen::VectorXd bx = prox::project_box(x, -0.3, 0.4);
    Eigen::VectorXd by = prox::project_box(y, -0.3, 0.4);
    CHECK((bx - by).norm() <= dist * (1.0 + 1e-12));
    CHECK((prox::project_box(bx, -0.3, 0.4) - bx).cwiseAbs().maxCoeff() ==
          0.0);

    Eigen::VectorXd hx = prox::project_hyperplane(x);
    Eigen::VectorXd hy = prox::project_hyperplane(y);
    CHECK((hx - hy).norm() <= dist * (1.0 + 1e-12));
    CHECK((prox::project_hyperplane(hx) - hx).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::VectorXd sx = prox::project_simplex(x);
    Eigen::VectorXd sy = prox::project_simplex(y);
    CHECK((sx - sy).norm() <= dist * (1.0 + 1e-12));
    CHECK((prox::project_simplex(sx) - sx).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("l0 projections are idempotent on the kept support") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int k = 1 + static_cast<int>(rng() % n);
    Eigen::VectorXd z = random_vector(n, rng);
    Eigen::VectorXd p = prox::project_l0(z, k);
    CHECK((prox::project_l0(p, k) - p).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd w0 = random_vector(n, rng);
    Eigen::VectorXd q = prox::project_turnover(z, k, w0);
    CHECK((prox::project_turnover(q, k, w0) - q).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("conjugate_prox implements the Moreau identity") {
  SUBCASE("pinned box cases") {
    auto box01 = [](const Eigen::VectorXd& v) {
      return prox::project_box(v, 0.0, 1.0);
    };
    Eigen::VectorXd inside(2);
    inside << 0.3, 0.9;
    CHECK(prox::conjugate_prox(box01, 1.0, inside).cwiseAbs().maxCoeff() ==
          0.0);

    Eigen::VectorXd x(1);
    x << 4.0;
    Eigen::VectorXd c = prox::conjugate_prox(box01, 2.0, x);
    CHECK(c(0) == doctest::Approx(2.0).epsilon(1e-15));  // 4 - 2*clamp(2)
  }

  SUBCASE("x = prox(x) + gamma * conjugate_prox(x/gamma scaling) on draws") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> gamma_draw(0.05, 20.0);
    for (int rep = 0; rep < 1000; ++rep) {
      const int n = 1 + static_cast<int>(rng() % 10);
      Eigen::VectorXd x = random_vector(n, rng, 3.0);
      const double gamma = gamma_draw(rng);

      auto box = [](const Eigen::VectorXd& v) {
        return prox::project_box(v, -0.2, 0.7);
      };
      auto hyper = [](const Eigen::VectorXd& v) {
        return prox::project_hyperplane(v);
      };
      for (auto& f :
           std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>>{
               box, hyper}) {
        // Moreau decomposition x = prox_{gamma f}(x) + gamma prox_{f*/gamma}(x/gamma).
        // The indicator's prox ignores its scaling, so the primal side is
        // f(x) itself; the dual side comes out of conjugate_prox at index
        // 1/gamma.
        Eigen::VectorXd primal = f(x);
        Eigen::VectorXd dual =
            prox::conjugate_prox(f, 1.0 / gamma, x / gamma);
        CHECK((x - (primal + gamma * dual)).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}
