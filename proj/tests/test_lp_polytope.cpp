#include <random>

#include "doctest.h"
#include "tropma/lp.hpp"
#include "tropma/polytope.hpp"

using namespace tropma;

TEST_CASE("LP: small maximization with a known optimum") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
  LinearProgram lp{{3, 2}, {{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {}, {}};
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(11.0));
  CHECK(r.x[0] == doctest::Approx(3.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("LP: equality constraints, infeasible and unbounded programs") {
  LinearProgram eq{{1, 1, 1}, {}, {}, {{1, 1, 1}}, {1}};
  CHECK(solve_lp(eq).value == doctest::Approx(1.0));
  LinearProgram infeasible{{1}, {{1}}, {1}, {{1}}, {2}};
  CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);
  LinearProgram unbounded{{1, 0}, {{-1, 1}}, {1}, {}, {}};
  CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("LP optimum dominates random feasible points") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    const int n = 3, m = 4;
    for (int k = 0; k < n; ++k) lp.objective.push_back(u(rng) - 0.5);
    for (int r = 0; r < m; ++r) {
      std::vector<double> row;
      for (int k = 0; k < n; ++k) row.push_back(u(rng));
      lp.a_ub.push_back(row);
      lp.b_ub.push_back(u(rng));
    }
    const LpResult res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    for (int s = 0; s < 200; ++s) {
      std::vector<double> x(n);
      for (double& v : x) v = u(rng) * 2.0 - 0.1;
      bool feasible = true;
      for (double v : x) feasible = feasible && v >= 0.0;
      for (int r = 0; r < m && feasible; ++r) {
        double a = 0.0;
        for (int k = 0; k < n; ++k) a += lp.a_ub[r][k] * x[k];
        feasible = a <= lp.b_ub[r];
      }
      if (!feasible) continue;
      double obj = 0.0;
      for (int k = 0; k < n; ++k) obj += lp.objective[k] * x[k];
      CHECK(obj <= res.value + 1e-9);
    }
  }
}

TEST_CASE("standard simplex clipping: volumes and centroids") {
  SUBCASE("unclipped triangle") {
    const PolytopeGeometry g = clip_standard_simplex(2, {});
    CHECK(g.volume == doctest::Approx(0.5));
    CHECK(g.centroid[0] == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("half of the triangle") {
    Eigen::VectorXd nrm(2);
    nrm << 1.0, -1.0;
    const PolytopeGeometry g = clip_standard_simplex(2, {{nrm, 0.0}});
    CHECK(g.volume == doctest::Approx(0.25));
  }
  SUBCASE("tetrahedron corner cut") {
    Eigen::VectorXd nrm(3);
    nrm << 1.0, 1.0, 1.0;
    const PolytopeGeometry g = clip_standard_simplex(3, {{nrm, 0.5}});
    CHECK(g.volume == doctest::Approx(0.125 / 6.0));
  }
  SUBCASE("interval") {
    Eigen::VectorXd nrm(1);
    nrm << -1.0;
    const PolytopeGeometry g = clip_standard_simplex(1, {{nrm, -0.25}});
    CHECK(g.volume == doctest::Approx(0.75));
    CHECK(g.centroid[0] == doctest::Approx(0.625));
  }
  SUBCASE("empty") {
    Eigen::VectorXd nrm(2);
    nrm << 1.0, 1.0;
    CHECK(clip_standard_simplex(2, {{nrm, -0.1}}).empty());
  }
}

TEST_CASE("clipped volumes agree with Monte Carlo in dimensions 2 to 4") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 2; k <= 4; ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<HalfSpace> cuts;
      for (int c = 0; c < 3; ++c) {
        Eigen::VectorXd nrm(k);
        for (int a = 0; a < k; ++a) nrm[a] = u(rng) - 0.5;
        cuts.push_back({nrm, 0.3 * (u(rng) - 0.2)});
      }
      const PolytopeGeometry g = clip_standard_simplex(k, cuts);
      // Rejection sampling in the unit cube.
      const int samples = 200000;
      int hits = 0;
      for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(k);
        for (int a = 0; a < k; ++a) x[a] = u(rng);
        if (x.sum() > 1.0) continue;
        bool in = true;
        for (const HalfSpace& h : cuts) in = in && h.normal.dot(x) <= h.rhs;
        hits += in;
      }
      const double p = static_cast<double>(hits) / samples;
      const double se = std::sqrt(p * (1 - p) / samples);
      CHECK(std::abs(g.volume - p) <= 5 * se + 1e-9);
    }
  }
}

TEST_CASE("convex hull of a square with an interior point") {
  std::vector<Eigen::VectorXd> pts;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.5, 0.5}}) {
    Eigen::VectorXd v(2);
    v << a, b;
    pts.push_back(v);
  }
  const PolytopeGeometry g = convex_hull(pts);
  CHECK(g.vertices.size() == 4);
  CHECK(g.volume == doctest::Approx(1.0));
}
