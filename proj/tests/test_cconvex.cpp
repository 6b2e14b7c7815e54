#include "doctest.h"
#include "support.hpp"
#include "tropma/cconvex.hpp"
#include "tropma/fixtures.hpp"

using namespace tropma;

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("exact transform agrees with per-face LPs and a grid lower bound") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int dv = gen::integer(rng, 1, 2);
    const Side side = trial % 2 ? Side::A : Side::B;
    const MaxAffineFn f = gen::envelope(rng, dv, side, gen::integer(rng, 1, 5));
    const MaxAffineFn fc = ctransform(f);
    CHECK(fc.side() == opposite(side));
    const auto grid = oracle::boundary_grid(dv, side, dv == 1 ? 600 : 60);
    const double lip = ctransform_lipschitz_bound(Dim(dv), opposite(side));
    for (int k = 0; k < 10; ++k) {
      const BaryPoint x = gen::boundary_point(rng, dv, opposite(side));
      const double exact = fc(x);
      CHECK(exact == doctest::Approx(ctransform_envelope(f, x)).epsilon(1e-9));
      const double lower = oracle::grid_ctransform(f, x, grid);
      CHECK(lower <= exact + 1e-9);
      // Grid spacing bounds the gap; f^c's argument varies by the pairing slope.
      CHECK(exact - lower <= (dv + 2.0) * lip * (dv == 1 ? 1.0 / 600 : 1.0 / 60) * 2.0);
    }
  }
}

TEST_CASE("discrete transform is the finite max over the support") {
  gen::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    DiscreteFn u{Side::A, {}, {}};
    for (int k = 0; k < 4; ++k) {
      u.support.push_back(gen::boundary_point(rng, 2, Side::A));
      u.values.push_back(gen::uniform(rng, -1, 1));
    }
    const MaxAffineFn uc = ctransform_discrete(u);
    const BaryPoint n = gen::boundary_point(rng, 2, Side::B);
    double best = -1e300;
    for (std::size_t k = 0; k < 4; ++k) best = std::max(best, oracle::explicit_pairing(u.support[k], n) - u.values[k]);
    CHECK(uc(n) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("algebra of the transform on random envelopes") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const int dv = gen::integer(rng, 1, 2);
    const Side side = trial % 2 ? Side::A : Side::B;
    const MaxAffineFn f = gen::envelope(rng, dv, side, gen::integer(rng, 1, 4));
    const MaxAffineFn fc = ctransform(f);
    const MaxAffineFn fcc = ctransform(fc);
    const MaxAffineFn fccc = ctransform(fcc);
    const double a = gen::uniform(rng, -2, 2);
    const MaxAffineFn shifted_c = ctransform(f.shifted(a));
    // Perturbed offsets: sup|f - g| <= delta.
    std::vector<Generator> pert = f.generators();
    double delta = 0.0;
    for (Generator& g : pert) {
      const double e = gen::uniform(rng, -0.3, 0.3);
      g.offset += e;
      delta = std::max(delta, std::abs(e));
    }
    const MaxAffineFn gc = ctransform(MaxAffineFn(side, pert));
    // Extra generators: h >= f.
    std::vector<Generator> more = f.generators();
    more.push_back({gen::boundary_point(rng, dv, opposite(side)), gen::uniform(rng, -1, 1)});
    const MaxAffineFn hc = ctransform(MaxAffineFn(side, more));

    for (int k = 0; k < 8; ++k) {
      const BaryPoint x = gen::boundary_point(rng, dv, opposite(side));
      const BaryPoint y = gen::boundary_point(rng, dv, side);
      CHECK(fccc(x) == doctest::Approx(fc(x)).epsilon(1e-9));
      CHECK(fcc(y) == doctest::Approx(f(y)).epsilon(1e-9));
      CHECK(shifted_c(x) == doctest::Approx(fc(x) - a).epsilon(1e-9));
      CHECK(std::abs(gc(x) - fc(x)) <= delta + 1e-9);
      CHECK(hc(x) <= fc(x) + 1e-9);
    }
  }
}

TEST_CASE("transform commutes with the group action") {
  gen::Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const int dv = gen::integer(rng, 1, 2);
    const MaxAffineFn f = gen::envelope(rng, dv, Side::B, 3);
    const auto perms = all_permutations(dv + 2);
    const Permutation& g = perms[gen::integer(rng, 0, static_cast<int>(perms.size()) - 1)];
    const MaxAffineFn gf = f.acted(g);
    const MaxAffineFn fc = ctransform(f), gfc = ctransform(gf);
    for (int k = 0; k < 5; ++k) {
      const BaryPoint n = gen::boundary_point(rng, dv, Side::B);
      const BaryPoint m = gen::boundary_point(rng, dv, Side::A);
      CHECK(gf(act(g, n)) == doctest::Approx(f(n)).epsilon(1e-12));
      CHECK(gfc(act(g, m)) == doctest::Approx(fc(m)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Lipschitz bound for transforms in vector coordinates") {
  gen::Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const int dv = gen::integer(rng, 1, 3);
    const Dim d(dv);
    const MaxAffineFn onB = ctransform(gen::envelope(rng, dv, Side::A, 3));
    const MaxAffineFn onA = ctransform(gen::envelope(rng, dv, Side::B, 3));
    for (int k = 0; k < 10; ++k) {
      const BaryPoint m1 = gen::boundary_point(rng, dv, Side::A), m2 = gen::boundary_point(rng, dv, Side::A);
      CHECK(std::abs(onA(m1) - onA(m2)) <=
            ctransform_lipschitz_bound(d, Side::A) * euclid(to_mvector(m1).coords(), to_mvector(m2).coords()) + 1e-9);
      const BaryPoint n1 = gen::boundary_point(rng, dv, Side::B), n2 = gen::boundary_point(rng, dv, Side::B);
      CHECK(std::abs(onB(n1) - onB(n2)) <=
            ctransform_lipschitz_bound(d, Side::B) * euclid(n1.weights(), n2.weights()) + 1e-9);
    }
  }
}

TEST_CASE("double transform of a non-c-convex discrete function drops strictly") {
  // Raise one value of a c-convex function's samples: the bump exceeds what the
  // Lipschitz bound allows against a close neighbour, so u^{cc} < u there.
  const Dim d(1);
  const MaxAffineFn psi = psi_constant(d);
  DiscreteFn u{Side::B, {}, {}};
  for (int k = 0; k <= 30; ++k) {
    const BaryPoint n = oracle::edge_point(Side::B, 0, k / 30.0);
    u.support.push_back(n);
    u.values.push_back(psi(n));
  }
  u.values[15] += 0.5;
  const DiscreteFn ucc = double_transform(u, u.support);
  CHECK(ucc.values[15] < u.values[15] - 0.1);
  for (std::size_t k = 0; k < u.support.size(); ++k) CHECK(ucc.values[k] <= u.values[k] + 1e-12);
}

TEST_CASE("c-subgradient locations for symmetric functions") {
  gen::Rng rng(46);
  const MaxAffineFn psi = psi_constant(Dim(2));
  for (int trial = 0; trial < 200; ++trial) {
    const BaryPoint n = gen::boundary_point(rng, 2, Side::B);
    const Classification c = classify(n);
    for (int i = 0; i < 4; ++i) {
      if (!c.contains_interior({FaceKind::Tau, i})) continue;
      for (const BaryPoint& m : c_subgradient(psi, n)) {
        const auto w = m.weights();
        CHECK(w[i] >= *std::max_element(w.begin(), w.end()) - 1e-9);
      }
    }
  }
}

TEST_CASE("chart restriction equals (psi - m_j) o q_{i,j}") {
  gen::Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int dv = gen::integer(rng, 1, 3);
    const Dim d(dv);
    const MaxAffineFn psi = gen::symmetric_envelope(rng, dv, Side::B, 1);
    const int i = gen::integer(rng, 0, dv + 1);
    const int j = (i + 1) % (dv + 2);
    const ChartConvexFn f = chart_restrict(psi, i, j);
    for (int k = 0; k < 20; ++k) {
      const BaryPoint n = gen::boundary_point(rng, dv, Side::B);
      if (!in_star(n, i)) continue;
      const double expected = psi(n) - pairing(MVector::vertex(d, j), to_nvector(n));
      CHECK(f(q_inv(i, j, n)) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetry detection") {
  CHECK(is_symmetric(psi_constant(Dim(2))));
  CHECK(is_symmetric(psi_barycenter_target()));
  CHECK_FALSE(is_symmetric(psi_single_vertex(Dim(2), 0)));
  gen::Rng rng(48);
  CHECK(is_symmetric(gen::symmetric_envelope(rng, 2, Side::B, 2)));
}
