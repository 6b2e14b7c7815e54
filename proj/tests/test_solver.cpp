#include "doctest.h"
#include "frozen.hpp"
#include "support.hpp"
#include "tropma/fixtures.hpp"
#include "tropma/solver.hpp"

using namespace tropma;

namespace {

AtomicMeasure vertex_target(Dim d) {
  AtomicMeasure nu(Side::B);
  for (int i = 0; i < d.coords(); ++i)
    nu.add(BaryPoint::vertex(Side::B, d, i), std::pow(d.coords(), d.value()) / oracle::factorial(d.value()));
  return nu;
}

AtomicMeasure barycenter_target() {
  AtomicMeasure nu(Side::B);
  for (int i = 0; i < 4; ++i) nu.add(face_barycenter(Dim(2), Side::B, i), 8.0);
  return nu;
}

SolveConfig config_for(Dim d) {
  SolveConfig c;
  c.tol = 1e-6 * required_mass(d);
  return c;
}

bool trace_monotone(const SolveResult& r) {
  for (std::size_t k = 1; k < r.trace.size(); ++k)
    if (r.trace[k].energy > r.trace[k - 1].energy + 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("vertex target gives constant psi") {
  for (int dv = 1; dv <= 3; ++dv) {
    const Dim d(dv);
    const SolveResult r = solve(vertex_target(d), config_for(d));
    REQUIRE(r.converged);
    CHECK(r.residual < config_for(d).tol);
    for (double g : r.g) CHECK(g == doctest::Approx(r.g.front()));
    CHECK(symmetry_defect(*r.psi) < 1e-9);
    const auto pts = sample_boundary(d, Side::B, 200, 5);
    for (const BaryPoint& p : pts) CHECK((*r.psi)(p) == doctest::Approx((*r.psi)(pts.front())).epsilon(1e-9));
  }
}

TEST_CASE("barycenter target recovers the explicit psi up to a constant") {
  const SolveResult r = solve(barycenter_target(), config_for(Dim(2)));
  REQUIRE(r.converged);
  const MaxAffineFn explicit_psi = psi_barycenter_target();
  const auto pts = sample_boundary(Dim(2), Side::B, 1000, 17);
  std::vector<double> diff;
  for (const BaryPoint& p : pts) diff.push_back((*r.psi)(p) - explicit_psi(p));
  const auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
  CHECK(*hi - *lo < 1e-3);
}

TEST_CASE("mixed d = 1 target matches the bisection oracle") {
  const Dim d(1);
  AtomicMeasure nu(Side::B);
  for (int i = 0; i < 3; ++i) {
    nu.add(BaryPoint::vertex(Side::B, d, i), 1.5);
    nu.add(face_barycenter(d, Side::B, i), 1.5);
  }
  SolveConfig cfg;
  cfg.tol = 1e-10;
  const SolveResult r = solve(nu, cfg);
  REQUIRE(r.converged);
  const double g_vertex = r.g[find_point(r.atoms, BaryPoint::vertex(Side::B, d, 0))];
  const double g_mid = r.g[find_point(r.atoms, face_barycenter(d, Side::B, 0))];
  CHECK(g_mid - g_vertex == doctest::Approx(frozen::kMixedD1Delta).epsilon(1e-8));
}

TEST_CASE("mass normalization is enforced") {
  const AtomicMeasure single = vertex_target(Dim(2));
  AtomicMeasure doubled(Side::B);
  for (const Atom& a : single.atoms()) doubled.add(a.point, 2 * a.weight);
  CHECK_THROWS_AS(solve(doubled, config_for(Dim(2))), std::invalid_argument);
  try {
    solve(doubled, config_for(Dim(2)));
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("(d+2)^{d+1}/d!") != std::string::npos);
  }
  CHECK_THROWS_AS(solve(AtomicMeasure(Side::B), config_for(Dim(2))), std::invalid_argument);
  SolveConfig bad = config_for(Dim(2));
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve(vertex_target(Dim(2)), bad), std::invalid_argument);
}

TEST_CASE("non-symmetric targets are symmetrized") {
  AtomicMeasure nu(Side::B);
  nu.add(BaryPoint::vertex(Side::B, Dim(2), 0), 32.0);
  const SolveResult r = solve(nu, config_for(Dim(2)));
  REQUIRE(r.converged);
  CHECK(r.atoms.size() == 4);
  for (double m : r.cell_masses) CHECK(m == doctest::Approx(8.0));
}

TEST_CASE("random symmetric targets: convergence, monotone traces, cell locations, optimality") {
  gen::Rng rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    const int dv = 1 + trial % 2;
    const Dim d(dv);
    const AtomicMeasure nu = gen::symmetric_target(rng, dv, gen::integer(rng, 1, 2));
    const SolveResult r = solve(nu, config_for(d));
    REQUIRE(r.converged);
    CHECK(r.residual <= 1e-6 * required_mass(d));
    CHECK(trace_monotone(r));
    const CellComplex cx = cells_from_weights(r.atoms, r.g);
    CHECK(props::cell_inclusion_violations(r.atoms, cx.cells) == 0);
    // Minimizer: no lower energy among constant and random G-invariant weights.
    const double best = energy(r.atoms, r.g, r.target);
    CHECK(best <= energy(r.atoms, std::vector<double>(r.atoms.size(), 0.0), r.target) + 1e-9);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> per_orbit(r.g_orbit.size());
      for (double& x : per_orbit) x = gen::uniform(rng, -1, 1);
      std::vector<double> g(r.atoms.size());
      for (std::size_t a = 0; a < g.size(); ++a) g[a] = per_orbit[r.orbit_of[a]];
      CHECK(best <= energy(r.atoms, g, r.target) + 1e-9);
    }
    // The MA measure of the output is the target.
    const MAResult ma = trop_ma(*r.psi);
    for (std::size_t k = 0; k < r.atoms.size(); ++k)
      CHECK(std::abs(ma.measure.weight_at(r.atoms[k], kClusterRadius) - r.target[k]) <= 2 * config_for(d).tol);
  }
}

TEST_CASE("uniqueness modulo constants") {
  SUBCASE("vertex target") {
    const UniquenessReport rep = verify_uniqueness(vertex_target(Dim(2)), config_for(Dim(2)), 5);
    CHECK(rep.passed);
  }
  SUBCASE("barycenter target") {
    const UniquenessReport rep = verify_uniqueness(barycenter_target(), config_for(Dim(2)), 5);
    CHECK(rep.passed);
  }
  SUBCASE("translation of the initial weights") {
    gen::Rng rng(72);
    const AtomicMeasure nu = gen::symmetric_target(rng, 2, 2);
    SolveConfig a = config_for(Dim(2)), b = a;
    std::vector<double> init(nu.atoms().size());
    const auto dec = orbit_decomposition(nu.points(), nu.weights());
    REQUIRE(dec);
    for (std::size_t k = 0; k < init.size(); ++k) init[k] = 0.1 * dec->orbit_of[k];
    a.initial_g = init;
    for (double& x : init) x += 5.0;
    b.initial_g = init;
    const SolveResult ra = solve(nu, a), rb = solve(nu, b);
    for (std::size_t k = 0; k < ra.g.size(); ++k) CHECK(ra.g[k] == doctest::Approx(rb.g[k]).epsilon(1e-12));
  }
}

TEST_CASE("normalizations coincide on the symmetric subspace") {
  gen::Rng rng(73);
  const AtomicMeasure nu = gen::symmetric_target(rng, 1, 2);
  SolveConfig a = config_for(Dim(1)), b = a;
  b.normalization = Normalization::FixValueAtOrbit0;
  const SolveResult ra = solve(nu, a), rb = solve(nu, b);
  for (std::size_t k = 0; k < ra.g.size(); ++k) CHECK(ra.g[k] == doctest::Approx(rb.g[k]));
  double orbit_sum = 0.0;
  for (std::size_t k = 0; k < ra.g.size(); ++k)
    if (ra.orbit_of[k] == ra.orbit_of[0]) orbit_sum += ra.g[k];
  CHECK(std::abs(orbit_sum) < 1e-12);
  CHECK(std::abs(rb.g[0]) < 1e-12);
}

TEST_CASE("iteration limit returns the best iterate with a failure flag") {
  gen::Rng rng(74);
  const AtomicMeasure nu = gen::symmetric_target(rng, 2, 2);
  SolveConfig cfg = config_for(Dim(2));
  cfg.max_iter = 1;
  cfg.tol = 1e-14;
  const SolveResult r = solve(nu, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.psi.has_value());
}

TEST_CASE("Monte Carlo backend refuses tolerances below its noise") {
  gen::Rng rng(75);
  const AtomicMeasure nu = gen::symmetric_target(rng, 1, 1);
  SolveConfig cfg;
  cfg.backend = Backend::MonteCarlo;
  cfg.mc_samples = 10000;
  cfg.tol = 1e-6;
  bool noisy = false;
  try {
    solve(nu, cfg);
  } catch (const std::invalid_argument&) {
    noisy = true;
  }
  // A target whose cells are whole faces has zero sampling variance.
  if (!noisy) CHECK(solve(nu, cfg).converged);
  cfg.tol = 0.5;
  cfg.mc_samples = 100000;
  const SolveResult r = solve(nu, cfg);
  CHECK(r.converged);
}

TEST_CASE("continuous targets: ladders and rejection of zero mass") {
  SUBCASE("d = 1 ladder is Cauchy") {
    const LebesgueMeasure uni = LebesgueMeasure::uniform(Dim(1), Side::B, 9.0);
    const auto ladder = solve_continuous(uni, {3, 9, 27}, config_for(Dim(1)));
    REQUIRE(ladder.size() == 3);
    for (const LadderStep& s : ladder) CHECK(s.result.converged);
    CHECK(ladder[2].sup_to_previous < ladder[1].sup_to_previous);
  }
  SUBCASE("d = 2, one atom per face is the barycenter example") {
    const LebesgueMeasure uni = LebesgueMeasure::uniform(Dim(2), Side::B, 32.0);
    const auto ladder = solve_continuous(uni, {1}, config_for(Dim(2)));
    const MaxAffineFn explicit_psi = psi_barycenter_target();
    const auto pts = sample_boundary(Dim(2), Side::B, 300, 3);
    std::vector<double> diff;
    for (const BaryPoint& p : pts) diff.push_back((*ladder[0].result.psi)(p) - explicit_psi(p));
    const auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
    CHECK(*hi - *lo < 1e-3);
  }
  SUBCASE("zero density") {
    CHECK_THROWS_AS(solve_continuous(LebesgueMeasure{Side::B, {0, 0, 0, 0}}, {1}, config_for(Dim(2))),
                    std::invalid_argument);
  }
}
