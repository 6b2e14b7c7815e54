#include "tropma/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tropma/na_bridge.hpp"

namespace tropma {

namespace {

BaryPoint weights_point(Side side, std::vector<double> w) { return BaryPoint(side, std::move(w)); }

double mass_near(const AtomicMeasure& m, const BaryPoint& p) { return m.weight_at(p, kClusterRadius); }

}  // namespace

bool ExampleRow::pass() const { return std::abs(computed - expected) <= tolerance; }

BaryPoint face_barycenter(Dim d, Side side, int i) {
  std::vector<double> w(d.coords(), 1.0 / (d.value() + 1));
  w.at(i) = 0.0;
  return BaryPoint::repaired(side, std::move(w));
}

std::vector<BaryPoint> singular_points_d2() {
  std::vector<BaryPoint> out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<double> w(4, 0.5);
      w[i] = w[j] = 0.0;
      out.push_back(weights_point(Side::B, std::move(w)));
    }
  return out;
}

MaxAffineFn psi_constant(Dim d) {
  std::vector<Generator> gens;
  for (int i = 0; i < d.coords(); ++i) gens.push_back({BaryPoint::vertex(Side::A, d, i), 0.0});
  return MaxAffineFn(Side::B, std::move(gens));
}

MaxAffineFn psi_barycenter_target() {
  const Dim d(2);
  std::vector<Generator> gens;
  for (int i = 0; i < 4; ++i) gens.push_back({face_barycenter(d, Side::A, i), 1.0 / 9.0});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<double> w(4, 0.0);
      w[i] = w[j] = 0.5;
      gens.push_back({weights_point(Side::A, std::move(w)), 1.0 / 3.0});
    }
  return MaxAffineFn(Side::B, std::move(gens));
}

MaxAffineFn psi_singular_mass() {
  const Dim d(2);
  std::vector<Generator> gens;
  for (int i = 0; i < 4; ++i) gens.push_back({face_barycenter(d, Side::A, i), 0.0});
  // The constant 1/3 equals max_i m_i - 2/3 on B.
  for (int i = 0; i < 4; ++i) gens.push_back({BaryPoint::vertex(Side::A, d, i), 2.0 / 3.0});
  return MaxAffineFn(Side::B, std::move(gens));
}

MaxAffineFn psi_single_vertex(Dim d, int i) {
  return MaxAffineFn(Side::B, {{BaryPoint::vertex(Side::A, d, i), 0.0}});
}

MaxAffineFn psi_all_but(Dim d, int i) {
  std::vector<Generator> gens;
  for (int j = 0; j < d.coords(); ++j)
    if (j != i) gens.push_back({BaryPoint::vertex(Side::A, d, j), 0.0});
  return MaxAffineFn(Side::B, std::move(gens));
}

MaxAffineFn psi_nondifferentiable() {
  const Dim d(1);
  const BaryPoint n0p = face_barycenter(d, Side::B, 0);
  std::vector<Generator> gens;
  for (int i = 0; i < 3; ++i) {
    const BaryPoint mi = BaryPoint::vertex(Side::A, d, i);
    gens.push_back({mi, pairing(mi, n0p)});
  }
  return MaxAffineFn(Side::B, std::move(gens));
}

TestFunction v_nondifferentiable() {
  const Dim d(1);
  DiscreteFn v{Side::B,
               {BaryPoint::vertex(Side::B, d, 0), face_barycenter(d, Side::B, 1), face_barycenter(d, Side::B, 2)},
               {1.0, 0.0, 0.0}};
  return interpolate_on_circle(v);
}

std::vector<std::string> example_names() {
  return {"pairing", "vertmass", "dualvertmass", "singmass", "chart-overcount",
          "pushforward-overcount", "non-differentiable", "normalization"};
}

PathologyReport nonsymmetric_fixtures(const std::string& name) {
  const Dim d2(2);
  PathologyReport out{name, {}, 0.0};
  if (name == "chart-overcount") {
    const int i = 0, j = 1;
    const ChartConvexFn f = chart_restrict(psi_single_vertex(d2, i), i, j);
    const double mass = alexandrov_ma_chart(f, std::vector<double>(2, 0.0));
    out.rows.push_back({name, "chart MA of psi = m_0 at the origin", 128.0, mass, 1e-6});
    out.total = mass;
  } else if (name == "pushforward-overcount") {
    const int i = 0;
    MAOptions opts;
    opts.allow_nonsymmetric = true;
    const MAResult ma = trop_ma(psi_all_but(d2, i), opts);
    out.rows.push_back({name, "mass at n_0", 8.0, mass_near(ma.measure, BaryPoint::vertex(Side::B, d2, i)), 1e-6});
    out.rows.push_back({name, "mass at n_0'", 32.0, mass_near(ma.measure, face_barycenter(d2, Side::B, i)), 1e-6});
    out.total = ma.measure.total();
    out.rows.push_back({name, "total mass (symmetric total is 32)", 40.0, out.total, 1e-6});
  } else if (name == "non-differentiable") {
    const DirectionalDerivative dd = directional_energy_derivative(psi_nondifferentiable(), v_nondifferentiable(), 1e-3);
    out.rows.push_back({name, "one-sided derivative gap", 3.0, dd.gap, 1e-6});
    out.total = dd.gap;
  } else {
    throw std::invalid_argument("unknown pathology fixture '" + name + "'");
  }
  return out;
}

std::vector<ExampleRow> run_examples(const std::string& name, std::optional<int> dim) {
  const auto names = example_names();
  if (!name.empty() && std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown example '" + name + "'");
  auto wanted = [&](const char* n) { return name.empty() || name == n; };
  auto dims = [&](std::vector<int> defaults) { return dim ? std::vector<int>{*dim} : defaults; };
  std::vector<ExampleRow> rows;

  if (wanted("pairing")) {
    for (int dv : dims({1, 2, 3})) {
      const Dim d(dv);
      double worst = 0.0;
      for (int i = 0; i < d.coords(); ++i)
        for (int j = 0; j < d.coords(); ++j) {
          const double expected = i == j ? -(dv + 1.0) : 1.0;
          worst = std::max(worst, std::abs(pairing(MVector::vertex(d, i), NVector::vertex(d, j)) - expected));
        }
      rows.push_back({"pairing", "max |<m_i,n_j> - table| (d=" + std::to_string(dv) + ")", 0.0, worst, 0.0});
    }
  }
  if (wanted("vertmass")) {
    for (int dv : dims({1, 2, 3})) {
      const Dim d(dv);
      const MAResult ma = trop_ma(psi_constant(d));
      const double expected = std::pow(d.coords(), dv) / factorial(dv);
      for (int i = 0; i < d.coords(); ++i)
        rows.push_back({"vertmass", "mass at n_" + std::to_string(i) + " (d=" + std::to_string(dv) + ")", expected,
                        mass_near(ma.measure, BaryPoint::vertex(Side::B, d, i)), 1e-9});
      rows.push_back({"vertmass", "number of atoms (d=" + std::to_string(dv) + ")", static_cast<double>(d.coords()),
                      static_cast<double>(ma.measure.atoms().size()), 0.0});
    }
  }
  if (wanted("dualvertmass")) {
    const Dim d(2);
    const MAResult ma = trop_ma(psi_barycenter_target());
    for (int i = 0; i < 4; ++i)
      rows.push_back({"dualvertmass", "mass at n_" + std::to_string(i) + "'", 8.0,
                      mass_near(ma.measure, face_barycenter(d, Side::B, i)), 1e-6});
    rows.push_back({"dualvertmass", "total mass", 32.0, ma.measure.total(), 1e-6});
  }
  if (wanted("singmass")) {
    const MaxAffineFn psi = psi_singular_mass();
    const MAResult ma = trop_ma(psi);
    const auto sing = singular_points_d2();
    for (const BaryPoint& x : sing)
      rows.push_back({"singmass", "tropical mass at singular point", 16.0 / 3.0, mass_near(ma.measure, x), 1e-6});
    rows.push_back({"singmass", "tropical mass on B_0", 0.0, ma.measure.total() - [&] {
                      double s = 0.0;
                      for (const BaryPoint& x : sing) s += mass_near(ma.measure, x);
                      return s;
                    }(), 1e-6});
    for (const ChartComparison& c : compare_in_charts(psi, ma))
      if (!c.in_regular_locus)
        rows.push_back({"singmass", "chart Alexandrov mass at singular point (q_" + std::to_string(c.i) + "," +
                                        std::to_string(c.j) + ")",
                        80.0 / 9.0, c.chart_mass, 1e-6, true});
  }
  if (wanted("chart-overcount") || wanted("pushforward-overcount") || wanted("non-differentiable")) {
    for (const char* n : {"chart-overcount", "pushforward-overcount", "non-differentiable"})
      if (wanted(n))
        for (ExampleRow& r : nonsymmetric_fixtures(n).rows) rows.push_back(std::move(r));
  }
  if (wanted("normalization")) {
    for (int dv : dims({1, 2})) {
      const NormalizationReport rep = compare_ma_normalization(psi_constant(Dim(dv)));
      rows.push_back({"normalization", "NA-side total (d=" + std::to_string(dv) + ")", rep.expected_na_total,
                      rep.na_total, 1e-9 * rep.expected_na_total});
    }
  }
  return rows;
}

}  // namespace tropma
