#include "tropma/na_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace tropma {

TropicalPotential potential_eval(const MaxAffineFn& psi, int j, const std::vector<NVector>& queries) {
  if (psi.side() != Side::B) throw std::invalid_argument("potential needs psi on B");
  const Dim d = psi.dim();
  if (j < 0 || j >= d.coords()) throw std::invalid_argument("reference index out of range");
  const MVector mj = MVector::vertex(d, j);
  TropicalPotential out{psi, j, queries, {}};
  out.values.reserve(queries.size());
  for (const NVector& n : queries) out.values.push_back(psi.evaluate(n) - pairing(mj, n));
  return out;
}

NormalizationReport compare_ma_normalization(const MaxAffineFn& psi) {
  const Dim d = psi.dim();
  const MAResult ma = trop_ma(psi);
  NormalizationReport out;
  out.d = d.value();
  out.d_factorial = factorial(d.value());
  out.tropical_total = ma.measure.total();
  out.na_total = out.d_factorial * out.tropical_total;
  out.expected_na_total = std::pow(d.coords(), d.value() + 1);
  out.max_chart_residual = 0.0;
  for (const ChartComparison& c : compare_in_charts(psi, ma)) {
    out.entries.push_back({c.atom, c.tropical_mass, c.chart_mass, out.d_factorial * c.tropical_mass,
                           c.in_regular_locus});
    if (c.in_regular_locus)
      out.max_chart_residual = std::max(out.max_chart_residual, out.d_factorial * c.residual);
  }
  return out;
}

LegendreGrid legendre_export(const MaxAffineFn& psi, int resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  const Dim d = psi.dim();
  LegendreGrid out{ctransform(psi), {}, {}};
  const int coords = d.coords();
  std::vector<int> counts(coords, 0);
  std::function<void(int, int)> recurse = [&](int pos, int left) {
    if (pos == coords - 1) {
      counts[pos] = left;
      std::vector<double> m(coords);
      for (int k = 0; k < coords; ++k) m[k] = coords * (static_cast<double>(counts[k]) / resolution) - 1.0;
      MVector mv(std::move(m));
      out.values.push_back(out.phi.evaluate(mv));
      out.points.push_back(std::move(mv));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[pos] = c;
      recurse(pos + 1, left - c);
    }
  };
  recurse(0, resolution);
  return out;
}

double midpoint_convexity_defect(const LegendreGrid& grid) {
  double worst = 0.0;
  for (std::size_t a = 0; a < grid.points.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.points.size(); ++b) {
      std::vector<double> mid(grid.points[a].coords().size());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (grid.points[a][k] + grid.points[b][k]);
      const double v = grid.phi.evaluate(MVector(std::move(mid)));
      worst = std::max(worst, v - 0.5 * (grid.values[a] + grid.values[b]));
    }
  }
  return worst;
}

}  // namespace tropma
