#include "tropma/cconvex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tropma/cells.hpp"
#include "tropma/lp.hpp"

namespace tropma {

MaxAffineFn::MaxAffineFn(Side side, std::vector<Generator> generators)
    : side_(side), generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("MaxAffineFn needs at least one generator");
  const Dim d = generators_.front().anchor.dim();
  for (const Generator& g : generators_) {
    if (g.anchor.side() == side_) throw std::invalid_argument("MaxAffineFn anchors must lie on the opposite side");
    if (!(g.anchor.dim() == d)) throw std::invalid_argument("MaxAffineFn anchors have inconsistent dimension");
    if (!std::isfinite(g.offset)) throw std::invalid_argument("MaxAffineFn offset is not finite");
  }
}

std::vector<BaryPoint> MaxAffineFn::anchors() const {
  std::vector<BaryPoint> out;
  out.reserve(generators_.size());
  for (const Generator& g : generators_) out.push_back(g.anchor);
  return out;
}

std::vector<double> MaxAffineFn::offsets() const {
  std::vector<double> out;
  out.reserve(generators_.size());
  for (const Generator& g : generators_) out.push_back(g.offset);
  return out;
}

double MaxAffineFn::operator()(const BaryPoint& x) const {
  if (x.side() != side_) throw std::invalid_argument("MaxAffineFn evaluated on the wrong side");
  double best = -1e300;
  for (const Generator& g : generators_)
    best = std::max(best, pairing(g.anchor, x) - g.offset);
  return best;
}

double MaxAffineFn::evaluate(const NVector& n) const {
  if (side_ != Side::B) throw std::invalid_argument("NVector evaluation needs a function on B");
  double best = -1e300;
  for (const Generator& g : generators_) best = std::max(best, pairing(to_mvector(g.anchor), n) - g.offset);
  return best;
}

double MaxAffineFn::evaluate(const MVector& m) const {
  if (side_ != Side::A) throw std::invalid_argument("MVector evaluation needs a function on A");
  double best = -1e300;
  for (const Generator& g : generators_) best = std::max(best, pairing(m, to_nvector(g.anchor)) - g.offset);
  return best;
}

MaxAffineFn MaxAffineFn::shifted(double a) const {
  std::vector<Generator> gens = generators_;
  for (Generator& g : gens) g.offset -= a;
  return MaxAffineFn(side_, std::move(gens));
}

MaxAffineFn MaxAffineFn::acted(const Permutation& g) const {
  std::vector<Generator> gens;
  gens.reserve(generators_.size());
  for (const Generator& gen : generators_) gens.push_back({act(g, gen.anchor), gen.offset});
  return MaxAffineFn(side_, std::move(gens));
}

void DiscreteFn::validate() const {
  if (support.empty()) throw std::invalid_argument("DiscreteFn has empty support");
  if (support.size() != values.size()) throw std::invalid_argument("DiscreteFn support/values size mismatch");
  for (std::size_t a = 0; a < support.size(); ++a) {
    if (support[a].side() != side) throw std::invalid_argument("DiscreteFn support point on the wrong side");
    if (!std::isfinite(values[a])) throw std::invalid_argument("DiscreteFn value is not finite");
    for (std::size_t b = 0; b < a; ++b)
      if (support[a].approx_equal(support[b], 1e-12)) throw std::invalid_argument("DiscreteFn support has duplicates");
  }
}

double ChartConvexFn::operator()(const std::vector<double>& t) const {
  double best = -1e300;
  for (std::size_t p = 0; p < gradients.size(); ++p) {
    double v = intercepts[p];
    for (std::size_t k = 0; k < t.size(); ++k) v += gradients[p][k] * t[k];
    best = std::max(best, v);
  }
  return best;
}

std::vector<int> ChartConvexFn::active(const std::vector<double>& t, double tol) const {
  const double top = (*this)(t);
  std::vector<int> out;
  for (std::size_t p = 0; p < gradients.size(); ++p) {
    double v = intercepts[p];
    for (std::size_t k = 0; k < t.size(); ++k) v += gradients[p][k] * t[k];
    if (v >= top - tol) out.push_back(static_cast<int>(p));
  }
  return out;
}

MaxAffineFn ctransform_discrete(const DiscreteFn& u) {
  u.validate();
  std::vector<Generator> gens;
  gens.reserve(u.support.size());
  for (std::size_t a = 0; a < u.support.size(); ++a) gens.push_back({u.support[a], u.values[a]});
  return MaxAffineFn(opposite(u.side), std::move(gens));
}

double ctransform_envelope(const MaxAffineFn& f, const BaryPoint& x) {
  if (x.side() == f.side()) throw std::invalid_argument("c-transform query must lie on the opposite side");
  const int coords = f.dim().coords();
  if (x.dim().coords() != coords) throw std::invalid_argument("dimension mismatch in c-transform");
  double best = -1e300;
  // Variables: weights at indices != face, then t+ and t-.
  for (int face = 0; face < coords; ++face) {
    LinearProgram lp;
    const int nvar = coords - 1 + 2;
    lp.objective.assign(nvar, 0.0);
    lp.objective[nvar - 2] = 1.0;
    lp.objective[nvar - 1] = -1.0;
    for (const Generator& g : f.generators()) {
      std::vector<double> row(nvar, 0.0);
      for (int r = 0, pos = 0; r < coords; ++r) {
        if (r == face) continue;
        row[pos++] = coords * (x[r] - g.anchor[r]);
      }
      row[nvar - 2] = 1.0;
      row[nvar - 1] = -1.0;
      lp.a_ub.push_back(std::move(row));
      lp.b_ub.push_back(g.offset);
    }
    std::vector<double> sum(nvar, 0.0);
    for (int v = 0; v < coords - 1; ++v) sum[v] = 1.0;
    lp.a_eq.push_back(std::move(sum));
    lp.b_eq.push_back(1.0);
    const LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) throw std::logic_error("face linear program failed");
    best = std::max(best, res.value);
  }
  return best;
}

std::vector<BaryPoint> breakpoints(const MaxAffineFn& f) {
  const std::vector<BaryPoint> anchors = f.anchors();
  const std::vector<double> offsets = f.offsets();
  std::vector<BaryPoint> out;
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    for (const FaceCell& cell : generator_cells(f.side(), anchors, offsets, static_cast<int>(k), TiePolicy::LowestIndex))
      for (const BaryPoint& v : cell.vertices)
        if (find_point(out, v, 1e-9) < 0) out.push_back(v);
  }
  return out;
}

MaxAffineFn ctransform(const MaxAffineFn& f) {
  std::vector<Generator> gens;
  for (const BaryPoint& w : breakpoints(f)) gens.push_back({w, f(w)});
  return MaxAffineFn(opposite(f.side()), std::move(gens));
}

DiscreteFn double_transform(const MaxAffineFn& f, const std::vector<BaryPoint>& grid) {
  const MaxAffineFn fc = ctransform(f);
  DiscreteFn out{f.side(), grid, {}};
  out.values.reserve(grid.size());
  for (const BaryPoint& x : grid) {
    if (x.side() != f.side()) throw std::invalid_argument("grid point on the wrong side");
    out.values.push_back(ctransform_envelope(fc, x));
  }
  return out;
}

DiscreteFn double_transform(const DiscreteFn& u, const std::vector<BaryPoint>& grid) {
  const MaxAffineFn uc = ctransform_discrete(u);
  DiscreteFn out{u.side, grid, {}};
  out.values.reserve(grid.size());
  for (const BaryPoint& x : grid) {
    if (x.side() != u.side) throw std::invalid_argument("grid point on the wrong side");
    out.values.push_back(ctransform_envelope(uc, x));
  }
  return out;
}

std::vector<BaryPoint> c_subgradient(const MaxAffineFn& f, const BaryPoint& x, double tol) {
  const double top = f(x);
  std::vector<BaryPoint> out;
  for (const Generator& g : f.generators())
    if (pairing(g.anchor, x) - g.offset >= top - tol && find_point(out, g.anchor, 1e-12) < 0)
      out.push_back(g.anchor);
  return out;
}

ChartConvexFn chart_restrict(const MaxAffineFn& f, int i, int j) {
  if (f.side() != Side::B) throw std::invalid_argument("chart_restrict needs a function on B");
  const Dim dim = f.dim();
  const Chart chart = q_chart(dim, i, j);
  const std::vector<int> slots = chart.slots();
  const int d = dim.value();
  const double scale = dim.coords();
  ChartConvexFn out{chart, {}, {}};
  // On T~: (m_k - m_j) o q = (d+2) t_k for k != i, and
  // (m_i - m_j) o q = (d+2) ((d+2) max(0, max_k t_k) - sum_k t_k - 1).
  for (const Generator& g : f.generators()) {
    const BaryPoint& a = g.anchor;
    std::vector<double> linear(d);
    for (int s = 0; s < d; ++s) linear[s] = scale * a[slots[s]];
    const double ai = a[i];
    const double intercept = -g.offset - ai * scale;
    for (int piece = -1; piece < d; ++piece) {
      std::vector<double> grad = linear;
      for (int s = 0; s < d; ++s) grad[s] += ai * scale * ((s == piece ? scale : 0.0) - 1.0);
      out.gradients.push_back(std::move(grad));
      out.intercepts.push_back(intercept);
      if (ai == 0.0) break;
    }
  }
  return out;
}

double symmetry_defect(const MaxAffineFn& f) {
  const Dim dim = f.dim();
  std::vector<BaryPoint> probes = breakpoints(f);
  for (BaryPoint& p : sample_boundary(dim, f.side(), 200, 0x5eed)) probes.push_back(std::move(p));
  double defect = 0.0;
  for (int k = 1; k < dim.coords(); ++k) {
    const Permutation g = Permutation::transposition(dim.coords(), 0, k);
    for (const BaryPoint& x : probes) defect = std::max(defect, std::abs(f(act(g, x)) - f(x)));
  }
  return defect;
}

bool is_symmetric(const MaxAffineFn& f, double tol) { return symmetry_defect(f) <= tol; }

double ctransform_lipschitz_bound(Dim d, Side target_side) {
  // Transforms of functions on B are Lipschitz with constant max |n_i| = 1;
  // transforms of functions on A with constant max |m_i|.
  if (target_side == Side::A) return 1.0;
  return std::sqrt((d.value() + 1.0) * d.coords());
}

}  // namespace tropma
