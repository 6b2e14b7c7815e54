#include "tropma/ma_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tropma/charts.hpp"
#include "tropma/parallel.hpp"
#include "tropma/polytope.hpp"
#include "tropma/rng.hpp"

namespace tropma {

std::string to_string(Backend b) { return b == Backend::Exact ? "exact" : "monte-carlo"; }

Backend backend_from_string(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "monte-carlo" || s == "mc") return Backend::MonteCarlo;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

// ---------------------------------------------------------------------------
// Cells

double CellComplex::total() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

double CellComplex::integral() const {
  double s = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k)
    for (const FaceCell& c : cells[k]) s += c.mass * (bary_pairing(c.centroid, atoms[k].weights()) - g[k]);
  return s;
}

namespace {

FaceCell map_cell(const Permutation& pi, const FaceCell& cell) {
  FaceCell out;
  out.face = pi(cell.face);
  out.mass = cell.mass;
  for (const BaryPoint& v : cell.vertices) out.vertices.push_back(act(pi, v));
  out.centroid.assign(cell.centroid.size(), 0.0);
  for (std::size_t k = 0; k < cell.centroid.size(); ++k) out.centroid[pi(static_cast<int>(k))] = cell.centroid[k];
  return out;
}

void check_atoms(const std::vector<BaryPoint>& atoms, const std::vector<double>& g) {
  if (atoms.empty()) throw std::invalid_argument("cell computation needs at least one atom");
  if (atoms.size() != g.size()) throw std::invalid_argument("atoms and weights have different sizes");
  for (const BaryPoint& a : atoms)
    if (a.side() != Side::B) throw std::invalid_argument("atoms must lie on B");
}

}  // namespace

CellComplex cells_from_weights(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                               const CellOptions& opts) {
  check_atoms(atoms, g);
  CellComplex out{atoms, g, std::vector<std::vector<FaceCell>>(atoms.size()),
                  std::vector<double>(atoms.size(), 0.0)};

  std::optional<OrbitDecomposition> orbits;
  if (opts.use_symmetry && atoms.front().dim().value() <= kMaxEnumerableDim)
    orbits = orbit_decomposition(atoms, g);

  std::vector<int> todo;
  if (orbits) {
    for (const auto& o : orbits->orbits) todo.push_back(o.front());
  } else {
    for (std::size_t k = 0; k < atoms.size(); ++k) todo.push_back(static_cast<int>(k));
  }
  parallel_for(todo.size(), [&](std::size_t t) {
    const int k = todo[t];
    out.cells[k] = generator_cells(Side::A, atoms, g, k, opts.ties);
  });
  if (orbits) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const int rep = orbits->orbits[orbits->orbit_of[a]].front();
      if (static_cast<int>(a) == rep) continue;
      for (const FaceCell& c : out.cells[rep]) out.cells[a].push_back(map_cell(orbits->from_rep[a], c));
    }
  }
  for (std::size_t k = 0; k < atoms.size(); ++k)
    for (const FaceCell& c : out.cells[k]) out.masses[k] += c.mass;
  return out;
}

McCellMasses mc_cell_masses(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                            std::size_t samples, std::uint64_t seed) {
  check_atoms(atoms, g);
  const Dim dim = atoms.front().dim();
  const int coords = dim.coords();
  const std::size_t n_atoms = atoms.size();
  const std::size_t per_face = std::max<std::size_t>(1, samples / coords);
  constexpr std::size_t kBlock = 8192;
  const std::size_t blocks_per_face = (per_face + kBlock - 1) / kBlock;

  struct BlockResult {
    std::vector<std::size_t> counts;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t ties = 0;
  };
  std::vector<BlockResult> results(coords * blocks_per_face);

  parallel_for(results.size(), [&](std::size_t task) {
    const int face = static_cast<int>(task / blocks_per_face);
    const std::size_t block = task % blocks_per_face;
    const std::size_t begin = block * kBlock;
    const std::size_t end = std::min(per_face, begin + kBlock);
    CounterRng rng(seed, (static_cast<std::uint64_t>(face) << 32) | block);
    BlockResult& res = results[task];
    res.counts.assign(n_atoms, 0);
    std::vector<double> free(coords - 1), alpha(coords);
    for (std::size_t s = begin; s < end; ++s) {
      rng.simplex_point(free);
      for (int k = 0, pos = 0; k < coords; ++k) alpha[k] = k == face ? 0.0 : free[pos++];
      double best = -1e300, second = -1e300;
      std::size_t arg = 0;
      for (std::size_t a = 0; a < n_atoms; ++a) {
        const double v = bary_pairing(alpha, atoms[a].weights()) - g[a];
        if (v > best) {
          second = best;
          best = v;
          arg = a;
        } else if (v > second) {
          second = v;
        }
      }
      if (best - second <= 1e-9) ++res.ties;
      ++res.counts[arg];
      res.sum += best;
      res.sum_sq += best * best;
    }
  });

  McCellMasses out;
  out.masses.assign(n_atoms, 0.0);
  out.std_errors.assign(n_atoms, 0.0);
  std::vector<double> variance(n_atoms, 0.0);
  double integral_var = 0.0;
  for (int face = 0; face < coords; ++face) {
    const double fm = face_measure(dim, {FaceKind::Sigma, face});
    std::vector<std::size_t> counts(n_atoms, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t b = 0; b < blocks_per_face; ++b) {
      const BlockResult& r = results[face * blocks_per_face + b];
      for (std::size_t a = 0; a < n_atoms; ++a) counts[a] += r.counts[a];
      sum += r.sum;
      sum_sq += r.sum_sq;
      out.ties += r.ties;
    }
    const double n = static_cast<double>(per_face);
    for (std::size_t a = 0; a < n_atoms; ++a) {
      const double p = counts[a] / n;
      out.masses[a] += fm * p;
      variance[a] += fm * fm * p * (1.0 - p) / n;
    }
    const double mean = sum / n;
    out.integral += fm * mean;
    integral_var += fm * fm * std::max(0.0, sum_sq / n - mean * mean) / n;
  }
  for (std::size_t a = 0; a < n_atoms; ++a) out.std_errors[a] = std::sqrt(variance[a]);
  out.integral_std_error = std::sqrt(integral_var);
  out.samples = per_face * coords;
  return out;
}

// ---------------------------------------------------------------------------
// Monge-Ampere measure

namespace {

AtomicMeasure cluster(const std::vector<BaryPoint>& points, const std::vector<double>& masses,
                      double drop_below) {
  std::vector<BaryPoint> centers;
  std::vector<double> weights;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (masses[k] <= drop_below) continue;
    const int c = find_point(centers, points[k], kClusterRadius);
    if (c >= 0) {
      weights[c] += masses[k];
    } else {
      centers.push_back(points[k]);
      weights.push_back(masses[k]);
    }
  }
  AtomicMeasure out(Side::B);
  for (std::size_t c = 0; c < centers.size(); ++c) out.add(centers[c], weights[c]);
  return out;
}

}  // namespace

MAResult trop_ma(const MaxAffineFn& psi, const MAOptions& opts) {
  if (psi.side() != Side::B) throw std::invalid_argument("trop_ma needs a function on B");
  const bool symmetric = is_symmetric(psi);
  if (!symmetric && !opts.allow_nonsymmetric)
    throw std::invalid_argument("trop_ma needs a G-invariant psi (symmetry defect " +
                                std::to_string(symmetry_defect(psi)) + ")");
  const Dim dim = psi.dim();
  const double total = total_measure(dim, Side::A);

  // psi^c = max_w <m, w> - psi(w) over the breakpoints w of psi.
  const std::vector<BaryPoint> w = breakpoints(psi);
  std::vector<double> g;
  g.reserve(w.size());
  for (const BaryPoint& p : w) g.push_back(psi(p));

  MAResult out;
  out.backend = opts.backend;
  if (opts.backend == Backend::Exact) {
    CellOptions copts;
    copts.ties = symmetric ? TiePolicy::LowestIndex : TiePolicy::Overlap;
    const CellComplex cx = cells_from_weights(w, g, copts);
    out.measure = cluster(w, cx.masses, 1e-12 * total);
    out.error_estimate = symmetric ? std::abs(cx.total() - total) : 0.0;
  } else {
    const McCellMasses mc = mc_cell_masses(w, g, opts.samples, opts.seed);
    out.measure = cluster(w, mc.masses, 0.0);
    double worst = 0.0;
    for (double se : mc.std_errors) worst = std::max(worst, se);
    out.error_estimate = worst;
  }
  return out;
}

double alexandrov_ma_chart(const ChartConvexFn& f, const std::vector<double>& t0) {
  if (static_cast<int>(t0.size()) != f.chart.d) throw std::invalid_argument("chart point has wrong dimension");
  std::vector<Eigen::VectorXd> grads;
  for (int p : f.active(t0)) {
    Eigen::VectorXd v(f.chart.d);
    for (int k = 0; k < f.chart.d; ++k) v[k] = f.gradients[p][k];
    grads.push_back(std::move(v));
  }
  return convex_hull(grads).volume;
}

namespace {

ChartComparison compare_one(const MaxAffineFn& psi, const Atom& atom, int i, int j, bool regular) {
  const ChartConvexFn f = chart_restrict(psi, i, j);
  const double chart_mass = alexandrov_ma_chart(f, q_inv(i, j, atom.point));
  return {atom.point, atom.weight, i, j, chart_mass, regular, std::abs(chart_mass - atom.weight)};
}

}  // namespace

std::vector<ChartComparison> compare_in_charts(const MaxAffineFn& psi, const MAResult& ma) {
  const int coords = psi.dim().coords();
  std::vector<ChartComparison> out;
  for (const Atom& atom : ma.measure.atoms()) {
    const Classification cls = classify(atom.point);
    int i = -1, j = -1;
    for (const FaceMembership& fm : cls.faces) {
      if (!fm.interior) continue;
      if (fm.face.kind == FaceKind::TStar) {
        i = fm.face.index;
        j = (i + 1) % coords;
        break;
      }
      if (fm.face.kind == FaceKind::Tau) {
        j = fm.face.index;
        i = (j + 1) % coords;
      }
    }
    if (i < 0) {
      // Outside B_0: any chart whose open star (weight_i > 0) contains the atom.
      const auto w = atom.point.weights();
      i = static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
      j = (i + 1) % coords;
    }
    out.push_back(compare_one(psi, atom, i, j, cls.regular));
  }
  return out;
}

std::vector<ChartComparison> compare_in_charts(const MaxAffineFn& psi, const MAResult& ma, int i, int j) {
  std::vector<ChartComparison> out;
  for (const Atom& atom : ma.measure.atoms()) {
    if (atom.point[i] <= kChartTolerance) continue;  // not in the open star of n_i
    out.push_back(compare_one(psi, atom, i, j, classify(atom.point).regular));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Energy

double energy(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
              const std::vector<double>& nu) {
  if (nu.size() != atoms.size()) throw std::invalid_argument("target weights and atoms differ in size");
  double value = cells_from_weights(atoms, g).integral();
  for (std::size_t k = 0; k < atoms.size(); ++k) value += nu[k] * g[k];
  return value;
}

double energy(const MaxAffineFn& psi, const AtomicMeasure& nu) {
  if (psi.side() != Side::B || nu.side() != Side::B) throw std::invalid_argument("energy needs psi and nu on B");
  const std::vector<BaryPoint> w = breakpoints(psi);
  std::vector<double> g;
  for (const BaryPoint& p : w) g.push_back(psi(p));
  double value = cells_from_weights(w, g).integral();
  for (const Atom& a : nu.atoms()) value += a.weight * psi(a.point);
  return value;
}

std::vector<double> energy_gradient(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                                    const std::vector<double>& nu) {
  if (nu.size() != atoms.size()) throw std::invalid_argument("target weights and atoms differ in size");
  const CellComplex cx = cells_from_weights(atoms, g);
  std::vector<double> grad(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) grad[k] = nu[k] - cx.masses[k];
  return grad;
}

// ---------------------------------------------------------------------------
// Directional derivatives

namespace {

// Position along the boundary loop n_0 -> n_1 -> n_2 -> n_0 (d = 1).
double circle_position(const BaryPoint& p) {
  if (p[2] <= 1e-12) return p[1];
  if (p[0] <= 1e-12) return 1.0 + p[2];
  return 2.0 + p[0];
}

}  // namespace

TestFunction interpolate_on_circle(const DiscreteFn& v) {
  v.validate();
  if (v.side != Side::B || v.support.front().dim().value() != 1)
    throw std::invalid_argument("circle interpolation needs a function on B with d = 1");
  std::vector<std::pair<double, double>> knots;
  for (std::size_t a = 0; a < v.support.size(); ++a) knots.emplace_back(circle_position(v.support[a]), v.values[a]);
  std::sort(knots.begin(), knots.end());
  TestFunction out;
  out.breakpoints = v.support;
  out.eval = [knots](const BaryPoint& p) {
    if (knots.size() == 1) return knots.front().second;
    // Periodic piecewise linear interpolation; the loop has length 3.
    double x = circle_position(p);
    if (x < knots.front().first) x += 3.0;
    for (std::size_t k = 0; k < knots.size(); ++k) {
      const double s0 = knots[k].first;
      const bool wrap = k + 1 == knots.size();
      const double s1 = wrap ? knots.front().first + 3.0 : knots[k + 1].first;
      const double v1 = wrap ? knots.front().second : knots[k + 1].second;
      if (x <= s1) return knots[k].second + (v1 - knots[k].second) * (x - s0) / (s1 - s0);
    }
    return knots.front().second;
  };
  return out;
}

DirectionalDerivative directional_energy_derivative(const MaxAffineFn& psi, const TestFunction& v, double h) {
  if (psi.side() != Side::B) throw std::invalid_argument("directional derivative needs psi on B");
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  std::vector<BaryPoint> cand = breakpoints(psi);
  const std::size_t n_psi = cand.size();
  for (const BaryPoint& p : v.breakpoints)
    if (find_point(cand, p, 1e-12) < 0) cand.push_back(p);
  std::vector<double> psi_vals, v_vals;
  for (const BaryPoint& p : cand) {
    psi_vals.push_back(psi(p));
    v_vals.push_back(v.eval(p));
  }
  auto E = [&](double t) {
    std::vector<double> g(cand.size());
    for (std::size_t k = 0; k < cand.size(); ++k) g[k] = psi_vals[k] + t * v_vals[k];
    CellOptions opts;
    opts.use_symmetry = false;
    return cells_from_weights(cand, g, opts).integral();
  };
  const double e0 = E(0.0);
  const double right = (E(h) - e0) / h, left = (e0 - E(-h)) / h;
  const double right2 = (E(0.5 * h) - e0) / (0.5 * h), left2 = (e0 - E(-0.5 * h)) / (0.5 * h);

  // E is piecewise quadratic in t near 0, so one Richardson step removes the
  // O(h) truncation; the h vs h/2 change bounds what remains.
  DirectionalDerivative out;
  out.left = 2.0 * left2 - left;
  out.right = 2.0 * right2 - right;
  out.gap = out.right - out.left;
  out.error_estimate = std::max(std::abs(right - right2), std::abs(left - left2));

  // Pushforward formula with lowest-index tie breaking over psi's own breakpoints.
  std::vector<BaryPoint> w(cand.begin(), cand.begin() + static_cast<long>(n_psi));
  std::vector<double> gw(psi_vals.begin(), psi_vals.begin() + static_cast<long>(n_psi));
  CellOptions opts;
  opts.use_symmetry = false;
  const CellComplex cx = cells_from_weights(w, gw, opts);
  out.pushforward_formula = 0.0;
  for (std::size_t k = 0; k < n_psi; ++k) out.pushforward_formula -= cx.masses[k] * v_vals[k];

  bool v_symmetric = true;
  const int coords = psi.dim().coords();
  for (int k = 1; k < coords && v_symmetric; ++k) {
    const Permutation g = Permutation::transposition(coords, 0, k);
    for (const BaryPoint& p : cand)
      if (std::abs(v.eval(act(g, p)) - v.eval(p)) > 1e-9) {
        v_symmetric = false;
        break;
      }
  }
  out.symmetric = v_symmetric && is_symmetric(psi);
  return out;
}

}  // namespace tropma
