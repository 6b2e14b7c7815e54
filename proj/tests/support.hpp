#pragma once

// Independent oracles and hand-rolled random generators shared by the tests.
// The oracles avoid the library's geometry code: they work with explicit
// vectors in R^{d+2}, exact 1-D envelopes and plain Monte Carlo.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "tropma/cconvex.hpp"
#include "tropma/cells.hpp"
#include "tropma/geometry.hpp"
#include "tropma/measures.hpp"

namespace oracle {

using tropma::BaryPoint;
using tropma::Dim;
using tropma::Side;

/// <m, n> from m = (d+2) alpha - 1 and n = -beta as plain vectors.
inline double explicit_pairing(const BaryPoint& a, const BaryPoint& b) {
  const BaryPoint& m = a.side() == Side::A ? a : b;
  const BaryPoint& n = a.side() == Side::A ? b : a;
  const int D = static_cast<int>(m.weights().size());
  double s = 0.0;
  for (int k = 0; k < D; ++k) s += (D * m[k] - 1.0) * (-n[k]);
  return s;
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// Normalized Lebesgue mass of one face of A or B.
inline double face_mass(int d, Side side) {
  return side == Side::A ? std::pow(d + 2.0, d) / factorial(d) : 1.0 / factorial(d);
}

inline double total_A(int d) { return (d + 2) * face_mass(d, Side::A); }

/// Point on edge `face` of the d = 1 boundary, parameter s in [0, 1]: weight
/// s on the first remaining index, 1 - s on the second.
inline BaryPoint edge_point(Side side, int face, double s) {
  std::vector<double> w(3, 0.0);
  const int a = (face + 1) % 3, b = (face + 2) % 3;
  w[std::min(a, b)] = s;
  w[std::max(a, b)] = 1.0 - s;
  return BaryPoint(side, w);
}

struct Affine1D {
  double slope, intercept;
  double at(double s) const { return slope * s + intercept; }
};

/// Affine function s -> <x(s), y> along edge `face` of x's side.
inline Affine1D pairing_along_edge(Side side, int face, const BaryPoint& y) {
  const double v0 = explicit_pairing(edge_point(side, face, 0.0), y);
  const double v1 = explicit_pairing(edge_point(side, face, 1.0), y);
  return {v1 - v0, v0};
}

/// Sorted breakpoints of the upper envelope of `fs` on [0, 1] (all pairwise crossings).
inline std::vector<double> crossings(const std::vector<Affine1D>& fs) {
  std::vector<double> out{0.0, 1.0};
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      const double ds = fs[a].slope - fs[b].slope;
      if (std::abs(ds) < 1e-15) continue;
      const double s = (fs[b].intercept - fs[a].intercept) / ds;
      if (s > 0.0 && s < 1.0) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Exact max over [0, 1] of the upper envelope of fs.
inline double envelope_max(const std::vector<Affine1D>& fs) {
  double best = -1e300;
  for (double s : crossings(fs))
    for (const Affine1D& f : fs) best = std::max(best, f.at(s));
  return best;
}

/// Exact integral over [0, 1] of the upper envelope of fs, and the length of
/// [0, 1] on which each fs[k] is the (lowest-index) maximizer.
inline std::pair<double, std::vector<double>> envelope_integral(const std::vector<Affine1D>& fs) {
  const std::vector<double> cuts = crossings(fs);
  double integral = 0.0;
  std::vector<double> lengths(fs.size(), 0.0);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double len = cuts[c + 1] - cuts[c];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < fs.size(); ++k)
      if (fs[k].at(mid) > fs[arg].at(mid) + 1e-13) arg = k;
    integral += len * fs[arg].at(mid);
    lengths[arg] += len;
  }
  return {integral, lengths};
}

/// d = 1: exact masses of the cells of max_k <m, n_k> - g_k on A.
inline std::vector<double> d1_cell_masses(const std::vector<BaryPoint>& atoms, const std::vector<double>& g) {
  std::vector<double> masses(atoms.size(), 0.0);
  for (int face = 0; face < 3; ++face) {
    std::vector<Affine1D> fs;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      Affine1D f = pairing_along_edge(Side::A, face, atoms[k]);
      f.intercept -= g[k];
      fs.push_back(f);
    }
    const auto [integral, lengths] = envelope_integral(fs);
    (void)integral;
    for (std::size_t k = 0; k < atoms.size(); ++k) masses[k] += face_mass(1, Side::A) * lengths[k];
  }
  return masses;
}

/// d = 1: a function on B that is affine on each edge between the listed
/// parameters, evaluated through a callable.
struct EdgePL {
  std::function<double(int face, double s)> value;
  std::vector<double> kinks;  // parameters in (0, 1) where it may bend (same on every edge)
};

/// d = 1: E(t) = int_A (psi + t v)^c dmu, computed with exact 1-D envelopes:
/// the inner sup over each edge of B runs over generator crossings and kinks of v.
inline double d1_energy(const tropma::MaxAffineFn& psi, const EdgePL& v, double t) {
  // Candidate points of B where psi + t v may attain the sup for some m.
  std::vector<BaryPoint> cand;
  std::vector<double> cand_values;
  for (int face = 0; face < 3; ++face) {
    std::vector<Affine1D> gens;
    for (const tropma::Generator& g : psi.generators()) {
      Affine1D f = pairing_along_edge(Side::B, face, g.anchor);
      f.intercept -= g.offset;
      gens.push_back(f);
    }
    std::vector<double> params = crossings(gens);
    params.insert(params.end(), v.kinks.begin(), v.kinks.end());
    for (double s : params) {
      cand.push_back(edge_point(Side::B, face, s));
      double value = -1e300;
      for (const Affine1D& f : gens) value = std::max(value, f.at(s));
      cand_values.push_back(value + t * v.value(face, s));
    }
  }
  double total = 0.0;
  for (int face = 0; face < 3; ++face) {
    std::vector<Affine1D> fs;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      Affine1D f = pairing_along_edge(Side::A, face, cand[c]);
      f.intercept -= cand_values[c];
      fs.push_back(f);
    }
    total += face_mass(1, Side::A) * envelope_integral(fs).first;
  }
  return total;
}

/// Bisection for a root of a monotone function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int k = 0; k < iters; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Uniform point on face `face` of `side` via sorted uniforms.
template <class Rng>
BaryPoint uniform_on_face(Rng& rng, int d, Side side, int face) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cuts{0.0, 1.0};
  for (int k = 0; k < d; ++k) cuts.push_back(u(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> w(d + 2, 0.0);
  int slot = 0;
  for (int k = 0; k < d + 2; ++k) {
    if (k == face) continue;
    w[k] = cuts[slot + 1] - cuts[slot];
    ++slot;
  }
  return BaryPoint::repaired(side, w);
}

/// Plain Monte Carlo cell masses on A (lowest-index argmax), with standard errors.
inline std::pair<std::vector<double>, std::vector<double>> mc_cell_masses(const std::vector<tropma::BaryPoint>& atoms,
                                                                          const std::vector<double>& g,
                                                                          int samples, unsigned seed) {
  const int d = atoms.front().dim().value();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, d + 1);
  std::vector<double> hits(atoms.size(), 0.0);
  for (int s = 0; s < samples; ++s) {
    const BaryPoint m = uniform_on_face(rng, d, Side::A, pick(rng));
    std::size_t arg = 0;
    double best = -1e300;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double v = explicit_pairing(m, atoms[k]) - g[k];
      if (v > best + 1e-12) {
        best = v;
        arg = k;
      }
    }
    hits[arg] += 1.0;
  }
  std::vector<double> mass(atoms.size()), se(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double p = hits[k] / samples;
    mass[k] = total_A(d) * p;
    se[k] = total_A(d) * std::sqrt(p * (1 - p) / samples);
  }
  return {mass, se};
}

/// Boundary grid: points of side with weights in (1/res)Z and some weight 0.
inline std::vector<BaryPoint> boundary_grid(int d, Side side, int res) {
  std::vector<BaryPoint> out;
  std::vector<int> c(d + 2, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d + 1) {
      c[pos] = left;
      if (std::find(c.begin(), c.end(), 0) == c.end()) return;
      std::vector<double> w(d + 2);
      for (int k = 0; k < d + 2; ++k) w[k] = static_cast<double>(c[k]) / res;
      out.push_back(BaryPoint::repaired(side, w));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c[pos] = x;
      rec(pos + 1, left - x);
    }
  };
  rec(0, res);
  return out;
}

/// max over a grid of the opposite side of <x, y> - f(y): a lower bound for f^c(x).
inline double grid_ctransform(const tropma::MaxAffineFn& f, const BaryPoint& x, const std::vector<BaryPoint>& grid) {
  double best = -1e300;
  for (const BaryPoint& y : grid) best = std::max(best, explicit_pairing(x, y) - f(y));
  return best;
}

}  // namespace oracle

namespace gen {

using tropma::BaryPoint;
using tropma::Dim;
using tropma::Side;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int integer(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline BaryPoint boundary_point(Rng& rng, int d, Side side) {
  return oracle::uniform_on_face(rng, d, side, integer(rng, 0, d + 1));
}

/// Point of the open simplex (not on the boundary).
inline std::vector<double> simplex_weights(Rng& rng, int d) {
  std::vector<double> w(d + 2);
  double s = 0.0;
  for (double& x : w) s += (x = -std::log(uniform(rng, 1e-12, 1.0)));
  for (double& x : w) x /= s;
  return w;
}

/// Boundary point that is sometimes special: a vertex, a face barycenter or an edge midpoint.
inline BaryPoint mixed_point(Rng& rng, int d, Side side) {
  const int kind = integer(rng, 0, 5);
  if (kind == 0) return BaryPoint::vertex(side, Dim(d), integer(rng, 0, d + 1));
  if (kind == 1) {
    std::vector<double> w(d + 2, 1.0 / (d + 1));
    w[integer(rng, 0, d + 1)] = 0.0;
    return BaryPoint::repaired(side, w);
  }
  return boundary_point(rng, d, side);
}

inline tropma::MaxAffineFn envelope(Rng& rng, int d, Side side, int generators) {
  std::vector<tropma::Generator> gens;
  for (int k = 0; k < generators; ++k)
    gens.push_back({mixed_point(rng, d, tropma::opposite(side)), uniform(rng, -1.0, 1.0)});
  return tropma::MaxAffineFn(side, gens);
}

/// G-invariant envelope: the full orbit of each base generator with a shared offset.
inline tropma::MaxAffineFn symmetric_envelope(Rng& rng, int d, Side side, int base) {
  std::vector<tropma::Generator> gens;
  for (int k = 0; k < base; ++k) {
    const BaryPoint a = mixed_point(rng, d, tropma::opposite(side));
    const double c = uniform(rng, -1.0, 1.0);
    for (const BaryPoint& p : tropma::orbit(a)) gens.push_back({p, c});
  }
  return tropma::MaxAffineFn(side, gens);
}

/// Symmetric atomic target on B with total mass |A|.
inline tropma::AtomicMeasure symmetric_target(Rng& rng, int d, int base) {
  tropma::AtomicMeasure m(Side::B);
  for (int k = 0; k < base; ++k) m.add(mixed_point(rng, d, Side::B), uniform(rng, 0.2, 1.0));
  tropma::AtomicMeasure sym = tropma::symmetrize(m);
  const double scale = oracle::total_A(d) / sym.total();
  tropma::AtomicMeasure out(Side::B);
  for (const tropma::Atom& a : sym.atoms()) out.add(a.point, a.weight * scale);
  return out;
}

}  // namespace gen

namespace props {

/// Cell-location inclusions for symmetric data: an atom in the open face tau_i
/// has its cell inside the star S_i, an atom in the open star T_i has its cell
/// inside the face sigma_i. Returns the number of violating cell vertices.
inline int cell_inclusion_violations(const std::vector<tropma::BaryPoint>& atoms,
                                     const std::vector<std::vector<tropma::FaceCell>>& cells, double tol = 1e-7) {
  int bad = 0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto w = atoms[k].weights();
    const int D = static_cast<int>(w.size());
    for (int i = 0; i < D; ++i) {
      double min_other = 2.0, max_other = -1.0;
      for (int j = 0; j < D; ++j)
        if (j != i) {
          min_other = std::min(min_other, w[j]);
          max_other = std::max(max_other, w[j]);
        }
      const bool in_open_tau = std::abs(w[i]) < 1e-12 && min_other > 1e-12;
      const bool in_open_T = w[i] > max_other + 1e-12;
      for (const tropma::FaceCell& c : cells[k]) {
        if (c.mass <= 0.0) continue;
        for (const tropma::BaryPoint& v : c.vertices) {
          const auto a = v.weights();
          const double top = *std::max_element(a.begin(), a.end());
          if (in_open_tau && a[i] < top - tol) ++bad;
          if (in_open_T && a[i] > tol) ++bad;
        }
      }
    }
  }
  return bad;
}

}  // namespace props
