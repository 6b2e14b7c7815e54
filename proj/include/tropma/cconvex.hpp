#pragma once

// c-convex functions on A and B as finite max-affine envelopes, c-transforms
// in both directions, c-subgradients and chart restrictions.

#include <vector>

#include "tropma/charts.hpp"
#include "tropma/geometry.hpp"

namespace tropma {

struct Generator {
  BaryPoint anchor;  // on the side opposite to the function
  double offset;
};

/// x -> max_a <anchor_a, x> - offset_a on `side`.
class MaxAffineFn {
 public:
  MaxAffineFn(Side side, std::vector<Generator> generators);

  Side side() const { return side_; }
  Dim dim() const { return generators_.front().anchor.dim(); }
  const std::vector<Generator>& generators() const { return generators_; }
  std::vector<BaryPoint> anchors() const;
  std::vector<double> offsets() const;

  double operator()(const BaryPoint& x) const;
  /// Envelope formula evaluated off the boundary (side B: any n in N_R).
  double evaluate(const NVector& n) const;
  /// Envelope formula evaluated off the boundary (side A: any m in M_R).
  double evaluate(const MVector& m) const;

  /// Same function with every offset decreased by a (i.e. f + a).
  MaxAffineFn shifted(double a) const;
  MaxAffineFn acted(const Permutation& g) const;

 private:
  Side side_;
  std::vector<Generator> generators_;
};

/// Values on a finite support of points on `side`.
struct DiscreteFn {
  Side side;
  std::vector<BaryPoint> support;
  std::vector<double> values;

  void validate() const;
};

/// A convex piecewise affine function on a chart domain: max_p <grad_p, t> + intercept_p.
struct ChartConvexFn {
  Chart chart;
  std::vector<std::vector<double>> gradients;
  std::vector<double> intercepts;

  double operator()(const std::vector<double>& t) const;
  /// Pieces attaining the max at t within tol.
  std::vector<int> active(const std::vector<double>& t, double tol = 1e-9) const;
};

/// u^c as an envelope on the opposite side: one generator per support point.
MaxAffineFn ctransform_discrete(const DiscreteFn& u);

/// f^c(x) for x on the side opposite to f, via one linear program per face.
double ctransform_envelope(const MaxAffineFn& f, const BaryPoint& x);

/// Vertices of the linearity cells of f on every face of f's side. The
/// c-transform sup is attained on this finite set.
std::vector<BaryPoint> breakpoints(const MaxAffineFn& f);

/// Exact f^c as an envelope on the opposite side (anchors = breakpoints of f).
MaxAffineFn ctransform(const MaxAffineFn& f);

/// f^{cc} evaluated on grid points of f's side.
DiscreteFn double_transform(const MaxAffineFn& f, const std::vector<BaryPoint>& grid);
/// u^{cc} evaluated on grid points of u's side.
DiscreteFn double_transform(const DiscreteFn& u, const std::vector<BaryPoint>& grid);

/// Anchors attaining the max in f at x (within tol): the c-subgradient of the
/// envelope, read on the opposite side.
std::vector<BaryPoint> c_subgradient(const MaxAffineFn& f, const BaryPoint& x, double tol = 1e-9);

/// (f - m_j) o q_{i,j} for f on B, as a max-affine function on R^d.
ChartConvexFn chart_restrict(const MaxAffineFn& f, int i, int j);

/// Largest |f(g x) - f(x)| over transposition generators g and probe points x
/// (breakpoints of f plus deterministic samples).
double symmetry_defect(const MaxAffineFn& f);
bool is_symmetric(const MaxAffineFn& f, double tol = 1e-9);

/// Euclidean Lipschitz constant of any c-transform of a function on B (resp. A)
/// with respect to the M_R (resp. N_R) coordinates: max vertex representative norm.
double ctransform_lipschitz_bound(Dim d, Side target_side);

}  // namespace tropma
