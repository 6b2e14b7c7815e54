#pragma once

// Bounded convex polytopes {y in R^k : a_r . y <= b_r}: vertex enumeration,
// Euclidean volume and centroid. Dimension 1 and 2 use direct clipping; higher
// dimensions enumerate vertices and decompose into cones over facets.

#include <Eigen/Dense>
#include <vector>

namespace tropma {

struct HalfSpace {
  Eigen::VectorXd normal;
  double rhs;
};

struct PolytopeGeometry {
  std::vector<Eigen::VectorXd> vertices;
  double volume = 0.0;
  Eigen::VectorXd centroid;

  bool empty() const { return vertices.empty(); }
};

inline constexpr double kPolytopeTolerance = 1e-10;

/// Intersection of the standard simplex {y >= 0, sum y <= 1} in R^k with the
/// given half-spaces.
PolytopeGeometry clip_standard_simplex(int k, const std::vector<HalfSpace>& cuts,
                                       double tol = kPolytopeTolerance);

/// General bounded H-polytope (caller guarantees boundedness).
PolytopeGeometry analyze_polytope(int k, const std::vector<HalfSpace>& constraints,
                                  double tol = kPolytopeTolerance);

/// Convex hull of a point cloud in R^k; volume is k-dimensional (0 if degenerate).
PolytopeGeometry convex_hull(const std::vector<Eigen::VectorXd>& points,
                             double tol = kPolytopeTolerance);

}  // namespace tropma
