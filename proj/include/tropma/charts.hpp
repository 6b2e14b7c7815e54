#pragma once

// Integral affine charts p_{i,j} on Star(m_i) subset A and q_{i,j} on
// Star(n_i) subset B. Chart coordinates are indexed by k != i, j in
// increasing order.
//
//   p_{i,j}^{-1}(m) = ((d+2)(alpha_k - alpha_j))_k      image: S~
//   q_{i,j}^{-1}(n) = (beta_j - beta_k)_k               image: T~

#include <vector>

#include "tropma/geometry.hpp"

namespace tropma {

inline constexpr double kChartTolerance = 1e-10;

struct Chart {
  Side side;  // A for p-charts, B for q-charts
  int i;
  int j;
  int d;

  /// Ambient indices k != i, j, in chart-slot order.
  std::vector<int> slots() const;
  /// Vertices of the reference simplex S~ (side A) or T~ (side B).
  std::vector<std::vector<double>> domain_vertices() const;
};

Chart p_chart(Dim d, int i, int j);
Chart q_chart(Dim d, int i, int j);

/// Closed star of the i-th vertex: points with some zero weight at an index != i.
bool in_star(const BaryPoint& p, int i, double tol = kChartTolerance);

std::vector<double> p_inv(int i, int j, const BaryPoint& m);
BaryPoint p(Dim d, int i, int j, const std::vector<double>& s);
std::vector<double> q_inv(int i, int j, const BaryPoint& n);
BaryPoint q(Dim d, int i, int j, const std::vector<double>& t);

/// Chart formulas applied without the star membership check (both are linear
/// in the barycentric weights).
std::vector<double> p_inv_global(int i, int j, std::span<const double> alpha);
std::vector<double> q_inv_global(int i, int j, std::span<const double> beta);

/// |<s,t> - <p_{j,i}(s) - m_j, q_{i,j}(t)>| for s in p_{j,i}^{-1}(sigma_i), t in T~.
double chart_pair_residual(Dim d, int i, int j, const std::vector<double>& s,
                           const std::vector<double>& t);

/// |<s,t> - <p_{i,j}(s), q_{j,i}(t) - n_j>| for s in S~, t in q_{j,i}^{-1}(tau_i).
double chart_pair_residual_dual(Dim d, int i, int j, const std::vector<double>& s,
                                const std::vector<double>& t);

}  // namespace tropma
