#include "tropma/charts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tropma {

namespace {

void check_indices(int coords, int i, int j) {
  if (i < 0 || j < 0 || i >= coords || j >= coords || i == j)
    throw std::invalid_argument("chart indices must be distinct and in range");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

std::vector<int> Chart::slots() const {
  std::vector<int> out;
  for (int k = 0; k < d + 2; ++k)
    if (k != i && k != j) out.push_back(k);
  return out;
}

std::vector<std::vector<double>> Chart::domain_vertices() const {
  std::vector<std::vector<double>> out;
  const double scale = side == Side::A ? d + 2.0 : -1.0;
  for (int r = 0; r < d; ++r) {
    std::vector<double> v(d, 0.0);
    v[r] = scale;
    out.push_back(std::move(v));
  }
  out.emplace_back(d, side == Side::A ? -(d + 2.0) : 1.0);
  return out;
}

Chart p_chart(Dim d, int i, int j) {
  check_indices(d.coords(), i, j);
  return {Side::A, i, j, d.value()};
}

Chart q_chart(Dim d, int i, int j) {
  check_indices(d.coords(), i, j);
  return {Side::B, i, j, d.value()};
}

bool in_star(const BaryPoint& pt, int i, double tol) {
  for (int k = 0; k < pt.dim().coords(); ++k)
    if (k != i && pt[k] <= tol) return true;
  return false;
}

std::vector<double> p_inv_global(int i, int j, std::span<const double> alpha) {
  const int coords = static_cast<int>(alpha.size());
  check_indices(coords, i, j);
  std::vector<double> s;
  s.reserve(coords - 2);
  for (int k = 0; k < coords; ++k)
    if (k != i && k != j) s.push_back(coords * (alpha[k] - alpha[j]));
  return s;
}

std::vector<double> q_inv_global(int i, int j, std::span<const double> beta) {
  const int coords = static_cast<int>(beta.size());
  check_indices(coords, i, j);
  std::vector<double> t;
  t.reserve(coords - 2);
  for (int k = 0; k < coords; ++k)
    if (k != i && k != j) t.push_back(beta[j] - beta[k]);
  return t;
}

std::vector<double> p_inv(int i, int j, const BaryPoint& m) {
  if (m.side() != Side::A) throw std::invalid_argument("p_inv needs a point of A");
  if (!in_star(m, i)) throw std::invalid_argument("point lies outside Star(m_i)");
  return p_inv_global(i, j, m.weights());
}

std::vector<double> q_inv(int i, int j, const BaryPoint& n) {
  if (n.side() != Side::B) throw std::invalid_argument("q_inv needs a point of B");
  if (!in_star(n, i)) throw std::invalid_argument("point lies outside Star(n_i)");
  return q_inv_global(i, j, n.weights());
}

// Inverse maps: the star condition min_{r != i} weight_r = 0 pins weight_j; the
// remaining weights follow from the linear formulas and weight_i from the sum.
BaryPoint p(Dim d, int i, int j, const std::vector<double>& s) {
  check_indices(d.coords(), i, j);
  if (static_cast<int>(s.size()) != d.value()) throw std::invalid_argument("chart point has wrong dimension");
  const double scale = d.coords();
  const double lo = *std::min_element(s.begin(), s.end());
  std::vector<double> w(d.coords(), 0.0);
  w[j] = std::max(0.0, -lo) / scale;
  double sum = w[j];
  int pos = 0;
  for (int k = 0; k < d.coords(); ++k) {
    if (k == i || k == j) continue;
    w[k] = w[j] + s[pos++] / scale;
    sum += w[k];
  }
  w[i] = 1.0 - sum;
  if (w[i] < -kChartTolerance) throw std::invalid_argument("chart point lies outside S~");
  return BaryPoint::repaired(Side::A, std::move(w));
}

BaryPoint q(Dim d, int i, int j, const std::vector<double>& t) {
  check_indices(d.coords(), i, j);
  if (static_cast<int>(t.size()) != d.value()) throw std::invalid_argument("chart point has wrong dimension");
  const double hi = *std::max_element(t.begin(), t.end());
  std::vector<double> w(d.coords(), 0.0);
  w[j] = std::max(0.0, hi);
  double sum = w[j];
  int pos = 0;
  for (int k = 0; k < d.coords(); ++k) {
    if (k == i || k == j) continue;
    w[k] = w[j] - t[pos++];
    sum += w[k];
  }
  w[i] = 1.0 - sum;
  if (w[i] < -kChartTolerance) throw std::invalid_argument("chart point lies outside T~");
  return BaryPoint::repaired(Side::B, std::move(w));
}

double chart_pair_residual(Dim d, int i, int j, const std::vector<double>& s,
                           const std::vector<double>& t) {
  const BaryPoint m = p(d, j, i, s);
  if (m[i] > kChartTolerance) throw std::invalid_argument("s does not lie in p_{j,i}^{-1}(sigma_i)");
  const BaryPoint n = q(d, i, j, t);
  const MVector diff = [&] {
    MVector mv = to_mvector(m), mj = MVector::vertex(d, j);
    std::vector<double> c(d.coords());
    for (int k = 0; k < d.coords(); ++k) c[k] = mv[k] - mj[k];
    return MVector(std::move(c));
  }();
  return std::abs(dot(s, t) - pairing(diff, to_nvector(n)));
}

double chart_pair_residual_dual(Dim d, int i, int j, const std::vector<double>& s,
                                const std::vector<double>& t) {
  const BaryPoint m = p(d, i, j, s);
  const BaryPoint n = q(d, j, i, t);
  if (n[i] > kChartTolerance) throw std::invalid_argument("t does not lie in q_{j,i}^{-1}(tau_i)");
  const NVector nv = to_nvector(n), nj = NVector::vertex(d, j);
  std::vector<double> c(d.coords());
  for (int k = 0; k < d.coords(); ++k) c[k] = nv[k] - nj[k];
  return std::abs(dot(s, t) - pairing(to_mvector(m), NVector(std::move(c))));
}

}  // namespace tropma
