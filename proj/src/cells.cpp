#include "tropma/cells.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace tropma {

namespace {

constexpr double kConstantConstraintTolerance = 1e-12;

}  // namespace

std::optional<FaceCell> face_cell(Side cell_side, int face, const std::vector<BaryPoint>& anchors,
                                  const std::vector<double>& offsets, int k, TiePolicy ties) {
  if (anchors.empty() || anchors.size() != offsets.size())
    throw std::invalid_argument("cell generators need matching anchors and offsets");
  const Dim dim = anchors.front().dim();
  const int d = dim.value();
  const int coords = dim.coords();
  if (face < 0 || face >= coords) throw std::invalid_argument("face index out of range");

  // Local coordinates y: the weights at the free indices except the last one.
  std::vector<int> free;
  for (int j = 0; j < coords; ++j)
    if (j != face) free.push_back(j);
  const int last = free.back();

  const BaryPoint& ak = anchors[k];
  std::vector<HalfSpace> cuts;
  cuts.reserve(anchors.size());
  for (std::size_t r = 0; r < anchors.size(); ++r) {
    if (static_cast<int>(r) == k) continue;
    const BaryPoint& ar = anchors[r];
    Eigen::VectorXd normal(d);
    const double delta_last = ak[last] - ar[last];
    double scale = 1.0;
    for (int t = 0; t < d; ++t) {
      normal[t] = coords * ((ak[free[t]] - ar[free[t]]) - delta_last);
      scale = std::max(scale, std::abs(normal[t]));
    }
    const double rhs = offsets[r] - offsets[k] - coords * delta_last;
    if (normal.lpNorm<Eigen::Infinity>() <= kConstantConstraintTolerance * scale) {
      // Generators k and r differ by a constant on this face.
      if (rhs < -kConstantConstraintTolerance * std::max(1.0, std::abs(offsets[r]) + std::abs(offsets[k])))
        return std::nullopt;
      if (std::abs(rhs) <= 1e-12 * std::max(1.0, std::abs(offsets[r]) + std::abs(offsets[k])) &&
          ties == TiePolicy::LowestIndex && static_cast<int>(r) < k)
        return std::nullopt;
      continue;
    }
    cuts.push_back({std::move(normal), rhs});
  }

  const PolytopeGeometry geo = clip_standard_simplex(d, cuts);
  if (geo.empty()) return std::nullopt;

  const FaceKind kind = cell_side == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  const double unit = factorial(d) * face_measure(dim, {kind, face});
  auto lift = [&](const Eigen::VectorXd& y) {
    std::vector<double> w(coords, 0.0);
    double sum = 0.0;
    for (int t = 0; t < d; ++t) {
      w[free[t]] = y[t];
      sum += y[t];
    }
    w[last] = 1.0 - sum;
    return w;
  };
  FaceCell cell;
  cell.face = face;
  for (const auto& v : geo.vertices) cell.vertices.push_back(BaryPoint::repaired(cell_side, lift(v)));
  cell.centroid = lift(geo.centroid);
  cell.mass = geo.volume * unit;
  return cell;
}

std::vector<FaceCell> generator_cells(Side cell_side, const std::vector<BaryPoint>& anchors,
                                      const std::vector<double>& offsets, int k, TiePolicy ties) {
  std::vector<FaceCell> out;
  const int coords = anchors.front().dim().coords();
  for (int face = 0; face < coords; ++face)
    if (auto c = face_cell(cell_side, face, anchors, offsets, k, ties)) out.push_back(std::move(*c));
  return out;
}

int find_point(const std::vector<BaryPoint>& points, const BaryPoint& p, double tol) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].approx_equal(p, tol)) return static_cast<int>(i);
  return -1;
}

std::optional<OrbitDecomposition> orbit_decomposition(const std::vector<BaryPoint>& points,
                                                      const std::vector<double>& values,
                                                      double tol) {
  if (points.size() != values.size()) throw std::invalid_argument("orbit data size mismatch");
  const std::size_t n = points.size();
  if (n == 0) return OrbitDecomposition{};
  const int coords = points.front().dim().coords();

  // Transpositions (0 k) generate S_{d+2}; image[g][a] is the atom g maps a to.
  std::vector<Permutation> gens;
  for (int k = 1; k < coords; ++k) gens.push_back(Permutation::transposition(coords, 0, k));
  std::vector<std::vector<int>> image(gens.size(), std::vector<int>(n));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t a = 0; a < n; ++a) {
      const int b = find_point(points, act(gens[g], points[a]), tol);
      if (b < 0 || std::abs(values[b] - values[a]) > tol * std::max(1.0, std::abs(values[a])))
        return std::nullopt;
      image[g][a] = b;
    }
  }

  OrbitDecomposition out;
  out.orbit_of.assign(n, -1);
  out.from_rep.assign(n, Permutation::identity(coords));
  for (std::size_t start = 0; start < n; ++start) {
    if (out.orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(out.orbits.size());
    out.orbits.emplace_back();
    std::deque<int> queue = {static_cast<int>(start)};
    out.orbit_of[start] = id;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      out.orbits[id].push_back(a);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const int b = image[g][a];
        if (out.orbit_of[b] >= 0) continue;
        out.orbit_of[b] = id;
        out.from_rep[b] = gens[g] * out.from_rep[a];
        queue.push_back(b);
      }
    }
  }
  return out;
}

}  // namespace tropma
