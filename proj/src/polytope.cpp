#include "tropma/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace tropma {

namespace {

constexpr double kDedupTolerance = 1e-9;

struct VolumeCentroid {
  double volume;
  Eigen::VectorXd centroid;
};

// Normalizes each constraint; constraints with (numerically) zero normal are
// either dropped (always satisfied) or make the polytope empty.
bool normalize(std::vector<HalfSpace>& hs, double tol) {
  std::vector<HalfSpace> out;
  out.reserve(hs.size());
  for (HalfSpace& h : hs) {
    const double norm = h.normal.norm();
    if (norm < 1e-13) {
      if (h.rhs < -tol) return false;
      continue;
    }
    out.push_back({h.normal / norm, h.rhs / norm});
  }
  hs = std::move(out);
  return true;
}

void push_unique(std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& p) {
  for (const auto& q : pts)
    if ((q - p).lpNorm<Eigen::Infinity>() <= kDedupTolerance) return;
  pts.push_back(p);
}

Eigen::MatrixXd differences(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& idx) {
  const int dim = static_cast<int>(pts[idx[0]].size());
  Eigen::MatrixXd m(dim, static_cast<int>(idx.size()) - 1);
  for (std::size_t c = 1; c < idx.size(); ++c) m.col(c - 1) = pts[idx[c]] - pts[idx[0]];
  return m;
}

int affine_rank(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(differences(pts, idx));
  qr.setThreshold(1e-9);
  return static_cast<int>(qr.rank());
}

double distance_to_affine_hull(const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& pts,
                               const std::vector<int>& idx) {
  const Eigen::VectorXd v = p - pts[idx[0]];
  if (idx.size() <= 1) return v.norm();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(differences(pts, idx));
  qr.setThreshold(1e-9);
  const int r = static_cast<int>(qr.rank());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(p.size(), r);
  return (v - q * (q.transpose() * v)).norm();
}

// Volume and centroid of conv(pts[idx]) of affine dimension k, decomposed into
// cones from the vertex mean over the facets cut out by tight constraints.
VolumeCentroid cone_volume(const std::vector<Eigen::VectorXd>& pts,
                           const std::vector<std::vector<int>>& tight, const std::vector<int>& idx,
                           int k, std::vector<char>& used) {
  if (k == 0) return {1.0, pts[idx[0]]};
  if (k == 1) {
    const Eigen::VectorXd& base = pts[idx[0]];
    Eigen::VectorXd dir;
    double far = -1.0;
    for (int i : idx) {
      const double dist = (pts[i] - base).norm();
      if (dist > far) {
        far = dist;
        dir = pts[i] - base;
      }
    }
    dir /= dir.norm();
    double lo = 0.0, hi = 0.0;
    for (int i : idx) {
      const double s = (pts[i] - base).dot(dir);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return {hi - lo, base + dir * (0.5 * (lo + hi))};
  }

  Eigen::VectorXd apex = Eigen::VectorXd::Zero(pts[idx[0]].size());
  for (int i : idx) apex += pts[i];
  apex /= static_cast<double>(idx.size());

  std::set<int> candidates;
  for (int i : idx)
    for (int c : tight[i])
      if (!used[c]) candidates.insert(c);

  std::set<std::vector<int>> seen;
  double volume = 0.0;
  Eigen::VectorXd moment = Eigen::VectorXd::Zero(apex.size());
  for (int c : candidates) {
    std::vector<int> facet;
    for (int i : idx)
      if (std::binary_search(tight[i].begin(), tight[i].end(), c)) facet.push_back(i);
    if (static_cast<int>(facet.size()) < k || facet.size() == idx.size()) continue;
    if (!seen.insert(facet).second) continue;
    if (affine_rank(pts, facet) != k - 1) continue;
    used[c] = 1;
    const VolumeCentroid f = cone_volume(pts, tight, facet, k - 1, used);
    used[c] = 0;
    const double height = distance_to_affine_hull(apex, pts, facet);
    const double cone = height * f.volume / k;
    volume += cone;
    moment += cone * (apex + (static_cast<double>(k) / (k + 1)) * (f.centroid - apex));
  }
  if (volume <= 0.0) return {0.0, apex};
  return {volume, moment / volume};
}

PolytopeGeometry from_vertices_with_tight_sets(int k, std::vector<Eigen::VectorXd> verts,
                                               std::vector<std::vector<int>> tight,
                                               int constraint_count) {
  PolytopeGeometry out;
  if (verts.empty()) return out;
  std::vector<int> idx(verts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  const int rank = affine_rank(verts, idx);
  if (rank < k) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
    for (const auto& v : verts) c += v;
    out.centroid = c / static_cast<double>(verts.size());
    out.volume = 0.0;
  } else {
    std::vector<char> used(constraint_count, 0);
    const VolumeCentroid vc = cone_volume(verts, tight, idx, k, used);
    out.volume = vc.volume;
    out.centroid = vc.centroid;
  }
  out.vertices = std::move(verts);
  return out;
}

PolytopeGeometry clip_interval(const std::vector<HalfSpace>& cuts, double tol) {
  double lo = 0.0, hi = 1.0;
  for (const HalfSpace& h : cuts) {
    const double a = h.normal[0];
    if (std::abs(a) < 1e-13) {
      if (h.rhs < -tol) return {};
      continue;
    }
    if (a > 0)
      hi = std::min(hi, h.rhs / a);
    else
      lo = std::max(lo, h.rhs / a);
  }
  if (hi < lo - tol) return {};
  hi = std::max(hi, lo);
  PolytopeGeometry out;
  out.vertices.push_back(Eigen::VectorXd::Constant(1, lo));
  if (hi - lo > kDedupTolerance) out.vertices.push_back(Eigen::VectorXd::Constant(1, hi));
  out.volume = hi - lo;
  out.centroid = Eigen::VectorXd::Constant(1, 0.5 * (lo + hi));
  return out;
}

PolytopeGeometry polygon_geometry(std::vector<Eigen::Vector2d> poly) {
  PolytopeGeometry out;
  // Drop consecutive duplicates.
  std::vector<Eigen::Vector2d> clean;
  for (const auto& p : poly)
    if (clean.empty() || (clean.back() - p).lpNorm<Eigen::Infinity>() > kDedupTolerance) clean.push_back(p);
  while (clean.size() > 1 && (clean.front() - clean.back()).lpNorm<Eigen::Infinity>() <= kDedupTolerance)
    clean.pop_back();
  if (clean.empty()) return out;

  double area2 = 0.0;
  Eigen::Vector2d moment(0.0, 0.0);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const Eigen::Vector2d& a = clean[i];
    const Eigen::Vector2d& b = clean[(i + 1) % clean.size()];
    const double cross = a.x() * b.y() - b.x() * a.y();
    area2 += cross;
    moment += cross * (a + b);
  }
  for (const auto& p : clean) push_unique(out.vertices, Eigen::VectorXd(p));
  const double area = 0.5 * std::abs(area2);
  out.volume = area;
  if (area > 1e-15) {
    out.centroid = Eigen::VectorXd(moment / (3.0 * area2));
  } else {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
    for (const auto& v : out.vertices) c += v;
    out.centroid = c / static_cast<double>(out.vertices.size());
  }
  return out;
}

PolytopeGeometry clip_triangle(const std::vector<HalfSpace>& cuts, double tol) {
  std::vector<Eigen::Vector2d> poly = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (HalfSpace h : cuts) {
    const double norm = h.normal.norm();
    if (norm < 1e-13) {
      if (h.rhs < -tol) return {};
      continue;
    }
    const Eigen::Vector2d a(h.normal[0] / norm, h.normal[1] / norm);
    const double b = h.rhs / norm;
    std::vector<Eigen::Vector2d> next;
    next.reserve(poly.size() + 2);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Eigen::Vector2d& p = poly[i];
      const Eigen::Vector2d& q = poly[(i + 1) % poly.size()];
      const double fp = a.dot(p) - b, fq = a.dot(q) - b;
      const bool in_p = fp <= tol, in_q = fq <= tol;
      if (in_p) next.push_back(p);
      if ((fp < -tol && fq > tol) || (fp > tol && fq < -tol)) {
        const double s = fp / (fp - fq);
        next.push_back(p + s * (q - p));
      }
      (void)in_q;
    }
    poly = std::move(next);
    if (poly.empty()) return {};
  }
  return polygon_geometry(std::move(poly));
}

}  // namespace

PolytopeGeometry analyze_polytope(int k, const std::vector<HalfSpace>& constraints, double tol) {
  if (k < 1) throw std::invalid_argument("polytope dimension must be >= 1");
  std::vector<HalfSpace> hs = constraints;
  if (!normalize(hs, tol)) return {};
  const int m = static_cast<int>(hs.size());
  if (m < k + 1) throw std::invalid_argument("polytope is unbounded (too few constraints)");

  std::vector<Eigen::VectorXd> verts;
  std::vector<int> choose(k);
  std::function<void(int, int)> recurse = [&](int start, int depth) {
    if (depth == k) {
      Eigen::MatrixXd a(k, k);
      Eigen::VectorXd b(k);
      for (int r = 0; r < k; ++r) {
        a.row(r) = hs[choose[r]].normal.transpose();
        b[r] = hs[choose[r]].rhs;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      lu.setThreshold(1e-11);
      if (lu.rank() < k) return;
      const Eigen::VectorXd y = lu.solve(b);
      for (const HalfSpace& h : hs)
        if (h.normal.dot(y) > h.rhs + tol) return;
      push_unique(verts, y);
      return;
    }
    for (int c = start; c <= m - (k - depth); ++c) {
      choose[depth] = c;
      recurse(c + 1, depth + 1);
    }
  };
  recurse(0, 0);

  std::vector<std::vector<int>> tight(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v)
    for (int c = 0; c < m; ++c)
      if (std::abs(hs[c].normal.dot(verts[v]) - hs[c].rhs) <= 1e-9) tight[v].push_back(c);
  return from_vertices_with_tight_sets(k, std::move(verts), std::move(tight), m);
}

PolytopeGeometry clip_standard_simplex(int k, const std::vector<HalfSpace>& cuts, double tol) {
  if (k == 1) return clip_interval(cuts, tol);
  if (k == 2) return clip_triangle(cuts, tol);
  std::vector<HalfSpace> hs;
  hs.reserve(cuts.size() + k + 1);
  for (int r = 0; r < k; ++r) hs.push_back({-Eigen::VectorXd::Unit(k, r), 0.0});
  hs.push_back({Eigen::VectorXd::Ones(k), 1.0});
  hs.insert(hs.end(), cuts.begin(), cuts.end());
  return analyze_polytope(k, hs, tol);
}

PolytopeGeometry convex_hull(const std::vector<Eigen::VectorXd>& points, double tol) {
  PolytopeGeometry out;
  if (points.empty()) return out;
  const int k = static_cast<int>(points.front().size());
  std::vector<Eigen::VectorXd> pts;
  for (const auto& p : points) push_unique(pts, p);

  if (k == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    out.vertices.push_back(Eigen::VectorXd::Constant(1, lo));
    if (hi - lo > kDedupTolerance) out.vertices.push_back(Eigen::VectorXd::Constant(1, hi));
    out.volume = hi - lo;
    out.centroid = Eigen::VectorXd::Constant(1, 0.5 * (lo + hi));
    return out;
  }
  if (k == 2) {
    // Andrew's monotone chain.
    std::vector<Eigen::Vector2d> p2;
    for (const auto& p : pts) p2.emplace_back(p[0], p[1]);
    std::sort(p2.begin(), p2.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
      return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    if (p2.size() < 3) return polygon_geometry(p2);
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
      return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * p2.size());
    std::size_t h = 0;
    for (std::size_t i = 0; i < p2.size(); ++i) {
      while (h >= 2 && cross(hull[h - 2], hull[h - 1], p2[i]) <= tol) --h;
      hull[h++] = p2[i];
    }
    for (std::size_t i = p2.size() - 1, lower = h + 1; i-- > 0;) {
      while (h >= lower && cross(hull[h - 2], hull[h - 1], p2[i]) <= tol) --h;
      hull[h++] = p2[i];
    }
    hull.resize(h > 1 ? h - 1 : h);
    return polygon_geometry(hull);
  }

  std::vector<int> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (affine_rank(pts, all) < k) return from_vertices_with_tight_sets(k, pts, {}, 0);

  // Facet hyperplanes through k affinely independent points with all points on one side.
  std::vector<HalfSpace> facets;
  std::vector<int> choose(k);
  const int n = static_cast<int>(pts.size());
  std::function<void(int, int)> recurse = [&](int start, int depth) {
    if (depth == k) {
      Eigen::MatrixXd diffs(k - 1, k);
      for (int r = 1; r < k; ++r) diffs.row(r - 1) = (pts[choose[r]] - pts[choose[0]]).transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
      lu.setThreshold(1e-11);
      if (lu.rank() < k - 1) return;
      Eigen::VectorXd normal = lu.kernel().col(0);
      normal.normalize();
      double rhs = normal.dot(pts[choose[0]]);
      bool above = false, below = false;
      for (const auto& p : pts) {
        const double s = normal.dot(p) - rhs;
        above = above || s > tol;
        below = below || s < -tol;
      }
      if (above && below) return;
      if (above) {
        normal = -normal;
        rhs = -rhs;
      }
      for (const HalfSpace& f : facets)
        if ((f.normal - normal).norm() < 1e-9 && std::abs(f.rhs - rhs) < 1e-9) return;
      facets.push_back({normal, rhs});
      return;
    }
    for (int c = start; c <= n - (k - depth); ++c) {
      choose[depth] = c;
      recurse(c + 1, depth + 1);
    }
  };
  recurse(0, 0);

  std::vector<Eigen::VectorXd> verts;
  std::vector<std::vector<int>> tight;
  for (const auto& p : pts) {
    std::vector<int> t;
    for (std::size_t c = 0; c < facets.size(); ++c)
      if (std::abs(facets[c].normal.dot(p) - facets[c].rhs) <= 1e-9) t.push_back(static_cast<int>(c));
    if (static_cast<int>(t.size()) >= k) {
      verts.push_back(p);
      tight.push_back(std::move(t));
    }
  }
  return from_vertices_with_tight_sets(k, std::move(verts), std::move(tight),
                                       static_cast<int>(facets.size()));
}

}  // namespace tropma
