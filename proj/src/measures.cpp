#include "tropma/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "tropma/rng.hpp"

namespace tropma {

namespace {

double radical_inverse(int index, int base) {
  double result = 0.0, f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double l1(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

using Probe = std::function<double(std::span<const double>)>;

std::vector<Probe> probe_family(const std::vector<std::vector<double>>& centers, int coords, int probes,
                                std::uint64_t seed) {
  std::vector<Probe> out;
  out.push_back([](std::span<const double>) { return 1.0; });
  CounterRng rng(seed, 0xb1ULL);
  std::vector<std::vector<double>> all_centers = centers;
  std::vector<double> free(coords - 1);
  for (int p = 0; p < probes; ++p) {
    const int face = std::min(coords - 1, static_cast<int>(rng.uniform() * coords));
    rng.simplex_point(free);
    std::vector<double> w(coords, 0.0);
    for (int k = 0, pos = 0; k < coords; ++k)
      if (k != face) w[k] = free[pos++];
    all_centers.push_back(std::move(w));
  }
  for (const auto& c : all_centers) {
    for (double r : {0.25, 0.5, 1.0}) {
      out.push_back([c, r](std::span<const double> x) { return std::max(0.0, r - l1(x, c)); });
    }
  }
  for (int p = 0; p < probes; ++p) {
    std::vector<double> w(coords);
    for (double& x : w) x = 2.0 * rng.uniform() - 1.0;
    out.push_back([w](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * x[k];
      return s;
    });
  }
  return out;
}

std::vector<std::vector<double>> atom_centers(const AtomicMeasure& m) {
  std::vector<std::vector<double>> out;
  for (const Atom& a : m.atoms()) out.emplace_back(a.point.weights().begin(), a.point.weights().end());
  return out;
}

}  // namespace

AtomicMeasure::AtomicMeasure(Side side, const std::vector<Atom>& atoms) : side_(side) {
  for (const Atom& a : atoms) add(a.point, a.weight);
}

void AtomicMeasure::add(const BaryPoint& p, double weight) {
  if (p.side() != side_) throw std::invalid_argument("atom lies on the wrong side");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw std::invalid_argument("atom weight must be finite and >= 0");
  if (!atoms_.empty() && !(atoms_.front().point.dim() == p.dim()))
    throw std::invalid_argument("atom dimension mismatch");
  for (Atom& a : atoms_) {
    if (a.point.approx_equal(p, kAtomMergeTolerance)) {
      a.weight += weight;
      return;
    }
  }
  atoms_.push_back({p, weight});
}

std::vector<BaryPoint> AtomicMeasure::points() const {
  std::vector<BaryPoint> out;
  for (const Atom& a : atoms_) out.push_back(a.point);
  return out;
}

std::vector<double> AtomicMeasure::weights() const {
  std::vector<double> out;
  for (const Atom& a : atoms_) out.push_back(a.weight);
  return out;
}

double AtomicMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double AtomicMeasure::weight_at(const BaryPoint& p, double tol) const {
  double s = 0.0;
  for (const Atom& a : atoms_)
    if (a.point.approx_equal(p, tol)) s += a.weight;
  return s;
}

LebesgueMeasure LebesgueMeasure::uniform(Dim d, Side side, double total) {
  return {side, std::vector<double>(d.coords(), total / total_measure(d, side))};
}

double LebesgueMeasure::total() const {
  if (density.size() < 3) throw std::invalid_argument("face density needs d+2 entries");
  const Dim d(static_cast<int>(density.size()) - 2);
  const FaceKind kind = side == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (density[i] < 0.0) throw std::invalid_argument("face density must be >= 0");
    s += density[i] * face_measure(d, {kind, static_cast<int>(i)});
  }
  return s;
}

AtomicMeasure symmetrize(const AtomicMeasure& m) {
  AtomicMeasure out(m.side());
  for (const Atom& a : m.atoms()) {
    const std::vector<BaryPoint> orb = orbit(a.point);
    for (const BaryPoint& p : orb) out.add(p, a.weight / static_cast<double>(orb.size()));
  }
  return out;
}

bool is_symmetric(const AtomicMeasure& m, double tol) {
  if (m.atoms().empty()) return true;
  const int coords = m.atoms().front().point.dim().coords();
  for (int k = 1; k < coords; ++k) {
    const Permutation g = Permutation::transposition(coords, 0, k);
    for (const Atom& a : m.atoms())
      if (std::abs(m.weight_at(act(g, a.point)) - a.weight) > tol * std::max(1.0, a.weight)) return false;
  }
  return true;
}

double bl_distance(const AtomicMeasure& m1, const AtomicMeasure& m2, int probes, std::uint64_t seed) {
  if (m1.side() != m2.side()) throw std::invalid_argument("bl_distance needs measures on the same side");
  if (m1.atoms().empty() && m2.atoms().empty()) return 0.0;
  const int coords = (m1.atoms().empty() ? m2 : m1).atoms().front().point.dim().coords();
  std::vector<std::vector<double>> centers = atom_centers(m1);
  for (auto& c : atom_centers(m2)) centers.push_back(std::move(c));
  double best = 0.0;
  for (const Probe& f : probe_family(centers, coords, probes, seed)) {
    double diff = 0.0;
    for (const Atom& a : m1.atoms()) diff += a.weight * f(a.point.weights());
    for (const Atom& a : m2.atoms()) diff -= a.weight * f(a.point.weights());
    best = std::max(best, std::abs(diff));
  }
  return best;
}

double bl_distance(const AtomicMeasure& m1, const LebesgueMeasure& m2, int probes, std::uint64_t seed) {
  if (m1.side() != m2.side) throw std::invalid_argument("bl_distance needs measures on the same side");
  const Dim d(static_cast<int>(m2.density.size()) - 2);
  const FaceKind kind = m2.side == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  // Quadrature: quasi-random points per face, equal weights.
  const int per_face = d.value() == 1 ? 2000 : 6000;
  std::vector<Atom> quad;
  for (int face = 0; face < d.coords(); ++face) {
    const double mass = m2.density[face] * face_measure(d, {kind, face});
    for (const BaryPoint& p : halton_face_points(d, m2.side, face, per_face, 17))
      quad.push_back({p, mass / per_face});
  }
  double best = 0.0;
  for (const Probe& f : probe_family(atom_centers(m1), d.coords(), probes, seed)) {
    double diff = 0.0;
    for (const Atom& a : m1.atoms()) diff += a.weight * f(a.point.weights());
    for (const Atom& a : quad) diff -= a.weight * f(a.point.weights());
    best = std::max(best, std::abs(diff));
  }
  return best;
}

std::vector<BaryPoint> halton_face_points(Dim d, Side side, int face, int count, int skip) {
  if (face < 0 || face >= d.coords()) throw std::invalid_argument("face index out of range");
  if (d.value() > 8) throw std::invalid_argument("Halton points support d <= 8");
  std::vector<BaryPoint> out;
  out.reserve(count);
  std::vector<double> u(d.value());
  for (int idx = 1; idx <= count; ++idx) {
    for (int r = 0; r < d.value(); ++r) u[r] = radical_inverse(idx + skip, kPrimes[r]);
    std::sort(u.begin(), u.end());
    std::vector<double> w(d.coords(), 0.0);
    double prev = 0.0;
    int pos = 0;
    for (int k = 0; k < d.coords(); ++k) {
      if (k == face) continue;
      const double next = pos < d.value() ? u[pos] : 1.0;
      w[k] = next - prev;
      prev = next;
      ++pos;
    }
    out.push_back(BaryPoint::repaired(side, std::move(w)));
  }
  return out;
}

AtomicMeasure lebesgue_on_B(Dim d, int budget, double total) {
  if (budget < 1) throw std::invalid_argument("atom budget must be >= 1");
  if (total < 0.0) total = total_measure(d, Side::A);
  AtomicMeasure base(Side::B);
  if (budget == 1) {
    std::vector<double> w(d.coords(), 1.0 / (d.value() + 1));
    w[0] = 0.0;
    base.add(BaryPoint(Side::B, std::move(w)), total);
  } else {
    for (const BaryPoint& p : halton_face_points(d, Side::B, 0, budget)) base.add(p, total / budget);
  }
  return symmetrize(base);
}

AtomicMeasure discretize(const LebesgueMeasure& m, int budget) {
  if (budget < 1) throw std::invalid_argument("atom budget must be >= 1");
  const Dim d(static_cast<int>(m.density.size()) - 2);
  const FaceKind kind = m.side == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  AtomicMeasure base(m.side);
  for (int face = 0; face < d.coords(); ++face) {
    const double mass = m.density[face] * face_measure(d, {kind, face});
    if (mass <= 0.0) continue;
    if (budget == 1) {
      std::vector<double> w(d.coords(), 1.0 / (d.value() + 1));
      w[face] = 0.0;
      base.add(BaryPoint(m.side, std::move(w)), mass);
    } else {
      for (const BaryPoint& p : halton_face_points(d, m.side, face, budget)) base.add(p, mass / budget);
    }
  }
  return symmetrize(base);
}

}  // namespace tropma
