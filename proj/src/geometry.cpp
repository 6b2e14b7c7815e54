#include "tropma/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tropma/rng.hpp"

namespace tropma {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

}  // namespace

Dim::Dim(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
}

Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }

std::string to_string(Side s) { return s == Side::A ? "A" : "B"; }

Side side_from_string(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  throw std::invalid_argument("unknown side '" + s + "'");
}

// ---------------------------------------------------------------------------

MVector::MVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) throw std::invalid_argument("MVector needs d+2 >= 3 coordinates");
  double sum = 0.0, scale = 1.0;
  for (double c : coords_) {
    sum += c;
    scale = std::max(scale, std::abs(c));
  }
  if (std::abs(sum) > 1e-9 * scale) throw std::invalid_argument("MVector coordinates must sum to 0");
}

MVector MVector::vertex(Dim d, int i) {
  std::vector<double> c(d.coords(), -1.0);
  c.at(i) = d.value() + 1.0;
  return MVector(std::move(c));
}

NVector::NVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) throw std::invalid_argument("NVector needs d+2 >= 3 coordinates");
}

NVector NVector::vertex(Dim d, int i) {
  std::vector<double> c(d.coords(), 0.0);
  c.at(i) = -1.0;
  return NVector(std::move(c));
}

NVector NVector::canonical() const {
  const double top = *std::max_element(coords_.begin(), coords_.end());
  std::vector<double> c(coords_);
  for (double& x : c) x -= top;
  return NVector(std::move(c));
}

bool NVector::approx_equal(const NVector& other, double tol) const {
  if (coords_.size() != other.coords_.size()) return false;
  const NVector a = canonical(), b = other.canonical();
  for (std::size_t k = 0; k < coords_.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------

BaryPoint::BaryPoint(Side side, std::vector<double> weights)
    : side_(side), weights_(std::move(weights)) {
  if (weights_.size() < 3) throw std::invalid_argument("BaryPoint needs d+2 >= 3 weights");
  double sum = 0.0, lo = weights_.front();
  for (double w : weights_) {
    if (!std::isfinite(w)) throw std::invalid_argument("BaryPoint weight is not finite");
    sum += w;
    lo = std::min(lo, w);
  }
  if (std::abs(lo) > kBaryTolerance)
    throw std::invalid_argument("BaryPoint weights must have minimum 0 (point not on the boundary)");
  if (std::abs(sum - 1.0) > kBaryTolerance)
    throw std::invalid_argument("BaryPoint weights must sum to 1");
}

BaryPoint BaryPoint::repaired(Side side, std::vector<double> weights) {
  if (weights.size() < 3) throw std::invalid_argument("BaryPoint needs d+2 >= 3 weights");
  for (double& w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("BaryPoint weight is not finite");
    w = std::max(w, 0.0);
  }
  const double lo = *std::min_element(weights.begin(), weights.end());
  for (double& w : weights) w -= lo;
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw std::invalid_argument("BaryPoint weights are degenerate");
  for (double& w : weights) w /= sum;
  // Pin the minimum exactly to zero after renormalization.
  *std::min_element(weights.begin(), weights.end()) = 0.0;
  return BaryPoint(side, std::move(weights));
}

BaryPoint BaryPoint::vertex(Side side, Dim d, int i) {
  std::vector<double> w(d.coords(), 0.0);
  w.at(i) = 1.0;
  return BaryPoint(side, std::move(w));
}

double BaryPoint::linf_distance(const BaryPoint& other) const {
  require_same_dim(weights_.size(), other.weights_.size(), "BaryPoint distance");
  double dist = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k)
    dist = std::max(dist, std::abs(weights_[k] - other.weights_[k]));
  return dist;
}

bool BaryPoint::approx_equal(const BaryPoint& other, double tol) const {
  return side_ == other.side_ && weights_.size() == other.weights_.size() &&
         linf_distance(other) <= tol;
}

// ---------------------------------------------------------------------------

std::string to_string(FaceKind k) {
  switch (k) {
    case FaceKind::Sigma: return "sigma";
    case FaceKind::Tau: return "tau";
    case FaceKind::SStar: return "S";
    case FaceKind::TStar: return "T";
  }
  return "?";
}

FaceKind face_kind_from_string(const std::string& s) {
  if (s == "sigma") return FaceKind::Sigma;
  if (s == "tau") return FaceKind::Tau;
  if (s == "S") return FaceKind::SStar;
  if (s == "T") return FaceKind::TStar;
  throw std::invalid_argument("unknown face kind '" + s + "'");
}

Side side_of(FaceKind k) {
  return (k == FaceKind::Sigma || k == FaceKind::SStar) ? Side::A : Side::B;
}

bool Classification::contains(FaceId f) const {
  return std::any_of(faces.begin(), faces.end(), [&](const FaceMembership& m) { return m.face == f; });
}

bool Classification::contains_interior(FaceId f) const {
  return std::any_of(faces.begin(), faces.end(),
                     [&](const FaceMembership& m) { return m.face == f && m.interior; });
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw std::invalid_argument("Permutation images must be a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int size) {
  std::vector<int> im(size);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int size, int a, int b) {
  std::vector<int> im(size);
  std::iota(im.begin(), im.end(), 0);
  std::swap(im.at(a), im.at(b));
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& h) const {
  require_same_dim(images_.size(), h.images_.size(), "Permutation composition");
  std::vector<int> im(images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[k] = images_[h.images_[k]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[images_[k]] = static_cast<int>(k);
  return Permutation(std::move(im));
}

const std::vector<Permutation>& all_permutations(int size) {
  static const std::array<std::vector<Permutation>, 8> table = [] {
    std::array<std::vector<Permutation>, 8> t;
    for (int n = 1; n < 8; ++n) {
      std::vector<int> im(n);
      std::iota(im.begin(), im.end(), 0);
      do {
        t[n].emplace_back(im);
      } while (std::next_permutation(im.begin(), im.end()));
    }
    return t;
  }();
  if (size < 1 || size > 7)
    throw std::invalid_argument("permutation enumeration supports d <= 5 only");
  return table[size];
}

// ---------------------------------------------------------------------------

double pairing(const MVector& m, const NVector& n) {
  require_same_dim(m.coords().size(), n.coords().size(), "pairing");
  double s = 0.0;
  for (std::size_t k = 0; k < m.coords().size(); ++k) s += m[k] * n[k];
  return s;
}

double bary_pairing(std::span<const double> alpha, std::span<const double> beta) {
  require_same_dim(alpha.size(), beta.size(), "pairing");
  double s = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) s += alpha[k] * beta[k];
  return 1.0 - static_cast<double>(alpha.size()) * s;
}

double pairing(const BaryPoint& a, const BaryPoint& b) {
  if (a.side() == b.side()) throw std::invalid_argument("pairing needs one point of A and one of B");
  return a.side() == Side::A ? bary_pairing(a.weights(), b.weights())
                             : bary_pairing(b.weights(), a.weights());
}

MVector to_mvector(const BaryPoint& p) {
  if (p.side() != Side::A) throw std::invalid_argument("to_mvector needs a point of A");
  const double scale = p.dim().coords();
  std::vector<double> c(p.weights().begin(), p.weights().end());
  for (double& x : c) x = scale * x - 1.0;
  return MVector(std::move(c));
}

NVector to_nvector(const BaryPoint& p) {
  if (p.side() != Side::B) throw std::invalid_argument("to_nvector needs a point of B");
  std::vector<double> c(p.weights().begin(), p.weights().end());
  for (double& x : c) x = -x;
  return NVector(std::move(c));
}

BaryPoint vector_to_bary(const MVector& m) {
  const double scale = m.dim().coords();
  std::vector<double> w(m.coords().begin(), m.coords().end());
  for (double& x : w) x = (x + 1.0) / scale;
  return BaryPoint(Side::A, std::move(w));
}

BaryPoint vector_to_bary(const NVector& n) {
  const double top = *std::max_element(n.coords().begin(), n.coords().end());
  std::vector<double> w(n.coords().begin(), n.coords().end());
  for (double& x : w) x = top - x;
  return BaryPoint(Side::B, std::move(w));
}

// ---------------------------------------------------------------------------

Classification classify(const BaryPoint& p, double tol) {
  const auto w = p.weights();
  const int n = static_cast<int>(w.size());
  const FaceKind face_kind = p.side() == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  const FaceKind star_kind = p.side() == Side::A ? FaceKind::SStar : FaceKind::TStar;
  const double top = *std::max_element(w.begin(), w.end());

  Classification out;
  for (int i = 0; i < n; ++i) {
    double min_other = 2.0, max_other = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      min_other = std::min(min_other, w[j]);
      max_other = std::max(max_other, w[j]);
    }
    if (std::abs(w[i]) <= tol) {
      const bool interior = min_other > tol;
      out.faces.push_back({{face_kind, i}, interior});
      out.regular = out.regular || interior;
    }
    if (w[i] >= top - tol) {
      const bool interior = w[i] > max_other + tol;
      out.faces.push_back({{star_kind, i}, interior});
      out.regular = out.regular || interior;
    }
  }
  return out;
}

bool is_regular(const BaryPoint& p, double tol) { return classify(p, tol).regular; }

BaryPoint act(const Permutation& g, const BaryPoint& p) {
  require_same_dim(static_cast<std::size_t>(g.size()), p.weights().size(), "group action");
  std::vector<double> w(p.weights().size());
  for (int k = 0; k < g.size(); ++k) w[g(k)] = p[k];
  return BaryPoint(p.side(), std::move(w));
}

MVector act(const Permutation& g, const MVector& m) {
  require_same_dim(static_cast<std::size_t>(g.size()), m.coords().size(), "group action");
  std::vector<double> c(m.coords().size());
  for (int k = 0; k < g.size(); ++k) c[g(k)] = m[k];
  return MVector(std::move(c));
}

NVector act(const Permutation& g, const NVector& n) {
  require_same_dim(static_cast<std::size_t>(g.size()), n.coords().size(), "group action");
  std::vector<double> c(n.coords().size());
  for (int k = 0; k < g.size(); ++k) c[g(k)] = n[k];
  return NVector(std::move(c));
}

std::vector<BaryPoint> orbit(const BaryPoint& p) {
  if (p.dim().value() > kMaxEnumerableDim)
    throw std::invalid_argument("orbit enumeration supports d <= 5 only");
  std::vector<BaryPoint> out;
  for (const Permutation& g : all_permutations(p.dim().coords())) {
    BaryPoint q = act(g, p);
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const BaryPoint& r) { return r.approx_equal(q, 1e-9); });
    if (!seen) out.push_back(std::move(q));
  }
  return out;
}

SymmetrizedPairing symmetrized_max_pairing(const BaryPoint& m, const BaryPoint& n, double tol) {
  if (m.side() != Side::A || n.side() != Side::B)
    throw std::invalid_argument("symmetrized_max_pairing needs m on A and n on B");
  require_same_dim(m.weights().size(), n.weights().size(), "symmetrized_max_pairing");
  if (m.dim().value() > kMaxEnumerableDim)
    throw std::invalid_argument("symmetrized_max_pairing enumerates S_{d+2}; d must be <= 5");

  const auto& perms = all_permutations(m.dim().coords());
  std::vector<double> values;
  values.reserve(perms.size());
  double best = -1e300;
  for (const Permutation& g : perms) {
    const double v = pairing(m, act(g, n));
    values.push_back(v);
    best = std::max(best, v);
  }
  SymmetrizedPairing out{best, {}};
  for (std::size_t k = 0; k < perms.size(); ++k)
    if (values[k] >= best - tol) out.maximizers.push_back(perms[k]);
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double face_measure(Dim d, FaceId f) {
  if (f.index < 0 || f.index >= d.coords()) throw std::invalid_argument("face index out of range");
  switch (f.kind) {
    case FaceKind::Sigma: return std::pow(d.coords(), d.value()) / factorial(d.value());
    case FaceKind::Tau: return 1.0 / factorial(d.value());
    default:
      throw std::invalid_argument("face_measure is defined for sigma and tau faces only");
  }
}

double total_measure(Dim d, Side side) {
  const FaceKind kind = side == Side::A ? FaceKind::Sigma : FaceKind::Tau;
  return d.coords() * face_measure(d, {kind, 0});
}

std::vector<BaryPoint> sample_face(Dim d, FaceId f, std::size_t count, std::uint64_t seed) {
  if (f.kind != FaceKind::Sigma && f.kind != FaceKind::Tau)
    throw std::invalid_argument("sample_face is defined for sigma and tau faces only");
  if (f.index < 0 || f.index >= d.coords()) throw std::invalid_argument("face index out of range");
  CounterRng rng(seed, static_cast<std::uint64_t>(f.index));
  std::vector<double> free(d.value() + 1);
  std::vector<BaryPoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    rng.simplex_point(free);
    std::vector<double> w(d.coords(), 0.0);
    for (int k = 0, pos = 0; k < d.coords(); ++k)
      if (k != f.index) w[k] = free[pos++];
    out.push_back(BaryPoint::repaired(side_of(f.kind), std::move(w)));
  }
  return out;
}

std::vector<BaryPoint> sample_boundary(Dim d, Side side, std::size_t count, std::uint64_t seed) {
  CounterRng rng(seed, 0xb0b0ULL);
  std::vector<double> free(d.value() + 1);
  std::vector<BaryPoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const int face = std::min(d.coords() - 1, static_cast<int>(rng.uniform() * d.coords()));
    rng.simplex_point(free);
    std::vector<double> w(d.coords(), 0.0);
    for (int k = 0, pos = 0; k < d.coords(); ++k)
      if (k != face) w[k] = free[pos++];
    out.push_back(BaryPoint::repaired(side, std::move(w)));
  }
  return out;
}

}  // namespace tropma
