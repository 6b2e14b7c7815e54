#pragma once

// Numerical model of the simplex pair (Delta, Delta^vee) in M_R and N_R,
// their boundaries A and B, faces, stars, and the S_{d+2} action.
//
// Coordinates live in R^{d+2}. M_R is the hyperplane of vectors with zero
// coordinate sum; N_R is R^{d+2} modulo the all-ones vector. The vertices are
// m_i = (d+2) e_i - (1,...,1) and n_i = -e_i.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tropma {

inline constexpr double kBaryTolerance = 1e-12;
inline constexpr double kNVectorTolerance = 1e-9;
inline constexpr int kMaxEnumerableDim = 5;

/// Dimension d of the faces of A and B (ambient coordinates: d+2).
class Dim {
 public:
  explicit Dim(int d);
  int value() const { return d_; }
  int coords() const { return d_ + 2; }
  friend bool operator==(Dim, Dim) = default;

 private:
  int d_;
};

enum class Side { A, B };

Side opposite(Side s);
std::string to_string(Side s);
Side side_from_string(const std::string& s);

/// Element of M_R: coordinates summing to zero.
class MVector {
 public:
  explicit MVector(std::vector<double> coords);
  static MVector vertex(Dim d, int i);

  Dim dim() const { return Dim(static_cast<int>(coords_.size()) - 2); }
  std::span<const double> coords() const { return coords_; }
  double operator[](int k) const { return coords_[k]; }

 private:
  std::vector<double> coords_;
};

/// Element of N_R, stored as an arbitrary representative in R^{d+2}.
class NVector {
 public:
  explicit NVector(std::vector<double> coords);
  static NVector vertex(Dim d, int i);

  Dim dim() const { return Dim(static_cast<int>(coords_.size()) - 2); }
  std::span<const double> coords() const { return coords_; }
  double operator[](int k) const { return coords_[k]; }

  /// Representative with maximal coordinate 0 (so n_i = -e_i is canonical).
  NVector canonical() const;
  bool approx_equal(const NVector& other, double tol = kNVectorTolerance) const;

 private:
  std::vector<double> coords_;
};

/// Point of A or B in barycentric coordinates: min weight 0, weights sum to 1.
class BaryPoint {
 public:
  /// Validates the weights within kBaryTolerance; throws std::invalid_argument.
  BaryPoint(Side side, std::vector<double> weights);

  /// Clamp negatives, shift the minimum to zero and renormalize. Used for data
  /// that crosses an I/O boundary or comes out of floating point geometry.
  static BaryPoint repaired(Side side, std::vector<double> weights);
  static BaryPoint vertex(Side side, Dim d, int i);

  Side side() const { return side_; }
  Dim dim() const { return Dim(static_cast<int>(weights_.size()) - 2); }
  std::span<const double> weights() const { return weights_; }
  double operator[](int k) const { return weights_[k]; }

  bool approx_equal(const BaryPoint& other, double tol) const;
  double linf_distance(const BaryPoint& other) const;

 private:
  Side side_;
  std::vector<double> weights_;
};

enum class FaceKind { Sigma, Tau, SStar, TStar };

std::string to_string(FaceKind k);
FaceKind face_kind_from_string(const std::string& s);
Side side_of(FaceKind k);

struct FaceId {
  FaceKind kind;
  int index;
  friend bool operator==(const FaceId&, const FaceId&) = default;
};

struct FaceMembership {
  FaceId face;
  bool interior;
};

struct Classification {
  std::vector<FaceMembership> faces;
  /// Membership in A_0 (resp. B_0): some open face or open star contains p.
  bool regular = false;

  bool contains(FaceId f) const;
  bool contains_interior(FaceId f) const;
};

/// Permutation g of {0,...,d+1}; acts on vertices by g(n_k) = n_{g(k)}.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int size);
  static Permutation transposition(int size, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[k]; }
  std::span<const int> images() const { return images_; }

  /// (g * h)(k) = g(h(k)).
  Permutation operator*(const Permutation& h) const;
  Permutation inverse() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All permutations of {0,...,size-1} in lexicographic order. size <= 7.
const std::vector<Permutation>& all_permutations(int size);

// Pairing between M_R and N_R.
double pairing(const MVector& m, const NVector& n);
/// Pairing of a point of A with a point of B: 1 - (d+2) sum_j alpha_j beta_j.
double pairing(const BaryPoint& a, const BaryPoint& b);
/// Same formula for raw barycentric weights on the A and B sides.
double bary_pairing(std::span<const double> alpha, std::span<const double> beta);

MVector to_mvector(const BaryPoint& p);
NVector to_nvector(const BaryPoint& p);
BaryPoint vector_to_bary(const MVector& m);
BaryPoint vector_to_bary(const NVector& n);

Classification classify(const BaryPoint& p, double tol = 1e-10);
bool is_regular(const BaryPoint& p, double tol = 1e-10);

BaryPoint act(const Permutation& g, const BaryPoint& p);
MVector act(const Permutation& g, const MVector& m);
NVector act(const Permutation& g, const NVector& n);

/// Deduplicated G-orbit (tolerance 1e-9 in l-infinity).
std::vector<BaryPoint> orbit(const BaryPoint& p);

struct SymmetrizedPairing {
  double value;
  std::vector<Permutation> maximizers;
};

/// max over g in G of <m, g(n)> and the set G(m, n) of maximizing g.
SymmetrizedPairing symmetrized_max_pairing(const BaryPoint& m, const BaryPoint& n,
                                           double tol = 1e-12);

/// Lebesgue mass of a face, normalized so that the affine charts are unimodular.
double face_measure(Dim d, FaceId f);
double total_measure(Dim d, Side side);
double factorial(int n);

/// Uniform samples on the face sigma_i or tau_i (deterministic per seed).
std::vector<BaryPoint> sample_face(Dim d, FaceId f, std::size_t count, std::uint64_t seed);

/// Uniform samples on all of A or B: face chosen uniformly, then uniform on it.
std::vector<BaryPoint> sample_boundary(Dim d, Side side, std::size_t count, std::uint64_t seed);

}  // namespace tropma
