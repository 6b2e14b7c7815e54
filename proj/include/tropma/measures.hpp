#pragma once

// Measures on A and B: weighted atoms, face-constant Lebesgue densities,
// symmetrization and a bounded-Lipschitz discrepancy.

#include <cstdint>
#include <vector>

#include "tropma/geometry.hpp"

namespace tropma {

inline constexpr double kAtomMergeTolerance = 1e-9;

struct Atom {
  BaryPoint point;
  double weight;
};

class AtomicMeasure {
 public:
  explicit AtomicMeasure(Side side) : side_(side) {}
  AtomicMeasure(Side side, const std::vector<Atom>& atoms);

  /// Adds weight at p, merging with an existing atom within kAtomMergeTolerance.
  void add(const BaryPoint& p, double weight);

  Side side() const { return side_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<BaryPoint> points() const;
  std::vector<double> weights() const;
  double total() const;
  /// Weight of the atom at p (0 if none within tol).
  double weight_at(const BaryPoint& p, double tol = kAtomMergeTolerance) const;

 private:
  Side side_;
  std::vector<Atom> atoms_;
};

/// Constant density per face sigma_i (side A) or tau_i (side B) with respect
/// to the normalized face measure.
struct LebesgueMeasure {
  Side side;
  std::vector<double> density;

  static LebesgueMeasure uniform(Dim d, Side side, double total);
  double total() const;
};

/// (1/|G|) sum_g g_* m.
AtomicMeasure symmetrize(const AtomicMeasure& m);
bool is_symmetric(const AtomicMeasure& m, double tol = 1e-9);

/// Bounded-Lipschitz discrepancy: max over a seeded family of test functions
/// that are 1-Lipschitz for the barycentric l1 distance (cones around atoms and
/// random points, random linear functions, constants) of |int f dm1 - int f dm2|.
double bl_distance(const AtomicMeasure& m1, const AtomicMeasure& m2, int probes = 64,
                   std::uint64_t seed = 1);
/// Same discrepancy against a face-constant density, integrated by a fine
/// low-discrepancy quadrature.
double bl_distance(const AtomicMeasure& m1, const LebesgueMeasure& m2, int probes = 64,
                   std::uint64_t seed = 1);

/// Symmetrized low-discrepancy atoms on B approximating the uniform measure,
/// `budget` base points on tau_0 before symmetrization, total mass `total`
/// (defaults to |A|).
AtomicMeasure lebesgue_on_B(Dim d, int budget, double total = -1.0);
/// Same construction for a face-constant density (symmetrized).
AtomicMeasure discretize(const LebesgueMeasure& m, int budget);

/// Quasi-random uniform points on face `face` of `side` (Halton, indices 1..count).
std::vector<BaryPoint> halton_face_points(Dim d, Side side, int face, int count, int skip = 0);

}  // namespace tropma
