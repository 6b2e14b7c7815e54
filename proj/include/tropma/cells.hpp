#pragma once

// Laguerre-type cells of a max-affine envelope x -> max_r <x, a_r> - c_r on the
// faces of A or B (anchors a_r on the opposite side), and orbit bookkeeping
// for G-invariant anchor sets.

#include <optional>
#include <vector>

#include "tropma/geometry.hpp"
#include "tropma/polytope.hpp"

namespace tropma {

/// How cells are assigned where two generators coincide on a whole face.
enum class TiePolicy {
  LowestIndex,  // the lower generator index owns the face; cells partition
  Overlap,      // every tied generator owns it (reproduces non-symmetric pathologies)
};

struct FaceCell {
  int face = 0;                      // sigma_face (cells on A) or tau_face (cells on B)
  std::vector<BaryPoint> vertices;   // cell vertices as points of the face
  std::vector<double> centroid;      // barycentric weights of the centroid
  double mass = 0.0;                 // normalized Lebesgue mass
};

/// Cell of generator k on face `face` of side `cell_side`; nullopt if empty.
std::optional<FaceCell> face_cell(Side cell_side, int face, const std::vector<BaryPoint>& anchors,
                                  const std::vector<double>& offsets, int k, TiePolicy ties);

/// All nonempty face cells of generator k.
std::vector<FaceCell> generator_cells(Side cell_side, const std::vector<BaryPoint>& anchors,
                                      const std::vector<double>& offsets, int k, TiePolicy ties);

struct OrbitDecomposition {
  std::vector<int> orbit_of;                 // atom -> orbit index
  std::vector<std::vector<int>> orbits;      // orbit -> atoms, first entry is the representative
  std::vector<Permutation> from_rep;         // atom = from_rep[atom] applied to its representative
};

/// Orbits of a G-invariant labelled point set; nullopt if the set (with its
/// values) is not invariant under G within tol.
std::optional<OrbitDecomposition> orbit_decomposition(const std::vector<BaryPoint>& points,
                                                      const std::vector<double>& values,
                                                      double tol = 1e-9);

/// Index of the point matching p in l-infinity within tol, or -1.
int find_point(const std::vector<BaryPoint>& points, const BaryPoint& p, double tol = 1e-9);

}  // namespace tropma
