#pragma once

// The tropical Monge-Ampere operator nu_psi = (c-gradient of psi^c)_* mu,
// Laguerre cells on A, chart-level Alexandrov masses, the energy functional
// F and one-sided derivatives of t -> int_A (psi + t v)^c dmu.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tropma/cconvex.hpp"
#include "tropma/cells.hpp"
#include "tropma/measures.hpp"

namespace tropma {

enum class Backend { Exact, MonteCarlo };
std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

struct CellOptions {
  TiePolicy ties = TiePolicy::LowestIndex;
  /// Compute one cell per G-orbit and map it to the rest of the orbit when
  /// (atoms, g) is G-invariant.
  bool use_symmetry = true;
};

/// Cells of phi(m) = max_k <m, n_k> - g_k on A, one list of face cells per atom.
struct CellComplex {
  std::vector<BaryPoint> atoms;
  std::vector<double> g;
  std::vector<std::vector<FaceCell>> cells;
  std::vector<double> masses;

  double total() const;
  /// int_A phi dmu (exact: each affine piece integrated over its cell).
  double integral() const;
};

CellComplex cells_from_weights(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                               const CellOptions& opts = {});

struct McCellMasses {
  std::vector<double> masses;
  std::vector<double> std_errors;
  double integral = 0.0;          // Monte Carlo estimate of int_A phi dmu
  double integral_std_error = 0.0;
  std::size_t samples = 0;
  std::size_t ties = 0;           // samples whose argmax was not unique (within 1e-9)
};

/// Stratified Monte Carlo cell masses: samples split evenly over the faces of A,
/// argmax ties resolved by lowest atom index.
McCellMasses mc_cell_masses(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                            std::size_t samples, std::uint64_t seed);

struct MAResult {
  AtomicMeasure measure{Side::B};
  Backend backend = Backend::Exact;
  double error_estimate = 0.0;
};

struct MAOptions {
  Backend backend = Backend::Exact;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  /// Run on non-symmetric psi; cells then use TiePolicy::Overlap, i.e. the
  /// mass mu(c-subgradient of psi at n) of every atom, overlaps counted.
  bool allow_nonsymmetric = false;
};

inline constexpr double kClusterRadius = 1e-6;

MAResult trop_ma(const MaxAffineFn& psi, const MAOptions& opts = {});

/// Volume of the convex hull of the gradients of the pieces active at t0.
double alexandrov_ma_chart(const ChartConvexFn& f, const std::vector<double>& t0);

struct ChartComparison {
  BaryPoint atom;
  double tropical_mass;
  int i, j;                 // chart q_{i,j} used
  double chart_mass;
  bool in_regular_locus;    // atom in B_0; outside, the chart value is informational
  double residual;          // |chart_mass - tropical_mass|
};

/// For each atom of nu_psi, the Alexandrov mass of psi_{i,j} at its chart
/// preimage. Atoms in T_i° use q_{i,i+1}; atoms in tau_l° use q_{l+1,l}; atoms
/// outside B_0 use a chart whose open star contains them.
std::vector<ChartComparison> compare_in_charts(const MaxAffineFn& psi, const MAResult& ma);
/// Same, restricted to atoms in the open star of n_i and the fixed chart q_{i,j}.
std::vector<ChartComparison> compare_in_charts(const MaxAffineFn& psi, const MAResult& ma, int i, int j);

/// F(g; nu) = int_A max_k(<m,n_k> - g_k) dmu + sum_k nu_k g_k, with nu_k the
/// target weight at atom k.
double energy(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
              const std::vector<double>& nu);
/// F(psi; nu) = int_A psi^c dmu + int_B psi dnu.
double energy(const MaxAffineFn& psi, const AtomicMeasure& nu);
/// dF/dg_k = nu_k - mu(cell_k).
std::vector<double> energy_gradient(const std::vector<BaryPoint>& atoms, const std::vector<double>& g,
                                    const std::vector<double>& nu);

/// A function on B given by a callable plus the points where it may fail to
/// be affine along B.
struct TestFunction {
  std::function<double(const BaryPoint&)> eval;
  std::vector<BaryPoint> breakpoints;
};

/// Piecewise linear interpolation along the boundary circle B (d = 1 only);
/// vertices of B not in the support get interpolated values.
TestFunction interpolate_on_circle(const DiscreteFn& v);

struct DirectionalDerivative {
  double left;                  // extrapolated from (E(0) - E(-h)) / h at h and h/2
  double right;                 // extrapolated from (E(h) - E(0)) / h at h and h/2
  double gap;                   // right - left
  double error_estimate;        // change of the raw quotients between h and h/2
  double pushforward_formula;   // -int_A v(c-gradient of psi^c) dmu
  bool symmetric;               // psi and v G-invariant
};

/// One-sided difference quotients of E(t) = int_A (psi + t v)^c dmu. E is
/// computed exactly from the candidate set breakpoints(psi) u v.breakpoints,
/// which is exact when psi + t v is affine between candidates (always for d = 1).
DirectionalDerivative directional_energy_derivative(const MaxAffineFn& psi, const TestFunction& v,
                                                    double h);

}  // namespace tropma
