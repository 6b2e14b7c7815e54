#pragma once

// Variational solver for nu_psi = nu with symmetric atomic targets nu on B:
// minimize F(g) = int_A max_k(<m,n_k> - g_k) dmu + sum_k nu_k g_k over
// G-invariant weight vectors g (one variable per atom orbit).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropma/cconvex.hpp"
#include "tropma/ma_operator.hpp"
#include "tropma/measures.hpp"

namespace tropma {

enum class Normalization { FixOrbitSum, FixValueAtOrbit0 };
std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct SolveConfig {
  double tol = 1e-6;       // max |cell mass - target mass|, absolute, mu-mass units
  int max_iter = 20000;
  Backend backend = Backend::Exact;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 1;
  Normalization normalization = Normalization::FixOrbitSum;
  /// Starting weights, one per atom of the (symmetrized) target in its atom
  /// order; averaged over orbits. Defaults to zero.
  std::optional<std::vector<double>> initial_g;
};

struct TraceEntry {
  double energy;
  double residual;
  double step;
};

struct SolveResult {
  bool converged = false;
  std::string message;
  std::vector<BaryPoint> atoms;
  std::vector<double> target;        // nu_k
  std::vector<double> g;             // one weight per atom
  std::vector<int> orbit_of;         // atom -> orbit
  std::vector<double> g_orbit;       // one weight per orbit
  std::optional<MaxAffineFn> psi;    // (g^c)^c on B
  std::vector<double> cell_masses;
  double residual = 0.0;
  double energy = 0.0;
  int iterations = 0;
  std::vector<TraceEntry> trace;
};

/// Mass every target must carry: |A| = (d+2)^{d+1}/d!.
double required_mass(Dim d);

/// Throws std::invalid_argument when nu has the wrong total mass, or when the
/// Monte Carlo backend cannot certify tol. Returns a non-converged result with
/// the best iterate when max_iter is exhausted.
SolveResult solve(const AtomicMeasure& nu, const SolveConfig& cfg);

struct UniquenessReport {
  int trials;
  double max_deviation;   // max pairwise sup |g_a - g_b| over atoms with positive target mass
  double threshold;       // 10 * tol
  bool passed;
  std::vector<SolveResult> runs;
};

/// Solves from `trials` random initial weights and compares the normalized solutions.
UniquenessReport verify_uniqueness(const AtomicMeasure& nu, const SolveConfig& cfg, int trials);

struct LadderStep {
  int budget;
  SolveResult result;
  double bl_to_previous = 0.0;    // between consecutive Monge-Ampere measures
  double sup_to_previous = 0.0;   // between consecutive normalized psi on a probe set of B
};

/// Discretizes the face-constant target at each budget and solves.
std::vector<LadderStep> solve_continuous(const LebesgueMeasure& target, const std::vector<int>& budgets,
                                         const SolveConfig& cfg);

}  // namespace tropma
