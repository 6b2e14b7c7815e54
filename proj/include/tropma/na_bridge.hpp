#pragma once

// Real-valued data on the non-Archimedean side: the potential
// (psi - m_j) o trop and the d! bookkeeping between chart Monge-Ampere masses
// and the non-Archimedean Monge-Ampere measure of FS(psi).

#include <vector>

#include "tropma/cconvex.hpp"
#include "tropma/ma_operator.hpp"

namespace tropma {

struct TropicalPotential {
  MaxAffineFn psi;
  int reference;  // j: values are psi(n) - <m_j, n>
  std::vector<NVector> queries;
  std::vector<double> values;
};

/// Envelope of psi minus the linear function m_j, at arbitrary points of N_R.
TropicalPotential potential_eval(const MaxAffineFn& psi, int j, const std::vector<NVector>& queries);

struct NormalizationEntry {
  BaryPoint atom;
  double tropical_mass;
  double chart_mass;       // Alexandrov mass in a chart around the atom
  double na_mass;          // d! * tropical_mass
  bool in_regular_locus;
};

struct NormalizationReport {
  int d;
  double d_factorial;
  double tropical_total;        // total mass of nu_psi, (d+2)^{d+1}/d!
  double na_total;              // d! * tropical_total
  double expected_na_total;     // (d+2)^{d+1}
  double max_chart_residual;    // over atoms in B_0: |d! chart - d! tropical|
  std::vector<NormalizationEntry> entries;
};

NormalizationReport compare_ma_normalization(const MaxAffineFn& psi);

/// phi = psi^c sampled on the grid {alpha in Delta : resolution * alpha integral}.
struct LegendreGrid {
  MaxAffineFn phi;
  std::vector<MVector> points;
  std::vector<double> values;
};

LegendreGrid legendre_export(const MaxAffineFn& psi, int resolution);

/// Largest violation phi((a+b)/2) - (phi(a)+phi(b))/2 over all grid pairs (0 if convex).
double midpoint_convexity_defect(const LegendreGrid& grid);

}  // namespace tropma
