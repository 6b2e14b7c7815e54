#pragma once

// JSON and CSV formats for points, functions, measures and solver output.
// Parsers throw std::invalid_argument with the offending field named.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tropma/cconvex.hpp"
#include "tropma/ma_operator.hpp"
#include "tropma/measures.hpp"
#include "tropma/na_bridge.hpp"
#include "tropma/solver.hpp"

namespace tropma {

using Json = nlohmann::json;

Json to_json(const BaryPoint& p);
BaryPoint bary_from_json(const Json& j);

Json to_json(const FaceId& f);
FaceId face_from_json(const Json& j);

Json to_json(const MaxAffineFn& f);
MaxAffineFn max_affine_from_json(const Json& j);

Json to_json(const DiscreteFn& f);
DiscreteFn discrete_from_json(const Json& j);

/// Measure file: atoms plus an optional face-constant density.
struct MeasureSpec {
  AtomicMeasure atomic{Side::B};
  std::optional<LebesgueMeasure> density;
};

Json to_json(const AtomicMeasure& m, const std::optional<LebesgueMeasure>& density = std::nullopt);
MeasureSpec measure_from_json(const Json& j);

Json to_json(const MAResult& r);
MAResult ma_result_from_json(const Json& j);

Json to_json(const SolveConfig& c);
Json to_json(const SolveResult& r);

Json to_json(const NormalizationReport& r);
Json to_json(const TropicalPotential& p);
Json to_json(const LegendreGrid& g);

/// A list of points: either a JSON array of points or a measure file (its atoms).
std::vector<BaryPoint> points_from_json(const Json& j);
/// A list of reals: a JSON array or {"g": [...]}.
std::vector<double> reals_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Pretty-printed, trailing newline. Numbers use the shortest decimal form that
/// round-trips to the same double.
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

/// %.17g formatting for CSV cells.
std::string format_real(double x);

/// One row per cell vertex: atom, face, vertex index, barycentric weights, cell mass (d <= 2).
void write_cells_csv(std::ostream& os, const CellComplex& cx);
/// One row per atom: barycentric weights and weight.
void write_measure_csv(std::ostream& os, const AtomicMeasure& m);
/// One row per solver iteration: iteration, energy, residual, step.
void write_trace_csv(std::ostream& os, const SolveResult& r);
/// One row per grid point: coordinates of m and phi(m).
void write_legendre_csv(std::ostream& os, const LegendreGrid& g);

}  // namespace tropma
