#include "tropma/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tropma {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected a JSON object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double real(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

std::vector<double> reals(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of numbers");
  std::vector<double> out;
  for (const Json& x : j) out.push_back(real(x, what + " entry"));
  return out;
}

Side side(const Json& j) {
  if (!j.is_string()) bad("side must be \"A\" or \"B\"");
  return side_from_string(j.get<std::string>());
}

Json reals_json(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

Json points_json(const std::vector<BaryPoint>& ps) {
  Json a = Json::array();
  for (const BaryPoint& p : ps) a.push_back(to_json(p));
  return a;
}

}  // namespace

Json to_json(const BaryPoint& p) { return {{"side", to_string(p.side())}, {"weights", reals_json(p.weights())}}; }

BaryPoint bary_from_json(const Json& j) {
  return BaryPoint(side(field(j, "side")), reals(field(j, "weights"), "weights"));
}

Json to_json(const FaceId& f) { return {{"kind", to_string(f.kind)}, {"i", f.index}}; }

FaceId face_from_json(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) bad("face kind must be a string");
  return FaceId{face_kind_from_string(k.get<std::string>()), integer(field(j, "i"), "face index")};
}

Json to_json(const MaxAffineFn& f) {
  Json gens = Json::array();
  for (const Generator& g : f.generators()) gens.push_back({{"anchor", to_json(g.anchor)}, {"offset", g.offset}});
  return {{"side", to_string(f.side())}, {"generators", gens}};
}

MaxAffineFn max_affine_from_json(const Json& j) {
  const Side s = side(field(j, "side"));
  const Json& gj = field(j, "generators");
  if (!gj.is_array() || gj.empty()) bad("generators must be a nonempty array");
  std::vector<Generator> gens;
  for (const Json& g : gj) {
    BaryPoint anchor = bary_from_json(field(g, "anchor"));
    if (anchor.side() != opposite(s)) bad("generator anchors must lie on the side opposite to the function");
    gens.push_back({std::move(anchor), real(field(g, "offset"), "offset")});
  }
  for (const Generator& g : gens)
    if (g.anchor.dim() != gens.front().anchor.dim()) bad("generators have mixed dimensions");
  return MaxAffineFn(s, std::move(gens));
}

Json to_json(const DiscreteFn& f) {
  return {{"side", to_string(f.side)}, {"support", points_json(f.support)}, {"values", reals_json(f.values)}};
}

DiscreteFn discrete_from_json(const Json& j) {
  DiscreteFn f{side(field(j, "side")), points_from_json(field(j, "support")), reals(field(j, "values"), "values")};
  f.validate();
  return f;
}

Json to_json(const AtomicMeasure& m, const std::optional<LebesgueMeasure>& density) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms()) atoms.push_back({{"point", to_json(a.point)}, {"weight", a.weight}});
  Json out{{"side", to_string(m.side())}, {"atoms", atoms}};
  if (density) out["faceDensity"] = reals_json(density->density);
  return out;
}

MeasureSpec measure_from_json(const Json& j) {
  const Side s = side(field(j, "side"));
  MeasureSpec out{AtomicMeasure(s), std::nullopt};
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const Json& aj = j["atoms"];
    if (!aj.is_array()) bad("atoms must be an array");
    for (const Json& a : aj) {
      BaryPoint p = bary_from_json(field(a, "point"));
      if (p.side() != s) bad("atom lies on the wrong side");
      const double w = real(field(a, "weight"), "weight");
      if (w < 0.0) bad("atom weights must be nonnegative");
      atoms.push_back({std::move(p), w});
    }
  }
  out.atomic = AtomicMeasure(s, atoms);
  if (j.contains("faceDensity") && !j["faceDensity"].is_null()) {
    std::vector<double> dens = reals(j["faceDensity"], "faceDensity");
    for (double x : dens)
      if (x < 0.0) bad("faceDensity entries must be nonnegative");
    if (dens.size() < 3) bad("faceDensity needs one entry per face (d + 2 >= 3)");
    out.density = LebesgueMeasure{s, std::move(dens)};
  }
  return out;
}

Json to_json(const MAResult& r) {
  Json out = to_json(r.measure);
  out["backend"] = to_string(r.backend);
  out["errorEstimate"] = r.error_estimate;
  return out;
}

MAResult ma_result_from_json(const Json& j) {
  MAResult r;
  r.measure = measure_from_json(j).atomic;
  const Json& b = field(j, "backend");
  if (!b.is_string()) bad("backend must be a string");
  r.backend = backend_from_string(b.get<std::string>());
  r.error_estimate = real(field(j, "errorEstimate"), "errorEstimate");
  return r;
}

Json to_json(const SolveConfig& c) {
  return {{"tol", c.tol},
          {"maxIter", c.max_iter},
          {"backend", to_string(c.backend)},
          {"mcSamples", c.mc_samples},
          {"seed", c.seed},
          {"normalization", to_string(c.normalization)}};
}

Json to_json(const SolveResult& r) {
  Json trace = Json::array();
  for (const TraceEntry& t : r.trace) trace.push_back({{"F", t.energy}, {"residual", t.residual}, {"step", t.step}});
  Json out{{"converged", r.converged},
           {"message", r.message},
           {"atoms", points_json(r.atoms)},
           {"target", reals_json(r.target)},
           {"g", reals_json(r.g)},
           {"orbitOf", r.orbit_of},
           {"gOrbit", reals_json(r.g_orbit)},
           {"cellMasses", reals_json(r.cell_masses)},
           {"residual", r.residual},
           {"F", r.energy},
           {"iterations", r.iterations},
           {"trace", trace}};
  out["psi"] = r.psi ? to_json(*r.psi) : Json(nullptr);
  return out;
}

Json to_json(const NormalizationReport& r) {
  Json entries = Json::array();
  for (const NormalizationEntry& e : r.entries)
    entries.push_back({{"atom", to_json(e.atom)},
                       {"tropicalMass", e.tropical_mass},
                       {"chartMass", e.chart_mass},
                       {"naMass", e.na_mass},
                       {"inRegularLocus", e.in_regular_locus}});
  return {{"d", r.d},
          {"dFactorial", r.d_factorial},
          {"tropicalTotal", r.tropical_total},
          {"naTotal", r.na_total},
          {"expectedNaTotal", r.expected_na_total},
          {"maxChartResidual", r.max_chart_residual},
          {"entries", entries}};
}

Json to_json(const TropicalPotential& p) {
  Json q = Json::array();
  for (const NVector& n : p.queries) q.push_back(reals_json(n.coords()));
  return {{"psi", to_json(p.psi)}, {"reference", p.reference}, {"queries", q}, {"values", reals_json(p.values)}};
}

Json to_json(const LegendreGrid& g) {
  Json pts = Json::array();
  for (const MVector& m : g.points) pts.push_back(reals_json(m.coords()));
  return {{"phi", to_json(g.phi)}, {"points", pts}, {"values", reals_json(g.values)}};
}

std::vector<BaryPoint> points_from_json(const Json& j) {
  if (j.is_object() && j.contains("atoms")) return measure_from_json(j).atomic.points();
  if (!j.is_array()) bad("expected an array of points or a measure");
  std::vector<BaryPoint> out;
  for (const Json& p : j) out.push_back(bary_from_json(p));
  return out;
}

std::vector<double> reals_from_json(const Json& j) {
  if (j.is_object()) return reals(field(j, "g"), "g");
  return reals(j, "weights");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << dump(j);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void weights_header(std::ostream& os, int coords, const char* prefix) {
  for (int k = 0; k < coords; ++k) os << ',' << prefix << k;
}

void weights_row(std::ostream& os, std::span<const double> w) {
  for (double x : w) os << ',' << format_real(x);
}

}  // namespace

void write_cells_csv(std::ostream& os, const CellComplex& cx) {
  if (cx.atoms.empty()) return;
  const Dim d = cx.atoms.front().dim();
  if (d.value() > 2) bad("cell export supports d <= 2");
  os << "atom,face,vertex";
  weights_header(os, d.coords(), "w");
  os << ",mass\n";
  for (std::size_t k = 0; k < cx.cells.size(); ++k)
    for (const FaceCell& c : cx.cells[k])
      for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        os << k << ',' << c.face << ',' << v;
        weights_row(os, c.vertices[v].weights());
        os << ',' << format_real(c.mass) << '\n';
      }
}

void write_measure_csv(std::ostream& os, const AtomicMeasure& m) {
  if (m.atoms().empty()) {
    os << "weight\n";
    return;
  }
  os << "atom";
  weights_header(os, m.atoms().front().point.dim().coords(), "w");
  os << ",weight\n";
  for (std::size_t k = 0; k < m.atoms().size(); ++k) {
    os << k;
    weights_row(os, m.atoms()[k].point.weights());
    os << ',' << format_real(m.atoms()[k].weight) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const SolveResult& r) {
  os << "iteration,F,residual,step\n";
  for (std::size_t k = 0; k < r.trace.size(); ++k)
    os << k << ',' << format_real(r.trace[k].energy) << ',' << format_real(r.trace[k].residual) << ','
       << format_real(r.trace[k].step) << '\n';
}

void write_legendre_csv(std::ostream& os, const LegendreGrid& g) {
  if (g.points.empty()) return;
  const int coords = static_cast<int>(g.points.front().coords().size());
  os << "point";
  weights_header(os, coords, "m");
  os << ",phi\n";
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    os << k;
    weights_row(os, g.points[k].coords());
    os << ',' << format_real(g.values[k]) << '\n';
  }
}

}  // namespace tropma
