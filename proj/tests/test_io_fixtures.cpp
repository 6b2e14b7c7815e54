#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "tropma/fixtures.hpp"
#include "tropma/io.hpp"

using namespace tropma;

TEST_CASE("JSON round trips re-emit identical text") {
  gen::Rng rng(91);
  for (int trial = 0; trial < 50; ++trial) {
    const int dv = gen::integer(rng, 1, 3);
    const BaryPoint p = gen::boundary_point(rng, dv, Side::B);
    CHECK(dump(to_json(bary_from_json(Json::parse(dump(to_json(p)))))) == dump(to_json(p)));
    CHECK(bary_from_json(Json::parse(dump(to_json(p)))).linf_distance(p) == 0.0);

    const MaxAffineFn f = gen::envelope(rng, dv, Side::B, 3);
    CHECK(dump(to_json(max_affine_from_json(Json::parse(dump(to_json(f)))))) == dump(to_json(f)));

    DiscreteFn u{Side::A, {gen::boundary_point(rng, dv, Side::A)}, {gen::uniform(rng, -1, 1)}};
    CHECK(dump(to_json(discrete_from_json(Json::parse(dump(to_json(u)))))) == dump(to_json(u)));

    const AtomicMeasure nu = gen::symmetric_target(rng, std::min(dv, 2), 1);
    const LebesgueMeasure dens{Side::B, std::vector<double>(std::min(dv, 2) + 2, 1.5)};
    const MeasureSpec spec = measure_from_json(Json::parse(dump(to_json(nu, dens))));
    CHECK(dump(to_json(spec.atomic, spec.density)) == dump(to_json(nu, dens)));

    const MAResult ma = trop_ma(gen::symmetric_envelope(rng, std::min(dv, 2), Side::B, 1));
    CHECK(dump(to_json(ma_result_from_json(Json::parse(dump(to_json(ma)))))) == dump(to_json(ma)));
  }
  const FaceId f{FaceKind::TStar, 2};
  CHECK(face_from_json(to_json(f)) == f);
  CHECK(to_json(f).dump() == R"({"i":2,"kind":"T"})");
}

TEST_CASE("numbers round-trip bit for bit") {
  gen::Rng rng(92);
  for (int k = 0; k < 1000; ++k) {
    const double x = gen::uniform(rng, -1e6, 1e6) * std::pow(10.0, gen::integer(rng, -20, 20));
    CHECK(Json::parse(Json(x).dump()).get<double>() == x);
    CHECK(std::stod(format_real(x)) == x);
  }
}

TEST_CASE("parse errors name the problem") {
  CHECK_THROWS_AS(bary_from_json(Json::parse(R"({"weights":[1,0,0]})")), std::invalid_argument);
  CHECK_THROWS_AS(bary_from_json(Json::parse(R"({"side":"C","weights":[1,0,0]})")), std::invalid_argument);
  CHECK_THROWS_AS(bary_from_json(Json::parse(R"({"side":"A","weights":[0.3,0.3,0.3]})")), std::invalid_argument);
  CHECK_THROWS_AS(bary_from_json(Json::parse(R"({"side":"A","weights":"x"})")), std::invalid_argument);
  CHECK_THROWS_AS(max_affine_from_json(Json::parse(R"({"side":"B","generators":[]})")), std::invalid_argument);
  // Anchor on the same side as the function.
  CHECK_THROWS_AS(max_affine_from_json(Json::parse(
                      R"({"side":"B","generators":[{"anchor":{"side":"B","weights":[1,0,0]},"offset":0}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_from_json(Json::parse(
                      R"({"side":"B","atoms":[{"point":{"side":"B","weights":[1,0,0]},"weight":-1}]})")),
                  std::invalid_argument);
  try {
    bary_from_json(Json::parse(R"({"side":"A"})"));
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("weights") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), std::runtime_error);
}

TEST_CASE("CSV writers") {
  const std::vector<BaryPoint> atoms{BaryPoint::vertex(Side::B, Dim(1), 0), BaryPoint::vertex(Side::B, Dim(1), 1),
                                     BaryPoint::vertex(Side::B, Dim(1), 2)};
  std::ostringstream cells, meas, trace;
  write_cells_csv(cells, cells_from_weights(atoms, {0, 0, 0}));
  CHECK(cells.str().rfind("atom,face,vertex,w0,w1,w2,mass\n", 0) == 0);
  write_measure_csv(meas, trop_ma(psi_constant(Dim(1))).measure);
  CHECK(meas.str().find(",3\n") != std::string::npos);
  SolveResult r;
  r.trace = {{1.5, 0.25, 0.0}};
  write_trace_csv(trace, r);
  CHECK(trace.str() == "iteration,F,residual,step\n0,1.5,0.25,0\n");
  std::ostringstream big;
  CellComplex cx3 = cells_from_weights({BaryPoint::vertex(Side::B, Dim(3), 0)}, {0.0});
  CHECK_THROWS_AS(write_cells_csv(big, cx3), std::invalid_argument);
}

TEST_CASE("regression fixtures all pass") {
  const auto rows = run_examples();
  CHECK(rows.size() > 30);
  for (const ExampleRow& r : rows) {
    CAPTURE(r.example);
    CAPTURE(r.quantity);
    if (!r.informational) CHECK(r.pass());
  }
  CHECK(run_examples("vertmass", 2).size() == 5);
  CHECK_THROWS_AS(run_examples("nope"), std::invalid_argument);
}
