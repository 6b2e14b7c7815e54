// tropma: command-line front end for the tropical Monge-Ampere library.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "tropma/fixtures.hpp"
#include "tropma/io.hpp"

using namespace tropma;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

void emit(const std::string& out, const Json& j) {
  if (out.empty() || out == "-")
    std::cout << dump(j);
  else
    write_json_file(out, j);
}

template <class Writer>
void emit_csv(const std::string& out, Writer&& w) {
  if (out.empty() || out == "-") {
    w(std::cout);
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot open '" + out + "' for writing");
  w(os);
}

struct FnInput {
  std::optional<MaxAffineFn> envelope;
  std::optional<DiscreteFn> discrete;
};

FnInput read_fn(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("support")) return {std::nullopt, discrete_from_json(j)};
  return {max_affine_from_json(j), std::nullopt};
}

Json value_rows(const std::vector<BaryPoint>& pts, const std::vector<double>& vals) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) rows.push_back({{"point", to_json(pts[k])}, {"value", vals[k]}});
  return rows;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical Monge-Ampere calculus on the boundary of the polar simplex"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve nu_psi = nu for a symmetric target on B");
  int solve_dim = 0;
  std::string target_path, solve_out, trace_csv, backend_name = "exact", norm_name = "fix-orbit-sum";
  double tol = 1e-6;
  int max_iter = 20000;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 1;
  std::vector<int> budgets;
  solve_cmd->add_option("--dim", solve_dim, "Dimension d of B")->required()->check(CLI::Range(1, 5));
  solve_cmd->add_option("--target", target_path, "Measure JSON on B")->required();
  solve_cmd->add_option("--tol", tol, "Max |cell mass - target mass|, absolute");
  solve_cmd->add_option("--backend", backend_name, "exact | mc");
  solve_cmd->add_option("--mc-samples", mc_samples, "Monte Carlo samples per evaluation");
  solve_cmd->add_option("--seed", seed, "Seed for all randomness");
  solve_cmd->add_option("--max-iter", max_iter, "Iteration limit");
  solve_cmd->add_option("--normalization", norm_name, "fix-orbit-sum | fix-value-at-orbit-0");
  solve_cmd->add_option("--budgets", budgets, "Atom budgets for a faceDensity target")->delimiter(',');
  solve_cmd->add_option("--out", solve_out, "Result JSON (default stdout)");
  solve_cmd->add_option("--trace-csv", trace_csv, "Convergence log CSV");

  // ma
  auto* ma_cmd = app.add_subcommand("ma", "Tropical Monge-Ampere measure of psi on B");
  std::string ma_fn, ma_out, ma_backend = "exact";
  std::size_t ma_samples = 1000000;
  std::uint64_t ma_seed = 1;
  bool allow_nonsym = false;
  ma_cmd->add_option("--fn", ma_fn, "MaxAffineFn JSON on B")->required();
  ma_cmd->add_option("--backend", ma_backend, "exact | mc");
  ma_cmd->add_option("--mc-samples", ma_samples, "Monte Carlo samples");
  ma_cmd->add_option("--seed", ma_seed, "Seed");
  ma_cmd->add_flag("--allow-nonsymmetric", allow_nonsym, "Run on non-symmetric psi (overlap masses)");
  ma_cmd->add_option("--out", ma_out, "Output JSON (default stdout)");

  // ctransform
  auto* ct_cmd = app.add_subcommand("ctransform", "c-transform of an envelope or discrete function");
  std::string ct_fn, ct_queries, ct_out;
  ct_cmd->add_option("--fn", ct_fn, "MaxAffineFn or DiscreteFn JSON")->required();
  ct_cmd->add_option("--queries", ct_queries, "Points on the opposite side; omit to print the transform");
  ct_cmd->add_option("--out", ct_out, "Output JSON (default stdout)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an envelope at points");
  std::string ev_fn, ev_queries, ev_out;
  eval_cmd->add_option("--fn", ev_fn, "MaxAffineFn JSON")->required();
  eval_cmd->add_option("--queries", ev_queries, "Points on the function's side")->required();
  eval_cmd->add_option("--out", ev_out, "Output JSON (default stdout)");

  // cells
  auto* cells_cmd = app.add_subcommand("cells", "Cells on A of max_k <m, n_k> - g_k");
  std::string cells_atoms, cells_weights, cells_out, ties_name = "lowest";
  cells_cmd->add_option("--atoms", cells_atoms, "Points on B (array or measure JSON)")->required();
  cells_cmd->add_option("--weights", cells_weights, "Weights g (array or {\"g\": [...]})")->required();
  cells_cmd->add_option("--ties", ties_name, "lowest | overlap");
  cells_cmd->add_option("--out", cells_out, "Output CSV (default stdout)");

  // paper-examples
  auto* ex_cmd = app.add_subcommand("paper-examples", "Run the closed-form regression fixtures");
  std::string ex_name;
  int ex_dim = 0;
  ex_cmd->add_option("--name", ex_name, "Fixture name");
  ex_cmd->add_option("--dim", ex_dim, "Restrict to one dimension")->check(CLI::Range(1, 3));

  // export-plot
  auto* plot_cmd = app.add_subcommand("export-plot", "CSV cell polygons and measures for plotting (d <= 2)");
  std::string plot_fn, plot_cells, plot_measure, plot_legendre;
  int plot_res = 12;
  plot_cmd->add_option("--fn", plot_fn, "MaxAffineFn JSON on B")->required();
  plot_cmd->add_option("--cells-out", plot_cells, "Cells of psi^c on A")->required();
  plot_cmd->add_option("--measure-out", plot_measure, "Monge-Ampere measure of psi")->required();
  plot_cmd->add_option("--legendre-out", plot_legendre, "psi^c sampled on a grid of Delta");
  plot_cmd->add_option("--resolution", plot_res, "Grid resolution for --legendre-out")->check(CLI::Range(1, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*solve_cmd) {
      SolveConfig cfg;
      cfg.tol = tol;
      cfg.max_iter = max_iter;
      cfg.backend = backend_from_string(backend_name);
      cfg.mc_samples = mc_samples;
      cfg.seed = seed;
      cfg.normalization = normalization_from_string(norm_name);
      const MeasureSpec spec = measure_from_json(read_json_file(target_path));
      if (spec.atomic.side() != Side::B) throw std::invalid_argument("target must be a measure on B");
      if (spec.atomic.atoms().empty() && spec.density) {
        if (static_cast<int>(spec.density->density.size()) != solve_dim + 2)
          throw std::invalid_argument("faceDensity length does not match --dim");
        if (budgets.empty()) budgets = {1};
        const auto ladder = solve_continuous(*spec.density, budgets, cfg);
        Json steps = Json::array();
        bool ok = true;
        for (const LadderStep& s : ladder) {
          steps.push_back({{"budget", s.budget},
                           {"blToPrevious", s.bl_to_previous},
                           {"supToPrevious", s.sup_to_previous},
                           {"result", to_json(s.result)}});
          ok = ok && s.result.converged;
        }
        emit(solve_out, {{"config", to_json(cfg)}, {"ladder", steps}});
        if (!trace_csv.empty()) emit_csv(trace_csv, [&](std::ostream& os) { write_trace_csv(os, ladder.back().result); });
        if (!ok) {
          std::cerr << "solve: a ladder step did not converge\n";
          return kExitMismatch;
        }
        return 0;
      }
      for (const Atom& a : spec.atomic.atoms())
        if (a.point.dim().value() != solve_dim) throw std::invalid_argument("target atoms do not match --dim");
      if (spec.atomic.atoms().empty()) {
        std::ostringstream msg;
        msg << "target mass 0 must equal (d+2)^{d+1}/d! = " << required_mass(Dim(solve_dim));
        throw std::invalid_argument(msg.str());
      }
      const SolveResult r = solve(spec.atomic, cfg);
      Json out = to_json(r);
      out["config"] = to_json(cfg);
      emit(solve_out, out);
      if (!trace_csv.empty()) emit_csv(trace_csv, [&](std::ostream& os) { write_trace_csv(os, r); });
      if (!r.converged) {
        std::cerr << "solve: " << r.message << " (residual " << r.residual << ")\n";
        return kExitMismatch;
      }
      return 0;
    }

    if (*ma_cmd) {
      MAOptions opts;
      opts.backend = backend_from_string(ma_backend);
      opts.samples = ma_samples;
      opts.seed = ma_seed;
      opts.allow_nonsymmetric = allow_nonsym;
      const MaxAffineFn psi = max_affine_from_json(read_json_file(ma_fn));
      emit(ma_out, to_json(trop_ma(psi, opts)));
      return 0;
    }

    if (*ct_cmd) {
      const FnInput fn = read_fn(ct_fn);
      const MaxAffineFn transformed = fn.envelope ? ctransform(*fn.envelope) : ctransform_discrete(*fn.discrete);
      if (ct_queries.empty()) {
        emit(ct_out, to_json(transformed));
        return 0;
      }
      const std::vector<BaryPoint> pts = points_from_json(read_json_file(ct_queries));
      std::vector<double> vals;
      for (const BaryPoint& p : pts) {
        if (p.side() != transformed.side()) throw std::invalid_argument("query points must lie on the opposite side");
        vals.push_back(transformed(p));
      }
      emit(ct_out, value_rows(pts, vals));
      return 0;
    }

    if (*eval_cmd) {
      const MaxAffineFn f = max_affine_from_json(read_json_file(ev_fn));
      const std::vector<BaryPoint> pts = points_from_json(read_json_file(ev_queries));
      std::vector<double> vals;
      for (const BaryPoint& p : pts) {
        if (p.side() != f.side()) throw std::invalid_argument("query points must lie on the function's side");
        vals.push_back(f(p));
      }
      emit(ev_out, value_rows(pts, vals));
      return 0;
    }

    if (*cells_cmd) {
      const std::vector<BaryPoint> atoms = points_from_json(read_json_file(cells_atoms));
      const std::vector<double> g = reals_from_json(read_json_file(cells_weights));
      if (atoms.empty()) throw std::invalid_argument("no atoms given");
      if (atoms.size() != g.size()) throw std::invalid_argument("atoms and weights differ in length");
      for (const BaryPoint& a : atoms)
        if (a.side() != Side::B) throw std::invalid_argument("atoms must lie on B");
      CellOptions opts;
      if (ties_name == "overlap")
        opts.ties = TiePolicy::Overlap;
      else if (ties_name != "lowest")
        throw std::invalid_argument("unknown tie policy '" + ties_name + "'");
      const CellComplex cx = cells_from_weights(atoms, g, opts);
      emit_csv(cells_out, [&](std::ostream& os) { write_cells_csv(os, cx); });
      return 0;
    }

    if (*ex_cmd) {
      const auto rows = run_examples(ex_name, ex_dim > 0 ? std::optional<int>(ex_dim) : std::nullopt);
      bool ok = true;
      std::printf("%-22s %-58s %16s %16s %10s  %s\n", "example", "quantity", "expected", "computed", "tolerance",
                  "status");
      for (const ExampleRow& r : rows) {
        const bool pass = r.pass();
        if (!r.informational) ok = ok && pass;
        const char* status = r.informational ? (pass ? "info" : "info (differs)") : (pass ? "pass" : "FAIL");
        std::printf("%-22s %-58s %16s %16s %10s  %s\n", r.example.c_str(), r.quantity.c_str(), fmt(r.expected).c_str(),
                    fmt(r.computed).c_str(), fmt(r.tolerance).c_str(), status);
      }
      return ok ? 0 : kExitMismatch;
    }

    if (*plot_cmd) {
      const MaxAffineFn psi = max_affine_from_json(read_json_file(plot_fn));
      if (psi.side() != Side::B) throw std::invalid_argument("export-plot needs psi on B");
      if (psi.dim().value() > 2) throw std::invalid_argument("export-plot supports d <= 2");
      const std::vector<BaryPoint> w = breakpoints(psi);
      std::vector<double> vals;
      for (const BaryPoint& p : w) vals.push_back(psi(p));
      CellOptions copts;
      MAOptions mopts;
      if (!is_symmetric(psi)) {
        copts.ties = TiePolicy::Overlap;
        copts.use_symmetry = false;
        mopts.allow_nonsymmetric = true;
      }
      const CellComplex cx = cells_from_weights(w, vals, copts);
      emit_csv(plot_cells, [&](std::ostream& os) { write_cells_csv(os, cx); });
      const MAResult ma = trop_ma(psi, mopts);
      emit_csv(plot_measure, [&](std::ostream& os) { write_measure_csv(os, ma.measure); });
      if (!plot_legendre.empty()) {
        const LegendreGrid grid = legendre_export(psi, plot_res);
        emit_csv(plot_legendre, [&](std::ostream& os) { write_legendre_csv(os, grid); });
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "tropma: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
