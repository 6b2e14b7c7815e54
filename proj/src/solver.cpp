#include "tropma/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tropma/rng.hpp"

namespace tropma {

std::string to_string(Normalization n) {
  return n == Normalization::FixOrbitSum ? "fix-orbit-sum" : "fix-value-at-orbit-0";
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "fix-orbit-sum") return Normalization::FixOrbitSum;
  if (s == "fix-value-at-orbit-0") return Normalization::FixValueAtOrbit0;
  throw std::invalid_argument("unknown normalization '" + s + "'");
}

double required_mass(Dim d) { return total_measure(d, Side::A); }

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxShrinks = 60;

struct Evaluation {
  double energy;
  std::vector<double> masses;       // per atom
  std::vector<double> residual;     // per orbit: nu_rep - mu(cell_rep)
  double max_abs_residual;
  double max_std_error = 0.0;
};

class Problem {
 public:
  Problem(std::vector<BaryPoint> atoms, std::vector<double> nu, OrbitDecomposition orbits, const SolveConfig& cfg)
      : atoms_(std::move(atoms)), nu_(std::move(nu)), orbits_(std::move(orbits)), cfg_(cfg) {}

  std::size_t orbit_count() const { return orbits_.orbits.size(); }
  double orbit_size(std::size_t o) const { return static_cast<double>(orbits_.orbits[o].size()); }
  const OrbitDecomposition& orbits() const { return orbits_; }
  const std::vector<BaryPoint>& atoms() const { return atoms_; }
  const std::vector<double>& nu() const { return nu_; }

  std::vector<double> expand(const std::vector<double>& G) const {
    std::vector<double> g(atoms_.size());
    for (std::size_t k = 0; k < atoms_.size(); ++k) g[k] = G[orbits_.orbit_of[k]];
    return g;
  }

  void normalize(std::vector<double>& G) const {
    // Orbit reduction makes both conventions pin the orbit of atom 0 to zero:
    // the orbit sum and the value at atom 0 vanish together.
    const double shift = cfg_.normalization == Normalization::FixOrbitSum ? G[orbits_.orbit_of[0]]
                                                                          : G[orbits_.orbit_of[0]];
    for (double& x : G) x -= shift;
  }

  Evaluation evaluate(const std::vector<double>& G) const {
    const std::vector<double> g = expand(G);
    Evaluation ev;
    double integral;
    if (cfg_.backend == Backend::Exact) {
      const CellComplex cx = cells_from_weights(atoms_, g);
      ev.masses = cx.masses;
      integral = cx.integral();
    } else {
      const McCellMasses mc = mc_cell_masses(atoms_, g, cfg_.mc_samples, cfg_.seed);
      ev.masses = mc.masses;
      integral = mc.integral;
      for (double se : mc.std_errors) ev.max_std_error = std::max(ev.max_std_error, se);
    }
    ev.energy = integral;
    for (std::size_t k = 0; k < atoms_.size(); ++k) ev.energy += nu_[k] * g[k];
    ev.residual.assign(orbit_count(), 0.0);
    ev.max_abs_residual = 0.0;
    for (std::size_t o = 0; o < orbit_count(); ++o) {
      // Per-atom residual, averaged over the orbit (equal by symmetry up to rounding).
      double r = 0.0;
      for (int k : orbits_.orbits[o]) r += nu_[k] - ev.masses[k];
      r /= orbit_size(o);
      ev.residual[o] = r;
    }
    for (std::size_t k = 0; k < atoms_.size(); ++k)
      ev.max_abs_residual = std::max(ev.max_abs_residual, std::abs(nu_[k] - ev.masses[k]));
    return ev;
  }

 private:
  std::vector<BaryPoint> atoms_;
  std::vector<double> nu_;
  OrbitDecomposition orbits_;
  const SolveConfig& cfg_;
};

void check_mass(const AtomicMeasure& nu) {
  if (nu.atoms().empty()) {
    throw std::invalid_argument("target measure has no atoms; its mass 0 differs from the required (d+2)^{d+1}/d!");
  }
  const Dim d = nu.atoms().front().point.dim();
  const double need = required_mass(d);
  if (std::abs(nu.total() - need) > 1e-9 * need) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target mass " << nu.total() << " must equal (d+2)^{d+1}/d! = " << need << " for d = " << d.value();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

SolveResult solve(const AtomicMeasure& nu_in, const SolveConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("max-iter must be >= 1");
  if (nu_in.side() != Side::B) throw std::invalid_argument("target measure must live on B");
  check_mass(nu_in);

  const AtomicMeasure nu = symmetrize(nu_in);
  std::vector<BaryPoint> atoms = nu.points();
  std::vector<double> target = nu.weights();
  auto orbits = orbit_decomposition(atoms, target);
  if (!orbits) throw std::logic_error("symmetrized target is not G-invariant");
  Problem problem(atoms, target, *orbits, cfg);

  std::vector<double> G(problem.orbit_count(), 0.0);
  if (cfg.initial_g) {
    if (cfg.initial_g->size() != atoms.size()) throw std::invalid_argument("initial weights have the wrong length");
    std::fill(G.begin(), G.end(), 0.0);
    for (std::size_t k = 0; k < atoms.size(); ++k) G[orbits->orbit_of[k]] += (*cfg.initial_g)[k];
    for (std::size_t o = 0; o < G.size(); ++o) G[o] /= problem.orbit_size(o);
  }
  problem.normalize(G);

  Evaluation ev = problem.evaluate(G);
  if (cfg.backend == Backend::MonteCarlo && cfg.tol < 3.0 * ev.max_std_error) {
    std::ostringstream msg;
    msg << "tol " << cfg.tol << " is below 3x the Monte Carlo standard error " << ev.max_std_error
        << "; increase mc-samples or tol";
    throw std::invalid_argument(msg.str());
  }

  SolveResult out;
  out.trace.push_back({ev.energy, ev.max_abs_residual, 0.0});
  double step = 1.0;
  std::vector<double> prev_G, prev_res;
  int iter = 0;
  for (; iter < cfg.max_iter && ev.max_abs_residual > cfg.tol; ++iter) {
    // Descent direction in the per-atom metric: d_o = -r_o; slope = -sum |o| r_o^2.
    double slope = 0.0;
    for (std::size_t o = 0; o < G.size(); ++o) slope -= problem.orbit_size(o) * ev.residual[o] * ev.residual[o];

    if (!prev_G.empty()) {
      // Barzilai-Borwein initial step from the last accepted move.
      double ss = 0.0, sy = 0.0;
      for (std::size_t o = 0; o < G.size(); ++o) {
        const double s = G[o] - prev_G[o];
        const double y = -(ev.residual[o] - prev_res[o]);
        ss += problem.orbit_size(o) * s * s;
        sy += problem.orbit_size(o) * s * y;
      }
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-8, 1e4) : 1.0;
    }

    bool accepted = false;
    std::vector<double> trial(G.size());
    Evaluation trial_ev;
    for (int shrink = 0; shrink < kMaxShrinks; ++shrink, step *= kShrink) {
      for (std::size_t o = 0; o < G.size(); ++o) trial[o] = G[o] - step * ev.residual[o];
      problem.normalize(trial);
      trial_ev = problem.evaluate(trial);
      if (trial_ev.energy <= ev.energy + kArmijo * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.message = "line search failed to find a sufficient decrease";
      break;
    }
    prev_G = G;
    prev_res = ev.residual;
    G = trial;
    ev = trial_ev;
    out.trace.push_back({ev.energy, ev.max_abs_residual, step});
  }

  out.converged = ev.max_abs_residual <= cfg.tol;
  if (out.message.empty())
    out.message = out.converged ? "converged" : "iteration limit reached; returning the best iterate";
  out.iterations = iter;
  out.atoms = atoms;
  out.target = target;
  out.orbit_of = orbits->orbit_of;
  out.g_orbit = G;
  out.g = problem.expand(G);
  out.cell_masses = ev.masses;
  out.residual = ev.max_abs_residual;
  out.energy = ev.energy;
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < atoms.size(); ++k) gens.push_back({atoms[k], out.g[k]});
  out.psi = ctransform(MaxAffineFn(Side::A, std::move(gens)));
  return out;
}

UniquenessReport verify_uniqueness(const AtomicMeasure& nu, const SolveConfig& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  UniquenessReport rep{trials, 0.0, 10.0 * cfg.tol, false, {}};
  const AtomicMeasure sym = symmetrize(nu);
  const std::size_t n = sym.atoms().size();
  for (int t = 0; t < trials; ++t) {
    SolveConfig c = cfg;
    CounterRng rng(cfg.seed, 0x0417ULL + static_cast<std::uint64_t>(t));
    std::vector<double> init(n);
    for (double& x : init) x = t == 0 ? 0.0 : 2.0 * rng.uniform() - 1.0;
    c.initial_g = init;
    rep.runs.push_back(solve(nu, c));
    if (!rep.runs.back().converged) throw std::runtime_error("solve failed during uniqueness check: " + rep.runs.back().message);
  }
  const std::vector<double>& target = rep.runs.front().target;
  for (int a = 0; a < trials; ++a)
    for (int b = a + 1; b < trials; ++b)
      for (std::size_t k = 0; k < n; ++k)
        if (target[k] > 0.0)
          rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.runs[a].g[k] - rep.runs[b].g[k]));
  rep.passed = rep.max_deviation < rep.threshold;
  return rep;
}

std::vector<LadderStep> solve_continuous(const LebesgueMeasure& target, const std::vector<int>& budgets,
                                         const SolveConfig& cfg) {
  if (target.side != Side::B) throw std::invalid_argument("continuous target must live on B");
  const Dim d(static_cast<int>(target.density.size()) - 2);
  if (std::abs(target.total() - required_mass(d)) > 1e-9 * required_mass(d)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target mass " << target.total() << " must equal (d+2)^{d+1}/d! = " << required_mass(d);
    throw std::invalid_argument(msg.str());
  }
  std::vector<BaryPoint> probes = sample_boundary(d, Side::B, 500, cfg.seed);
  for (int i = 0; i < d.coords(); ++i) probes.push_back(BaryPoint::vertex(Side::B, d, i));
  auto normalized_values = [&](const MaxAffineFn& psi) {
    std::vector<double> v;
    double mean = 0.0;
    for (const BaryPoint& p : probes) {
      v.push_back(psi(p));
      mean += v.back();
    }
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
    return v;
  };

  std::vector<LadderStep> out;
  std::vector<double> prev_values;
  std::optional<AtomicMeasure> prev_ma;
  for (int budget : budgets) {
    LadderStep step{budget, solve(discretize(target, budget), cfg)};
    AtomicMeasure ma(Side::B);
    for (std::size_t k = 0; k < step.result.atoms.size(); ++k)
      if (step.result.cell_masses[k] > 0.0) ma.add(step.result.atoms[k], step.result.cell_masses[k]);
    const std::vector<double> values = normalized_values(*step.result.psi);
    if (prev_ma) {
      step.bl_to_previous = bl_distance(*prev_ma, ma);
      for (std::size_t p = 0; p < values.size(); ++p)
        step.sup_to_previous = std::max(step.sup_to_previous, std::abs(values[p] - prev_values[p]));
    }
    prev_ma = ma;
    prev_values = values;
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace tropma
