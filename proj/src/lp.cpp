#include "tropma/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tropma {

namespace {

// Tableau rows 0..m-1 are constraints; the last column is the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
  }

 private:
  int rows_, cols_;
  std::vector<double> data_;
};

// Row `rows()` holds reduced costs of the objective being maximized, stored
// negated (standard form: z - c.x = 0). Columns >= allowed_cols never enter.
bool run_simplex(Tableau& t, std::vector<int>& basis, int allowed_cols, double tol) {
  const int obj = t.rows();
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int c = 0; c < allowed_cols; ++c) {
      if (t.at(obj, c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= tol) continue;
      const double ratio = t.rhs(r) / a;
      if (ratio < best - tol || (ratio <= best + tol && leave >= 0 && basis[r] < basis[leave])) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex iteration limit reached");
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double tol) {
  const int n = static_cast<int>(lp.objective.size());
  const int m_ub = static_cast<int>(lp.a_ub.size());
  const int m_eq = static_cast<int>(lp.a_eq.size());
  if (static_cast<int>(lp.b_ub.size()) != m_ub || static_cast<int>(lp.b_eq.size()) != m_eq)
    throw std::invalid_argument("linear program has inconsistent sizes");
  const int m = m_ub + m_eq;

  // Columns: n structural, m_ub slacks, m artificials.
  const int art0 = n + m_ub;
  const int cols = art0 + m;
  Tableau t(m, cols);
  std::vector<int> basis(m);

  for (int r = 0; r < m; ++r) {
    const bool is_ub = r < m_ub;
    const auto& row = is_ub ? lp.a_ub[r] : lp.a_eq[r - m_ub];
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("linear program row has wrong length");
    double b = is_ub ? lp.b_ub[r] : lp.b_eq[r - m_ub];
    const double sign = b < 0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t.at(r, c) = sign * row[c];
    if (is_ub) t.at(r, n + r) = sign;
    t.at(r, art0 + r) = 1.0;
    t.rhs(r) = sign * b;
    basis[r] = art0 + r;
  }

  // Phase one: maximize -sum(artificials).
  for (int c = 0; c <= cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += t.at(r, c);
    t.at(m, c) = (c >= art0 && c < cols) ? 0.0 : -s;
  }
  run_simplex(t, basis, cols, tol);
  LpResult out;
  if (t.rhs(m) < -tol * std::max(1.0, static_cast<double>(m))) return out;  // infeasible

  // Drive remaining artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < art0) continue;
    for (int c = 0; c < art0; ++c) {
      if (std::abs(t.at(r, c)) > tol) {
        t.pivot(r, c);
        basis[r] = c;
        break;
      }
    }
  }

  // Phase two.
  for (int c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (int c = 0; c < n; ++c) t.at(m, c) = -lp.objective[c];
  for (int r = 0; r < m; ++r) {
    const int b = basis[r];
    if (b < n && lp.objective[b] != 0.0) {
      const double f = t.at(m, b);
      for (int c = 0; c <= cols; ++c) t.at(m, c) -= f * t.at(r, c);
    }
  }
  if (!run_simplex(t, basis, art0, tol)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = t.rhs(r);
  out.value = 0.0;
  for (int c = 0; c < n; ++c) out.value += lp.objective[c] * out.x[c];
  return out;
}

}  // namespace tropma
