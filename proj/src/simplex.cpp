#include "loadbal/simplex.hpp"

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

Rational evaluate(const LinearRow& row, const std::vector<Rational>& x) {
  Rational v = 0;
  for (const auto& [var, coef] : row.terms) v += coef * x[var];
  return v;
}

}  // namespace

bool LinearFeasibilityProblem::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != num_vars) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : equalities) {
    if (evaluate(row, x) != row.rhs) return false;
  }
  for (const auto& row : at_most) {
    if (evaluate(row, x) > row.rhs) return false;
  }
  for (const auto& row : at_least) {
    if (evaluate(row, x) < row.rhs) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> lp_feasible(const LinearFeasibilityProblem& problem) {
  // Standard form: structural vars | one slack per inequality | one artificial per row.
  const std::size_t n = problem.num_vars;
  const std::size_t n_ineq = problem.at_most.size() + problem.at_least.size();
  const std::size_t rows = problem.equalities.size() + n_ineq;
  const std::size_t art0 = n + n_ineq;
  const std::size_t cols = art0 + rows;

  // tableau[r] has cols entries followed by the rhs.
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(rows);
  std::size_t r = 0;
  auto load_row = [&](const LinearRow& row, int slack_sign, std::size_t slack_col) {
    auto& t = tab[r];
    for (const auto& [var, coef] : row.terms) {
      if (var >= n) throw InputError("lp_feasible: variable index out of range");
      t[var] += coef;
    }
    if (slack_sign != 0) t[slack_col] = slack_sign;
    t[cols] = row.rhs;
    if (t[cols] < 0) {
      for (auto& v : t) v = -v;
    }
    t[art0 + r] = 1;
    basis[r] = art0 + r;
    ++r;
  };
  for (const auto& row : problem.equalities) load_row(row, 0, 0);
  std::size_t slack = n;
  for (const auto& row : problem.at_most) load_row(row, +1, slack++);
  for (const auto& row : problem.at_least) load_row(row, -1, slack++);

  // Reduced costs of the phase-one objective sum(artificials):
  // c_j - c_B B^-1 A_j = -sum over rows of column j for non-artificial j.
  std::vector<Rational> cost(cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < art0; ++j) cost[j] -= tab[i][j];
    cost[cols] -= tab[i][cols];
  }

  while (true) {
    // Bland: smallest-index column with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    // Ratio test; ties broken by smallest basic variable index.
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter] <= 0) continue;
      const Rational ratio = tab[i][cols] / tab[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) throw InternalError("lp_feasible: phase-one objective unbounded");
    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Rational f = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (tab[leave][j] != 0) tab[i][j] -= f * tab[leave][j];
      }
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (tab[leave][j] != 0) cost[j] -= f * tab[leave][j];
      }
    }
    basis[leave] = enter;
  }

  // cost[cols] holds minus the artificial sum.
  if (cost[cols] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < n) x[basis[i]] = tab[i][cols];
  }
  if (!problem.satisfied_by(x)) throw InternalError("lp_feasible: extracted point violates the system");
  return x;
}

}  // namespace loadbal
