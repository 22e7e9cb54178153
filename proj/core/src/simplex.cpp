// Copyright 2026 The choreq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choreq/simplex.hpp"

#include <vector>

#include "choreq/errors.hpp"

namespace choreq {

namespace {

constexpr long kPivotCap = 100000;

// Dense tableau in canonical form: for every row r the column basis[r] is a
// unit column.  The cost row holds reduced costs and (negated) objective in
// its last slot, updated by the same eliminations as the constraint rows.
struct Tableau {
  int ncols = 0;
  std::vector<std::vector<Rational>> row;  // [nrows][ncols + 1]; last is rhs
  std::vector<int> basis;
  std::vector<Rational> cost;  // [ncols + 1]; last is -objective
  std::vector<char> banned;    // columns excluded from entering (artificials)
  long pivots = 0;

  int nrows() const { return static_cast<int>(row.size()); }

  void pivot(int r, int c) {
    if (++pivots > kPivotCap) {
      throw defect_error("simplex exceeded its pivot cap; Bland's rule should "
                         "have prevented cycling");
    }
    const Rational inv = 1 / row[r][c];
    for (auto& v : row[r]) v *= inv;
    for (int r2 = 0; r2 < nrows(); ++r2) {
      if (r2 == r || row[r2][c] == 0) continue;
      const Rational f = row[r2][c];
      for (int j = 0; j <= ncols; ++j) row[r2][j] -= f * row[r][j];
    }
    if (cost[c] != 0) {
      const Rational f = cost[c];
      for (int j = 0; j <= ncols; ++j) cost[j] -= f * row[r][j];
    }
    basis[r] = c;
  }

  // Installs reduced costs for objective vector `obj` (indexed over all
  // columns) under the current basis.
  void set_objective(const std::vector<Rational>& obj) {
    cost.assign(ncols + 1, Rational(0));
    for (int j = 0; j < ncols; ++j) cost[j] = obj[j];
    for (int r = 0; r < nrows(); ++r) {
      const Rational f = obj[basis[r]];
      if (f == 0) continue;
      for (int j = 0; j <= ncols; ++j) cost[j] -= f * row[r][j];
    }
  }

  // Runs Bland-rule iterations to optimality.  Returns false on unbounded.
  bool optimize() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!banned[j] && cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < nrows(); ++r) {
        if (row[r][enter] <= 0) continue;
        const Rational ratio = row[r][ncols] / row[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return -cost[ncols]; }
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
    throw input_error("objective length does not match variable count");
  }
  for (const auto& r : lp.rows) {
    if (static_cast<int>(r.coeff.size()) != lp.num_vars) {
      throw input_error("constraint length does not match variable count");
    }
  }

  const int nrows = static_cast<int>(lp.rows.size());
  // Count auxiliary columns.  Rows are first normalized to nonnegative rhs;
  // a <= row with flipped sign becomes >= and needs surplus + artificial.
  std::vector<int> sign(nrows, 1);
  int n_slack = 0, n_art = 0;
  for (int r = 0; r < nrows; ++r) {
    const bool flipped = lp.rows[r].rhs < 0;
    if (flipped) sign[r] = -1;
    if (lp.rows[r].rel == LpProblem::Rel::le) {
      ++n_slack;  // slack if kept direction, surplus if flipped
      if (flipped) ++n_art;
    } else {
      ++n_art;
    }
  }

  Tableau t;
  t.ncols = lp.num_vars + n_slack + n_art;
  t.row.assign(nrows, std::vector<Rational>(t.ncols + 1, Rational(0)));
  t.basis.assign(nrows, -1);
  t.banned.assign(t.ncols, 0);

  int next_slack = lp.num_vars;
  int next_art = lp.num_vars + n_slack;
  const int first_art = next_art;
  for (int r = 0; r < nrows; ++r) {
    for (int j = 0; j < lp.num_vars; ++j) {
      t.row[r][j] = sign[r] * lp.rows[r].coeff[j];
    }
    t.row[r][t.ncols] = sign[r] * lp.rows[r].rhs;
    if (lp.rows[r].rel == LpProblem::Rel::le) {
      t.row[r][next_slack] = sign[r];  // slack (+1) or surplus (-1)
      if (sign[r] > 0) t.basis[r] = next_slack;
      ++next_slack;
    }
    if (t.basis[r] < 0) {
      t.row[r][next_art] = 1;
      t.basis[r] = next_art;
      ++next_art;
    }
  }

  LpSolution sol;
  if (n_art > 0) {
    std::vector<Rational> phase1(t.ncols, Rational(0));
    for (int j = first_art; j < t.ncols; ++j) phase1[j] = 1;
    t.set_objective(phase1);
    if (!t.optimize()) {
      throw defect_error("phase-1 objective is bounded below by zero");
    }
    if (t.objective_value() != 0) {
      sol.status = LpStatus::infeasible;
      sol.pivots = t.pivots;
      return sol;
    }
    // Drive leftover artificials out of the basis; a row with no structural
    // or slack coefficient left is redundant and harmless to keep (it pins
    // the artificial at zero), but pivoting out keeps phase 2 clean.
    for (int r = 0; r < t.nrows(); ++r) {
      if (t.basis[r] < first_art) continue;
      for (int j = 0; j < first_art; ++j) {
        if (t.row[r][j] != 0) {
          t.pivot(r, j);
          break;
        }
      }
    }
    for (int j = first_art; j < t.ncols; ++j) t.banned[j] = 1;
  }

  std::vector<Rational> phase2(t.ncols, Rational(0));
  for (int j = 0; j < lp.num_vars; ++j) phase2[j] = lp.objective[j];
  t.set_objective(phase2);
  if (!t.optimize()) {
    sol.status = LpStatus::unbounded;
    sol.pivots = t.pivots;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.objective = t.objective_value();
  sol.values.assign(lp.num_vars, Rational(0));
  for (int r = 0; r < t.nrows(); ++r) {
    if (t.basis[r] < lp.num_vars) sol.values[t.basis[r]] = t.row[r][t.ncols];
  }
  sol.pivots = t.pivots;
  return sol;
}

}  // namespace choreq
