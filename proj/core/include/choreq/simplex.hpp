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

#pragma once

#include <vector>

#include "choreq/rational.hpp"

namespace choreq {

// A small dense LP in exact rational arithmetic:
//
//   minimize    objective . z
//   subject to  row.coeff . z  (<= | ==)  row.rhs      for each row
//               z >= 0
//
// Solved with a two-phase primal simplex using Bland's rule, so it cannot
// cycle; a generous pivot cap acts as a defect detector only.  Sizes here are
// tiny (tens of variables), so a dense tableau is the right tool.
struct LpProblem {
  enum class Rel { le, eq };
  struct Row {
    std::vector<Rational> coeff;
    Rational rhs;
    Rel rel = Rel::le;
  };
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rational objective;             // meaningful when optimal
  std::vector<Rational> values;   // primal solution when optimal
  long pivots = 0;
};

LpSolution solve_lp(const LpProblem& lp);

}  // namespace choreq
