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

#include <string>
#include <utility>
#include <vector>

#include "choreq/rational.hpp"

namespace choreq {

// A chore-division instance: n agents, m indivisible chores, and an additive
// disutility ("cost") matrix.  costs[i][j] >= 0 is what agent i suffers when
// made to do chore j.  External string ids exist only at the I/O boundary;
// all algorithms work with dense 0-based indices into these vectors.
struct Instance {
  std::vector<std::string> agents;
  std::vector<std::string> chores;
  std::vector<std::vector<Rational>> costs;

  int n() const { return static_cast<int>(agents.size()); }
  int m() const { return static_cast<int>(chores.size()); }
  const Rational& cost(int agent, int chore) const { return costs[agent][chore]; }

  // Builds an instance with default ids a1..an / j1..jm.
  static Instance from_costs(std::vector<std::vector<Rational>> costs);

  // Shape, id uniqueness and nonnegativity.  Throws input_error.
  void validate() const;

  // True when every entry is strictly positive (required by the market-based
  // solvers; run preprocess_zero_chores first if it fails).
  bool all_positive() const;
};

// Structural classification of an instance.  A flag being set means the
// instance *qualifies* for the corresponding specialized solver; several
// flags can be set at once (e.g. bivalued implies two_ary).
struct InstanceClass {
  bool three_agent = false;  // exactly 3 agents
  bool two_type = false;     // exactly two distinct cost rows
  bool identical = false;    // exactly one distinct cost row
  bool bivalued = false;     // all entries in {low, high}, both positive
  bool two_ary = false;      // every row has at most two distinct positive values

  // Populated when bivalued: the two global values (low == high is possible
  // for an all-equal matrix, reported with low == high).
  Rational bivalued_low, bivalued_high;
  // Populated when two_ary: per-agent value pair (equal for a constant row).
  std::vector<Rational> ary_low, ary_high;
};

InstanceClass classify(const Instance& inst);

// Splitting off chores that someone can do for free.  Each chore with a zero
// cost for at least one agent is pre-assigned to the lowest-index such agent;
// the remaining chores form a strictly positive sub-instance for the market
// solvers.  Handing an agent a chore it values at zero changes neither its
// own bundle cost nor any removal-based envy comparison against it, so EF1 /
// EFX / fPO verdicts for the solved remainder carry over to the merged whole.
struct ZeroChoreSplit {
  Instance reduced;                            // only all-positive chores
  std::vector<int> kept;                       // reduced chore -> original chore
  std::vector<std::pair<int, int>> preassigned;  // (original chore, agent)
};

ZeroChoreSplit preprocess_zero_chores(const Instance& inst);

}  // namespace choreq
