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
#include <vector>

#include "choreq/certify.hpp"
#include "choreq/market.hpp"

namespace choreq {

// Solvers for bivalued instances (every cost is a or b).  After normalization
// the values are 1 and k > 1; a chore someone can do at cost 1 is a "low"
// (L-)chore, a chore costing k for everyone is a "heavy" (K-)chore.  The
// balanced solver produces an EF1 + fPO equilibrium whose bundles are as
// even as possible; on three agents a repair phase upgrades EF1 to EFX.

struct BivaluedNormal {
  Instance base;                   // entries in {1, k}
  Rational k;                      // > 1 (set to 2 when the input is all-equal)
  std::vector<Rational> row_scale;  // original row i = base row i * row_scale[i]
  std::vector<bool> chore_is_low;   // some agent has base cost 1 for the chore
};

// Normalizes a bivalued instance: divide everything by the global low value,
// then rescale any all-k row down to all-ones (a uniform per-row scale never
// changes which allocations are fair or efficient).  Throws input_error when
// the instance is not bivalued with strictly positive entries.
BivaluedNormal rescale_bivalued(const Instance& inst);

// Agents partitioned into ordered groups by the group-formation phase.
// Rank 0 is the "highest" group: its bundles are weakly the largest, chores
// flow from lower ranks... never into it, and agents outside it see all of
// its chores as heavy.
struct AgentGroups {
  std::vector<std::vector<int>> groups;  // groups[rank], agents ascending
  std::vector<int> group_of;             // agent -> rank
};

// BFS layering of the pain-per-buck graph from `source`, alternating
// "owned chore" and "minimum pain-per-buck" edges, restricted to `active`
// agents and their chores.  agent_level[source] == 0; -1 means unreachable.
// via_chore/via_agent give the discovery edge so the caller can walk the
// shortest alternating path backwards.
struct MpbLevels {
  std::vector<int> agent_level;
  std::vector<int> via_chore;
  std::vector<int> via_agent;
};
MpbLevels mpb_levels(const Instance& base, const Allocation& alloc,
                     const PaymentVector& pay, int source,
                     const std::vector<char>& active);

struct BivaluedEvent {
  enum class Kind {
    init_assign,       // L-chore to its cheapest agent
    path_transfer,     // group-formation: last chore of a shortest path moves
    k_assign,          // heavy chore to the least-loaded agent
    balance_transfer,  // rebalancing transfer from the largest bundle
    group_raise,       // rebalancing payment raise (factor k) of one group
    fix_transfer,      // EFX repair: single chore moves
    fix_swap,          // EFX repair: two chores exchanged
    fix_raise,         // EFX repair: top bundle's payments raised by k
  };
  Kind kind = Kind::init_assign;
  int chore = -1, from = -1, to = -1;
  int other_chore = -1;  // second chore of a swap
  int group = -1;        // raised group rank
  Rational factor;
};

struct BivaluedTrace {
  std::vector<BivaluedEvent> events;
  int mig_transfers = 0;      // group-formation path transfers
  int balance_transfers = 0;  // rebalancing transfers
  int raises = 0;             // group raises (either phase)
  int fix_transfers = 0, fix_swaps = 0;
  int envy_at_dispatch = -1;  // EFX-envy pair count when repair dispatched
  std::string repair_branch;  // which repair routine ran, if any
  std::vector<std::string> violations;  // invariant monitor output; must stay empty
};

// Working state shared by the solver phases.  Exposed so tests can drive the
// phases individually and inspect intermediate states.
struct BivaluedState {
  const BivaluedNormal* bn = nullptr;
  Allocation alloc;
  PaymentVector pay;
  AgentGroups groups;
  std::vector<char> group_raised;
  BivaluedTrace trace;
  bool check_invariants = true;

  bool is_low_for(int agent, int chore) const;   // base cost 1
  bool is_heavy(int chore) const;                // K-chore
  int own_one_count(int agent) const;            // |{j in x_i : d_i(j) = 1}|
  int own_k_count(int agent) const;              // |{j in x_i : d_i(j) = k}|

  // Primitives.  Both demand that every moving chore is minimum
  // pain-per-buck for its receiver (defect_error otherwise), which is what
  // keeps the equilibrium intact across the whole solver.
  void transfer(int chore, int to, BivaluedEvent::Kind kind);
  void swap_chores(int chore_a, int chore_b, BivaluedEvent::Kind kind);
};

BivaluedState make_bivalued_state(const BivaluedNormal& bn);

// Phase 1: allocate the L-chores at payment 1 each (cost-minimizing start),
// then repeatedly let the biggest earner push the last chore of a shortest
// alternating path toward an agent it payment-envies, forming ordered agent
// groups as components settle.
void make_init_groups(BivaluedState& st);

// Phase 2: heavy chores at payment k each, one at a time to the agent with
// the fewest chores (ties: lowest group, fewest heavy chores, lowest index).
void assign_k_chores(BivaluedState& st);

// Phase 3: while some bundle is more than one chore larger than the
// smallest, transfer an attractive chore from the largest bundle or raise
// that bundle's whole group by factor k to create one.
void rebalance(BivaluedState& st);

// Checks the state's structural invariants (equilibrium, group balance,
// raise bookkeeping, cross-group heaviness) for the given phase.  Violations
// are appended to trace.violations and then raised as a defect; an empty
// return value means the state is clean.
std::vector<std::string> validate_bivalued_state(BivaluedState& st, const std::string& phase);

// EFX repair for n == 3 after the balanced phases.  Dispatch depends on the
// group count; the individual routines are exposed for the replay fixtures.
void reduce_efx_envy(BivaluedState& st);       // single group
void fix_two_extra_K(BivaluedState& st);       // one envy, enviers hold 2 extra heavies
void fix_one_extra_K(BivaluedState& st);       // one envy from the single extra-heavy holder
void fix_top_singleton(BivaluedState& st);     // two groups, top group = one agent
void fix_top_pair(BivaluedState& st);          // two groups, top group = two agents

struct BivaluedResult {
  Allocation alloc;
  PaymentVector pay;
  AgentGroups groups;
  BivaluedNormal normal;
  BivaluedTrace trace;
};

// Balanced EF1 + fPO equilibrium for any bivalued instance with positive
// costs.  Caps: at most m*n transfers and n raises after group formation.
BivaluedResult balanced_ef1_fpo(const Instance& inst);

// EFX + fPO for exactly three bivalued agents.  Identical agents take a
// greedy descending-cost route (EFX for identical costs; every allocation is
// fPO there); otherwise the balanced solver runs and the repair phase fixes
// any remaining EFX violation.
BivaluedResult efx_fpo_three_bivalued(const Instance& inst);

struct TwoAryResult {
  Allocation alloc;
  FairnessReport ef1;  // certified against the true costs
};

// EF1 + PO for instances where each agent uses at most two values whose
// ratio k_i is at least m.  Runs the balanced solver on a proxy where every
// high value is replaced by a common k (its behaviour depends only on the
// low/high pattern, not on k's magnitude).
TwoAryResult solve_two_ary(const Instance& inst);

}  // namespace choreq
