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

#include "choreq/market.hpp"

namespace choreq {

// EF1 + fPO solver for instances where every agent has one of exactly two
// cost functions.

struct TwoTypePartition {
  std::vector<int> type1;  // agents sharing the first row (agent 0's type)
  std::vector<int> type2;  // everyone else; nonempty by contract
};

// Splits the agents by cost row.  Throws input_error unless there are exactly
// two distinct rows (an all-identical instance is deliberately rejected: the
// plain round-robin below already handles it).
TwoTypePartition two_type_partition(const Instance& inst);

// Agents pick in the given cyclic order; each takes its cheapest remaining
// chore (ties toward the lowest chore index).  Chores outside `chores` stay
// unassigned in the returned allocation.
Allocation round_robin(const Instance& inst, const std::vector<int>& agent_order,
                       const std::vector<int>& chores);

// The uniform payment raise applied to the type-1 chore pool when no chore in
// it is minimum-pain-per-buck for type 2: exactly the factor that makes the
// cheapest (by type-2 pain-per-buck) pool chore match the best ratio outside
// the pool.  Always > 1 under the algorithm's invariants.
Rational raise_factor_two_type(const Instance& inst, int type2_rep,
                               const std::vector<int>& pool1,
                               const std::vector<int>& pool2,
                               const PaymentVector& pay);

struct TwoTypeEvent {
  enum class Kind { transfer, raise };
  Kind kind = Kind::transfer;
  int chore = -1;   // moved from the type-1 pool to the type-2 pool
  Rational factor;  // raise factor
  // Snapshots around a transfer, used by the regression checks: the type-1
  // side may only get better off and the type-2 side only more loaded.
  Rational pre_b1_less_one, post_l1_earning, pre_l2_earning, post_b2_less_one;
};

struct TwoTypeTrace {
  std::vector<TwoTypeEvent> events;
  int transfers = 0;
  int raises = 0;
  int iterations = 0;
};

struct TwoTypeResult {
  Allocation alloc;
  PaymentVector pay;
  TwoTypePartition partition;
  TwoTypeTrace trace;
};

// Requires exactly two agent types and all costs > 0.  Output is a
// competitive equilibrium that is payment-EF1, hence EF1 + fPO.  The main
// loop runs at most 2m+2 iterations (cap enforced as a defect detector).
TwoTypeResult solve_two_type(const Instance& inst);

// Payments equal to one agent's cost row.  For identical agents this makes
// every chore minimum-pain-per-buck for everyone, so any complete allocation
// is a competitive equilibrium under it.
PaymentVector proportional_payments(const Instance& inst, int agent);

}  // namespace choreq
