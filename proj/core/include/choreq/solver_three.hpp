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

// EF1 + fPO solver for exactly three agents with strictly positive costs.
//
// The algorithm maintains a competitive equilibrium throughout: all chores
// start with agent 0 at payments equal to agent 0's costs, and while the
// allocation is not EF1 it either moves a minimum-pain-per-buck chore toward
// the least earner (directly or through the middle agent) or multiplies some
// bundles' payments by a factor < 1 until a new chore becomes attractive.

enum class DropMode {
  // Scale payments of x_least and x_high; targets are the big earner's
  // chores.  Used when neither the least nor the high earner sees anything
  // attractive in the big earner's bundle.
  least_and_high,
  // Scale payments of x_least only; targets are everyone else's chores.
  least_only,
};

// The largest factor beta < 1 that, applied to the dropping bundles, makes at
// least one target chore minimum-pain-per-buck for a dropping agent while
// keeping the equilibrium intact.  Throws defect_error if the preconditions
// of the calling branch do not hold (beta would be >= 1 or undefined).
Rational drop_factor(const Instance& inst, const Allocation& alloc,
                     const PaymentVector& pay, int big, int least, int high,
                     DropMode mode);

struct ThreeAgentEvent {
  enum class Kind { transfer, drop };
  Kind kind = Kind::transfer;
  int big = -1, least = -1, high = -1;  // roles when the event fired
  int chore = -1, from = -1, to = -1;   // transfer
  Rational factor;                      // drop
  std::vector<int> dropped;             // chores whose payments were scaled
};

struct ThreeAgentTrace {
  std::vector<ThreeAgentEvent> events;
  int transfers = 0;
  int drops = 0;
};

struct ThreeAgentResult {
  Allocation alloc;
  PaymentVector pay;
  ThreeAgentTrace trace;
};

// Requires n == 3 and all costs > 0 (preprocess zero chores first).
// Output is EF1 and a competitive equilibrium, hence fPO.  Event count is
// capped at 20*m^2 as a defect detector.
ThreeAgentResult solve_three_agents(const Instance& inst);

}  // namespace choreq
