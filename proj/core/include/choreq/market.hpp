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

#include "choreq/instance.hpp"

namespace choreq {

// An (integral) allocation, stored as an owner index per chore.  -1 marks a
// chore not yet assigned; complete allocations have every owner in [0, n).
struct Allocation {
  int n_agents = 0;
  std::vector<int> owner;

  Allocation() = default;
  Allocation(int n, int m) : n_agents(n), owner(m, -1) {}

  int m() const { return static_cast<int>(owner.size()); }
  bool complete() const;

  // Chores owned by `agent`, ascending.
  std::vector<int> bundle(int agent) const;
  std::vector<std::vector<int>> bundles() const;
  int bundle_size(int agent) const;

  // Everything to a single agent (the three-agent solver starts this way).
  static Allocation all_to(int n, int m, int agent);

  bool operator==(const Allocation&) const = default;
};

// Positive payment per chore.  Payments play the role of prices in a chore
// market: an agent "earns" the payments of the chores it performs.
using PaymentVector = std::vector<Rational>;

// Allocation + payments travelling together.
struct MarketState {
  Allocation alloc;
  PaymentVector pay;
};

// d_i(x_i): total cost of agent's own bundle.
Rational bundle_disutility(const Instance& inst, const Allocation& alloc, int agent);
// d_i(S) for an arbitrary chore set.
Rational set_disutility(const Instance& inst, int agent, const std::vector<int>& chores);
// d_{i,-1}(x_i) = min over j in x_i of d_i(x_i \ {j}), i.e. the bundle cost
// with the single most painful chore forgiven.  0 for an empty bundle.
Rational disutility_less_one(const Instance& inst, const Allocation& alloc, int agent);
// p(x_i): total payment collected by `agent`.
Rational earning(const Allocation& alloc, const PaymentVector& pay, int agent);
// p_{-1}(x_i) = p(x_i) minus the largest single payment; 0 for an empty bundle.
Rational earning_less_one(const Allocation& alloc, const PaymentVector& pay, int agent);

// Minimum pain-per-buck ratio of `agent`: min over all chores of d_i(j)/p_j.
// Throws input_error when there are no chores.
Rational mpb_ratio(const Instance& inst, const PaymentVector& pay, int agent);
// Chores attaining that minimum, ascending.  Exact rational equality.
std::vector<int> mpb_set(const Instance& inst, const PaymentVector& pay, int agent);

}  // namespace choreq
