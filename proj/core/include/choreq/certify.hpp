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

#include <optional>
#include <string>

#include "choreq/market.hpp"

namespace choreq {

// A violating pair/chore when a property fails, so callers can print a
// concrete counterexample instead of a bare "no".
struct Witness {
  int agent = -1;
  int other = -1;
  int chore = -1;
  std::string detail;
};

struct FairnessReport {
  std::string property;
  bool holds = true;
  std::optional<Witness> witness;
};

// Envy-freeness: d_i(x_i) <= d_i(x_h) for all i, h.
FairnessReport is_ef(const Instance&, const Allocation&);
// EF1: d_{i,-1}(x_i) <= d_i(x_h); the envier may drop its worst chore.
FairnessReport is_ef1(const Instance&, const Allocation&);
// EFX: d_i(x_i \ {j}) <= d_i(x_h) for every j in x_i; equivalently the bundle
// minus its *cheapest* chore must not exceed any other bundle's cost.
FairnessReport is_efx(const Instance&, const Allocation&);

// Competitive equilibrium: payments strictly positive, every chore assigned,
// and each agent only performs chores attaining its minimum pain-per-buck
// ratio.  (With each agent's budget read as its own earning, the budget
// condition is an identity, so these two checks are the whole definition.)
FairnessReport is_ce(const Instance&, const Allocation&, const PaymentVector&);

// Payment-EF1: p_{-1}(x_i) <= p(x_h) for all i, h.  A purely payment-side
// property; combined with a competitive equilibrium it yields EF1 + fPO.
FairnessReport is_pef1(const Allocation&, const PaymentVector&);

// The big earner maximizes p_{-1}(x_i); the least earner minimizes p(x_i).
// Ties break toward the lowest agent index.  An allocation is pEF1 iff the
// big earner does not pEF1-envy the least earner, which is what the solvers'
// loop conditions reduce to.
int select_big_earner(const Allocation&, const PaymentVector&);
int select_least_earner(const Allocation&, const PaymentVector&);

enum class BalanceMode {
  total,       // bundle sizes differ by at most 1
  one_chores,  // per-agent counts of own-cost-1 chores differ by at most 1
  k_chores,    // per-agent counts of own-cost-k chores differ by at most 1
  fully,       // all three at once
};

// Balance checks.  Modes other than `total` require the instance to be in
// bivalued normal form (every entry 1 or k); otherwise input_error.
bool is_balanced(const Instance&, const Allocation&, BalanceMode mode);

// Every chore sits with an agent that minimizes its cost column.
bool is_cost_minimizing(const Instance&, const Allocation&);

}  // namespace choreq
