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

#include "choreq/certify.hpp"

#include <set>

#include "choreq/errors.hpp"

namespace choreq {

namespace {

FairnessReport pass(std::string property) {
  return FairnessReport{std::move(property), true, std::nullopt};
}

FairnessReport fail(std::string property, Witness w) {
  return FairnessReport{std::move(property), false, std::move(w)};
}

void check_shapes(const Instance& inst, const Allocation& alloc) {
  if (alloc.n_agents != inst.n() || alloc.m() != inst.m()) {
    throw input_error("allocation shape does not match instance");
  }
}

// Shared skeleton for the envy family: `self_cost` maps the envier's bundle
// to the cost it is held accountable for.
template <typename SelfCost>
FairnessReport envy_check(const std::string& property, const Instance& inst,
                          const Allocation& alloc, SelfCost self_cost) {
  check_shapes(inst, alloc);
  for (int i = 0; i < inst.n(); ++i) {
    const Rational mine = self_cost(i);
    for (int h = 0; h < inst.n(); ++h) {
      if (h == i) continue;
      // The envier prices the other bundle with its own cost function.
      Rational theirs = 0;
      for (int j = 0; j < alloc.m(); ++j) {
        if (alloc.owner[j] == h) theirs += inst.cost(i, j);
      }
      if (mine > theirs) {
        Witness w{i, h, -1,
                  inst.agents[i] + " is left with more than " + inst.agents[h] +
                      "'s whole bundle costs it"};
        return fail(property, std::move(w));
      }
    }
  }
  return pass(property);
}

}  // namespace

FairnessReport is_ef(const Instance& inst, const Allocation& alloc) {
  return envy_check("ef", inst, alloc,
                    [&](int i) { return bundle_disutility(inst, alloc, i); });
}

FairnessReport is_ef1(const Instance& inst, const Allocation& alloc) {
  return envy_check("ef1", inst, alloc,
                    [&](int i) { return disutility_less_one(inst, alloc, i); });
}

FairnessReport is_efx(const Instance& inst, const Allocation& alloc) {
  // Dropping the cheapest chore is the weakest allowed removal, so checking
  // it alone is equivalent to checking the removal of every chore.
  return envy_check("efx", inst, alloc, [&](int i) -> Rational {
    Rational total = 0, cheapest = 0;
    bool any = false;
    for (int j = 0; j < alloc.m(); ++j) {
      if (alloc.owner[j] != i) continue;
      total += inst.cost(i, j);
      if (!any || inst.cost(i, j) < cheapest) cheapest = inst.cost(i, j);
      any = true;
    }
    return total - cheapest;
  });
}

FairnessReport is_ce(const Instance& inst, const Allocation& alloc,
                     const PaymentVector& pay) {
  check_shapes(inst, alloc);
  if (static_cast<int>(pay.size()) != inst.m()) {
    throw input_error("payment vector length does not match instance");
  }
  // Every condition is quantified over chores, so a chore-less market is
  // trivially in equilibrium (and mpb_ratio would have nothing to minimize).
  if (inst.m() == 0) return pass("ce");
  for (int j = 0; j < inst.m(); ++j) {
    if (pay[j] <= 0) {
      return fail("ce", Witness{-1, -1, j, "chore " + inst.chores[j] +
                                              " has non-positive payment"});
    }
  }
  for (int j = 0; j < inst.m(); ++j) {
    if (alloc.owner[j] < 0) {
      return fail("ce", Witness{-1, -1, j,
                                "chore " + inst.chores[j] + " is unallocated"});
    }
  }
  for (int i = 0; i < inst.n(); ++i) {
    const Rational alpha = mpb_ratio(inst, pay, i);
    for (int j = 0; j < inst.m(); ++j) {
      if (alloc.owner[j] != i) continue;
      if (inst.cost(i, j) / pay[j] != alpha) {
        return fail("ce", Witness{i, -1, j,
                                  inst.agents[i] + " performs " + inst.chores[j] +
                                      " above its minimum pain-per-buck ratio"});
      }
    }
  }
  return pass("ce");
}

FairnessReport is_pef1(const Allocation& alloc, const PaymentVector& pay) {
  if (static_cast<int>(pay.size()) != alloc.m()) {
    throw input_error("payment vector length does not match allocation");
  }
  for (int i = 0; i < alloc.n_agents; ++i) {
    const Rational mine = earning_less_one(alloc, pay, i);
    for (int h = 0; h < alloc.n_agents; ++h) {
      if (h == i) continue;
      if (mine > earning(alloc, pay, h)) {
        return fail("pef1", Witness{i, h, -1,
                                    "agent " + std::to_string(i) +
                                        " out-earns agent " + std::to_string(h) +
                                        " even after dropping its top payment"});
      }
    }
  }
  return pass("pef1");
}

int select_big_earner(const Allocation& alloc, const PaymentVector& pay) {
  int best = 0;
  Rational best_value = earning_less_one(alloc, pay, 0);
  for (int i = 1; i < alloc.n_agents; ++i) {
    Rational value = earning_less_one(alloc, pay, i);
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

int select_least_earner(const Allocation& alloc, const PaymentVector& pay) {
  int best = 0;
  Rational best_value = earning(alloc, pay, 0);
  for (int i = 1; i < alloc.n_agents; ++i) {
    Rational value = earning(alloc, pay, i);
    if (value < best_value) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

namespace {

// max − min ≤ 1 over per-agent counts produced by `count`.
template <typename Count>
bool spread_at_most_one(int n, Count count) {
  int lo = count(0), hi = lo;
  for (int i = 1; i < n; ++i) {
    int c = count(i);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return hi - lo <= 1;
}

}  // namespace

bool is_balanced(const Instance& inst, const Allocation& alloc, BalanceMode mode) {
  check_shapes(inst, alloc);
  if (mode == BalanceMode::total) {
    return spread_at_most_one(inst.n(), [&](int i) { return alloc.bundle_size(i); });
  }

  // The 1-chore / k-chore modes only make sense in bivalued normal form.
  std::set<Rational> values;
  for (const auto& row : inst.costs) values.insert(row.begin(), row.end());
  values.erase(Rational(1));
  if (values.size() > 1 || (values.size() == 1 && *values.begin() <= 1)) {
    throw input_error("1-/k-chore balance needs costs in {1, k}");
  }
  const Rational k = values.empty() ? Rational(0) : *values.begin();

  auto count_value = [&](int i, const Rational& v) {
    int c = 0;
    for (int j = 0; j < alloc.m(); ++j) {
      if (alloc.owner[j] == i && inst.cost(i, j) == v) ++c;
    }
    return c;
  };
  const bool ones = spread_at_most_one(
      inst.n(), [&](int i) { return count_value(i, Rational(1)); });
  const bool ks = values.empty() ||
                  spread_at_most_one(inst.n(), [&](int i) { return count_value(i, k); });
  switch (mode) {
    case BalanceMode::one_chores:
      return ones;
    case BalanceMode::k_chores:
      return ks;
    default:
      return ones && ks &&
             spread_at_most_one(inst.n(), [&](int i) { return alloc.bundle_size(i); });
  }
}

bool is_cost_minimizing(const Instance& inst, const Allocation& alloc) {
  check_shapes(inst, alloc);
  for (int j = 0; j < inst.m(); ++j) {
    if (alloc.owner[j] < 0) continue;  // unassigned chores are not judged
    for (int i = 0; i < inst.n(); ++i) {
      if (inst.cost(i, j) < inst.cost(alloc.owner[j], j)) return false;
    }
  }
  return true;
}

}  // namespace choreq
