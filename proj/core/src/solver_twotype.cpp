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

#include "choreq/solver_twotype.hpp"

#include <algorithm>

#include "choreq/certify.hpp"
#include "choreq/errors.hpp"

namespace choreq {

TwoTypePartition two_type_partition(const Instance& inst) {
  TwoTypePartition part;
  const std::vector<Rational>& row1 = inst.costs[0];
  const std::vector<Rational>* row2 = nullptr;
  for (int i = 0; i < inst.n(); ++i) {
    if (inst.costs[i] == row1) {
      part.type1.push_back(i);
    } else if (row2 == nullptr || inst.costs[i] == *row2) {
      row2 = &inst.costs[i];
      part.type2.push_back(i);
    } else {
      throw input_error("more than two distinct cost functions");
    }
  }
  if (part.type2.empty()) {
    throw input_error("all agents share one cost function; not a two-type instance");
  }
  return part;
}

Allocation round_robin(const Instance& inst, const std::vector<int>& agent_order,
                       const std::vector<int>& chores) {
  if (agent_order.empty()) throw input_error("round robin needs at least one agent");
  Allocation alloc(inst.n(), inst.m());
  std::vector<char> remaining(inst.m(), 0);
  int left = 0;
  for (int j : chores) {
    remaining[j] = 1;
    ++left;
  }
  for (int turn = 0; left > 0; ++turn) {
    const int agent = agent_order[turn % agent_order.size()];
    int pick = -1;
    for (int j = 0; j < inst.m(); ++j) {
      if (!remaining[j]) continue;
      if (pick < 0 || inst.cost(agent, j) < inst.cost(agent, pick)) pick = j;
    }
    alloc.owner[pick] = agent;
    remaining[pick] = 0;
    --left;
  }
  return alloc;
}

Rational raise_factor_two_type(const Instance& inst, int type2_rep,
                               const std::vector<int>& pool1,
                               const std::vector<int>& pool2,
                               const PaymentVector& pay) {
  if (pool1.empty() || pool2.empty()) {
    throw input_error("raise factor needs both chore pools nonempty");
  }
  auto best_ratio = [&](const std::vector<int>& pool) {
    Rational best = inst.cost(type2_rep, pool[0]) / pay[pool[0]];
    for (int j : pool) {
      const Rational r = inst.cost(type2_rep, j) / pay[j];
      if (r < best) best = r;
    }
    return best;
  };
  // Raising pool-1 payments by min1/min2 drags the cheapest pool-1 chore's
  // type-2 pain-per-buck down to the ratio type 2 already enjoys in pool 2.
  return best_ratio(pool1) / best_ratio(pool2);
}

namespace {

// RR(N1, M1) followed by RR(N2, M2), merged.
Allocation reallocate(const Instance& inst, const TwoTypePartition& part,
                      const std::vector<int>& pool1, const std::vector<int>& pool2) {
  const Allocation a1 = round_robin(inst, part.type1, pool1);
  const Allocation a2 = round_robin(inst, part.type2, pool2);
  Allocation merged(inst.n(), inst.m());
  for (int j : pool1) merged.owner[j] = a1.owner[j];
  for (int j : pool2) merged.owner[j] = a2.owner[j];
  return merged;
}

}  // namespace

TwoTypeResult solve_two_type(const Instance& inst) {
  inst.validate();
  if (!inst.all_positive()) {
    throw input_error("two-type solver requires strictly positive costs; "
                      "split off zero-cost chores first");
  }

  TwoTypeResult res;
  res.partition = two_type_partition(inst);
  const int rep1 = res.partition.type1[0];
  const int rep2 = res.partition.type2[0];
  const int m = inst.m();

  res.pay.resize(m);
  for (int j = 0; j < m; ++j) res.pay[j] = inst.cost(rep1, j);
  std::vector<int> pool1(m), pool2;
  for (int j = 0; j < m; ++j) pool1[j] = j;
  res.alloc = reallocate(inst, res.partition, pool1, pool2);

  auto side_extreme = [&](const std::vector<int>& side, bool less_one) {
    Rational extreme;
    bool first = true;
    for (int i : side) {
      const Rational v = less_one ? earning_less_one(res.alloc, res.pay, i)
                                  : earning(res.alloc, res.pay, i);
      if (first || (less_one ? v > extreme : v < extreme)) extreme = v;
      first = false;
    }
    return extreme;
  };

  const long cap = 2L * m + 2;
  while (!is_pef1(res.alloc, res.pay).holds) {
    if (++res.trace.iterations > cap) {
      throw defect_error("two-type solver exceeded its 2m+2 iteration cap");
    }

    const Rational alpha2 = mpb_ratio(inst, res.pay, rep2);
    int moved = -1;
    for (int j : pool1) {
      if (inst.cost(rep2, j) / res.pay[j] == alpha2) {
        moved = j;
        break;
      }
    }

    TwoTypeEvent ev;
    if (moved >= 0) {
      ev.kind = TwoTypeEvent::Kind::transfer;
      ev.chore = moved;
      ev.pre_b1_less_one = side_extreme(res.partition.type1, true);
      ev.pre_l2_earning = side_extreme(res.partition.type2, false);
      pool1.erase(std::find(pool1.begin(), pool1.end(), moved));
      pool2.insert(std::lower_bound(pool2.begin(), pool2.end(), moved), moved);
      res.alloc = reallocate(inst, res.partition, pool1, pool2);
      ev.post_l1_earning = side_extreme(res.partition.type1, false);
      ev.post_b2_less_one = side_extreme(res.partition.type2, true);
      ++res.trace.transfers;
    } else {
      if (pool1.empty()) {
        // With every chore on the type-2 side, type 1 earns nothing and
        // cannot be envied, so pEF1 should already have held.
        throw defect_error("no pool-1 chore to move or raise while not pEF1");
      }
      ev.kind = TwoTypeEvent::Kind::raise;
      ev.factor = raise_factor_two_type(inst, rep2, pool1, pool2, res.pay);
      if (ev.factor <= 1) {
        throw defect_error("payment raise factor must exceed 1");
      }
      for (int j : pool1) res.pay[j] *= ev.factor;
      ++res.trace.raises;
    }
    res.trace.events.push_back(std::move(ev));

    const FairnessReport ce = is_ce(inst, res.alloc, res.pay);
    if (!ce.holds) {
      throw defect_error("competitive equilibrium broke after an event: " +
                         ce.witness->detail);
    }
  }
  return res;
}

PaymentVector proportional_payments(const Instance& inst, int agent) {
  PaymentVector pay(inst.m());
  for (int j = 0; j < inst.m(); ++j) {
    if (inst.cost(agent, j) <= 0) {
      throw input_error("proportional payments need strictly positive costs");
    }
    pay[j] = inst.cost(agent, j);
  }
  return pay;
}

}  // namespace choreq
