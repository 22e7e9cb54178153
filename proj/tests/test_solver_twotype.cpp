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

#include <algorithm>
#include <numeric>
#include <vector>

#include "choreq/certify.hpp"
#include "choreq/errors.hpp"
#include "choreq/generate.hpp"
#include "choreq/oracle.hpp"
#include "choreq/solver_twotype.hpp"
#include "doctest.h"
#include "helpers.hpp"

namespace choreq {
namespace {

using testing::make;
using testing::owners;

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Replays the trace from the initial state (all chores on the type-1 side,
// payments equal to type 1's costs) and re-checks every recorded snapshot,
// the equilibrium, the within-side no-envy invariant, and the regression
// that a transfer leaving the big earner on side 2 and the least earner on
// side 1 must already be payment-EF1.
void check_two_type_trace(const Instance& inst, const TwoTypeResult& res) {
  const int m = inst.m();
  const int rep1 = res.partition.type1[0];
  const int rep2 = res.partition.type2[0];

  std::vector<int> pool1(m), pool2;
  std::iota(pool1.begin(), pool1.end(), 0);
  PaymentVector pay(m);
  for (int j = 0; j < m; ++j) pay[j] = inst.cost(rep1, j);

  auto reallocate = [&]() {
    const Allocation a1 = round_robin(inst, res.partition.type1, pool1);
    const Allocation a2 = round_robin(inst, res.partition.type2, pool2);
    Allocation merged(inst.n(), m);
    for (int j : pool1) merged.owner[j] = a1.owner[j];
    for (int j : pool2) merged.owner[j] = a2.owner[j];
    return merged;
  };
  auto big_less_one = [&](const Allocation& alloc, const std::vector<int>& side) {
    Rational best = earning_less_one(alloc, pay, side[0]);
    for (int i : side) best = std::max(best, earning_less_one(alloc, pay, i));
    return best;
  };
  auto least_earning = [&](const Allocation& alloc, const std::vector<int>& side) {
    Rational best = earning(alloc, pay, side[0]);
    for (int i : side) best = std::min(best, earning(alloc, pay, i));
    return best;
  };
  auto no_envy_within_sides = [&](const Allocation& alloc) {
    for (const std::vector<int>* side : {&res.partition.type1, &res.partition.type2}) {
      for (int i : *side) {
        for (int h : *side) {
          if (i != h) CHECK(earning_less_one(alloc, pay, i) <= earning(alloc, pay, h));
        }
      }
    }
  };

  Allocation alloc = reallocate();
  CHECK(is_ce(inst, alloc, pay).holds);
  no_envy_within_sides(alloc);

  for (std::size_t t = 0; t < res.trace.events.size(); ++t) {
    CAPTURE(t);
    const TwoTypeEvent& ev = res.trace.events[t];
    CHECK_FALSE(is_pef1(alloc, pay).holds);  // the loop ran only while needed

    if (ev.kind == TwoTypeEvent::Kind::transfer) {
      CHECK(contains(pool1, ev.chore));
      CHECK(ev.pre_b1_less_one == big_less_one(alloc, res.partition.type1));
      CHECK(ev.pre_l2_earning == least_earning(alloc, res.partition.type2));
      // The moved chore is minimum pain-per-buck for the receiving side.
      CHECK(inst.cost(rep2, ev.chore) / pay[ev.chore] == mpb_ratio(inst, pay, rep2));

      pool1.erase(std::find(pool1.begin(), pool1.end(), ev.chore));
      pool2.insert(std::lower_bound(pool2.begin(), pool2.end(), ev.chore), ev.chore);
      alloc = reallocate();

      CHECK(ev.post_l1_earning == least_earning(alloc, res.partition.type1));
      CHECK(ev.post_b2_less_one == big_less_one(alloc, res.partition.type2));

      // If the big earner ended up on side 2 while the least earner sits on
      // side 1, the move cannot have overshot: payment-EF1 must already hold.
      const int be = select_big_earner(alloc, pay);
      const int le = select_least_earner(alloc, pay);
      if (contains(res.partition.type2, be) && contains(res.partition.type1, le)) {
        CHECK(is_pef1(alloc, pay).holds);
      }
    } else {
      CHECK(ev.factor ==
            raise_factor_two_type(inst, rep2, pool1, pool2, pay));
      CHECK(ev.factor > 1);
      for (int j : pool1) pay[j] *= ev.factor;
    }

    CHECK(is_ce(inst, alloc, pay).holds);
    no_envy_within_sides(alloc);
  }

  CHECK(alloc == res.alloc);
  CHECK(pay == res.pay);
  CHECK(is_pef1(alloc, pay).holds);
}

TEST_CASE("agent partition by cost row") {
  const TwoTypePartition part = two_type_partition(make({{1, 2}, {1, 2}, {3, 4}}));
  CHECK(part.type1 == std::vector<int>{0, 1});
  CHECK(part.type2 == std::vector<int>{2});
  CHECK_THROWS_AS(two_type_partition(make({{1, 2}, {1, 2}})), input_error);
  CHECK_THROWS_AS(two_type_partition(make({{1}, {2}, {3}})), input_error);
}

TEST_CASE("round robin picks cheapest remaining chores in cyclic order") {
  const Instance b1 = make({{1, 1, 1}, {5, 1, 5}, {1, 5, 5}});
  std::vector<int> all = {0, 1, 2};
  CHECK(round_robin(b1, {0, 1, 2}, all).owner == std::vector<int>{0, 1, 2});

  const Instance inst = make({{1, 2, 3}, {3, 2, 1}});
  CHECK(round_robin(inst, {0, 1}, {0, 1, 2}).owner == std::vector<int>{0, 0, 1});
  CHECK(round_robin(inst, {1, 0}, {1}).owner == std::vector<int>{-1, 1, -1});
}

TEST_CASE("for identical agents the last picker is the big earner") {
  const Instance inst = make(
      {{2, 3, 5, 7, 11}, {2, 3, 5, 7, 11}, {2, 3, 5, 7, 11}});
  std::vector<int> all(5);
  std::iota(all.begin(), all.end(), 0);
  const Allocation alloc = round_robin(inst, {0, 1, 2}, all);
  const PaymentVector pay = proportional_payments(inst, 0);
  CHECK(select_big_earner(alloc, pay) == 1);    // picked the last (11) chore
  CHECK(select_least_earner(alloc, pay) == 2);  // next in the pick cycle
  CHECK(is_ce(inst, alloc, pay).holds);
  CHECK(is_pef1(alloc, pay).holds);
}

TEST_CASE("payment raise factor closed form and preconditions") {
  const Instance inst = make({{1, 1}, {2, 6}});
  CHECK(raise_factor_two_type(inst, 1, {1}, {0}, {1, 1}) == 3);
  CHECK_THROWS_AS(raise_factor_two_type(inst, 1, {}, {0}, {1, 1}), input_error);
  CHECK_THROWS_AS(raise_factor_two_type(inst, 1, {1}, {}, {1, 1}), input_error);
}

TEST_CASE("proportional payments certify any allocation of identical agents") {
  const Instance inst = make({{2, 4, 6}, {2, 4, 6}});
  const PaymentVector pay = proportional_payments(inst, 0);
  CHECK(pay == PaymentVector{2, 4, 6});
  CHECK(is_ce(inst, owners(2, {0, 1, 0}), pay).holds);
  CHECK(is_ce(inst, owners(2, {1, 1, 1}), pay).holds);
  CHECK_THROWS_AS(proportional_payments(make({{0, 1}, {0, 1}}), 0), input_error);
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(solve_two_type(make({{1, 2}, {1, 2}})), input_error);  // one type
  CHECK_THROWS_AS(solve_two_type(make({{1}, {2}, {3}})), input_error);   // three
  CHECK_THROWS_AS(solve_two_type(make({{0, 1}, {1, 1}})), input_error);  // zero
}

TEST_CASE("frozen two-chore run: one transfer") {
  const Instance inst = make({{1, 1}, {2, 2}});
  const TwoTypeResult res = solve_two_type(inst);
  CHECK(res.alloc.owner == std::vector<int>{1, 0});
  CHECK(res.trace.transfers == 1);
  CHECK(res.trace.raises == 0);
  CHECK(res.trace.iterations == 1);
  check_two_type_trace(inst, res);
}

TEST_CASE("frozen run with a payment raise") {
  // Type 2 likes only j4; after it moves, nothing in the pool is attractive
  // until the pool's payments rise by the ratio gap (factor 6).
  const Instance inst = make({{1, 1, 1, 1}, {6, 6, 6, 1}});
  const TwoTypeResult res = solve_two_type(inst);
  CHECK(res.alloc.owner == std::vector<int>{1, 0, 0, 1});
  CHECK(res.trace.transfers == 2);
  CHECK(res.trace.raises == 1);
  CHECK(res.pay == PaymentVector{6, 6, 6, 1});
  check_two_type_trace(inst, res);
}

TEST_CASE("random sweep: payment-EF1 equilibrium, hence EF1 + fPO") {
  SplitMix64 rng(52);
  int raises_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    GenParams p;
    p.n = static_cast<int>(rng.range(2, 6));
    p.m = static_cast<int>(rng.range(1, 8));
    p.seed = rng.next();
    const Instance inst = generate(InstanceKind::two_type, p);

    CAPTURE(trial);
    const TwoTypeResult res = solve_two_type(inst);
    CHECK(res.alloc.complete());
    CHECK(is_pef1(res.alloc, res.pay).holds);
    CHECK(is_ce(inst, res.alloc, res.pay).holds);
    CHECK(is_ef1(inst, res.alloc).holds);
    CHECK(is_fpo_lp(inst, res.alloc));
    CHECK(res.trace.transfers <= p.m);
    CHECK(res.trace.iterations <= 2 * p.m + 2);
    raises_seen += res.trace.raises;

    check_two_type_trace(inst, res);
  }
  CHECK(raises_seen > 0);  // the sweep must exercise the raise branch
}

}  // namespace
}  // namespace choreq
