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

#include <vector>

#include "choreq/certify.hpp"
#include "choreq/errors.hpp"
#include "choreq/generate.hpp"
#include "choreq/market.hpp"
#include "doctest.h"
#include "helpers.hpp"

namespace choreq {
namespace {

using testing::make;
using testing::owners;
using testing::random_ce;

TEST_CASE("envy-freeness") {
  const Instance inst = make({{1, 2}, {2, 1}});
  CHECK(is_ef(inst, owners(2, {0, 1})).holds);  // each takes its cheap chore
  const FairnessReport swapped = is_ef(inst, owners(2, {1, 0}));
  CHECK_FALSE(swapped.holds);  // each stuck with its expensive chore
  REQUIRE(swapped.witness.has_value());
  CHECK(swapped.witness->agent == 0);
  CHECK(swapped.witness->other == 1);
}

TEST_CASE("EF1 forgives exactly the worst owned chore") {
  const Instance inst = make({{3, 1, 1}, {1, 3, 3}});
  // Agent 0 holds everything: 5 - 3 = 2 > 0 against the empty bundle.
  CHECK_FALSE(is_ef1(inst, owners(2, {0, 0, 0})).holds);
  // {j2,j3} vs {j1}: 2 - 1 = 1 <= 3.  Holds.
  CHECK(is_ef1(inst, owners(2, {1, 0, 0})).holds);
  // Handing everything to agent 1 fails (7 - 3 = 4 > 0), and the witness is
  // the overloaded holder: an empty bundle never envies.
  const FairnessReport all_to_one = is_ef1(inst, owners(2, {1, 1, 1}));
  CHECK_FALSE(all_to_one.holds);
  REQUIRE(all_to_one.witness.has_value());
  CHECK(all_to_one.witness->agent == 1);
  CHECK(all_to_one.witness->other == 0);
}

TEST_CASE("EFX holds at exact equality after the cheapest removal") {
  // x_a = {j1 (1), j2 (2)}, x_b = {j3}, d_a(j3) = 2: 3 - 1 = 2 <= 2.
  const Instance inst = make({{1, 2, 2}, {1, 1, 1}});
  const Allocation a = owners(2, {0, 0, 1});
  CHECK(is_efx(inst, a).holds);
  CHECK(is_ef1(inst, a).holds);
  CHECK_FALSE(is_ef(inst, a).holds);  // 3 > 2 without any removal
}

TEST_CASE("EFX strictly between EF1 and EF") {
  // x_a = {j1 (1), j2 (3)}, x_b = {j3}, d_a(j3) = 2:
  // EF1 drops the 3: 1 <= 2 holds; EFX drops the 1: 3 > 2 fails.
  const Instance inst = make({{1, 3, 2}, {1, 1, 1}});
  const Allocation a = owners(2, {0, 0, 1});
  CHECK(is_ef1(inst, a).holds);
  const FairnessReport efx = is_efx(inst, a);
  CHECK_FALSE(efx.holds);
  REQUIRE(efx.witness.has_value());
  CHECK(efx.witness->agent == 0);
}

TEST_CASE("EFX via cheapest-removal equals EFX via every-removal") {
  SplitMix64 rng(2024);
  int failures_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.range(2, 4));
    const int m = static_cast<int>(rng.range(0, 6));
    std::vector<std::vector<Rational>> costs(n, std::vector<Rational>(m));
    for (auto& row : costs) {
      for (auto& c : row) c = rng.range(0, 5);  // zeros included on purpose
    }
    const Instance inst = Instance::from_costs(std::move(costs));
    Allocation alloc(n, m);
    for (int j = 0; j < m; ++j) alloc.owner[j] = static_cast<int>(rng.below(n));

    // Reference: quantify over every removable chore.
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int h = 0; h < n && ok; ++h) {
        if (h == i) continue;
        const Rational theirs = set_disutility(inst, i, alloc.bundle(h));
        for (int j : alloc.bundle(i)) {
          if (bundle_disutility(inst, alloc, i) - inst.cost(i, j) > theirs) {
            ok = false;
            break;
          }
        }
      }
    }
    CAPTURE(trial);
    CHECK(is_efx(inst, alloc).holds == ok);
    if (!ok) ++failures_seen;
  }
  CHECK(failures_seen > 50);  // the comparison must exercise both outcomes
}

TEST_CASE("competitive equilibrium certification") {
  const Instance inst = make({{1, 2}, {1, 2}});
  SUBCASE("payments proportional to shared costs support any allocation") {
    CHECK(is_ce(inst, owners(2, {0, 1}), {1, 2}).holds);
    CHECK(is_ce(inst, owners(2, {1, 0}), {1, 2}).holds);
  }
  SUBCASE("an overpriced owned chore breaks the equilibrium") {
    const FairnessReport rep = is_ce(inst, owners(2, {0, 1}), {1, 1});
    CHECK_FALSE(rep.holds);  // agent 2 does j2 at ratio 2 while j1 offers 1
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->agent == 1);
    CHECK(rep.witness->chore == 1);
  }
  SUBCASE("non-positive payments and unallocated chores are rejected") {
    CHECK_FALSE(is_ce(inst, owners(2, {0, 1}), {0, 2}).holds);
    CHECK_FALSE(is_ce(inst, owners(2, {0, -1}), {1, 2}).holds);
  }
  SUBCASE("a chore-less market is vacuously in equilibrium") {
    CHECK(is_ce(make({{}, {}}), Allocation(2, 0), {}).holds);
  }
  SUBCASE("shape mismatches are input errors") {
    CHECK_THROWS_AS(is_ce(inst, owners(2, {0, 1}), {1}), input_error);
    CHECK_THROWS_AS(is_ce(inst, owners(2, {0}), {1, 2}), input_error);
  }
}

TEST_CASE("payment-EF1 looks only at payments") {
  SUBCASE("holds when every earning minus its top payment stays below others") {
    CHECK(is_pef1(owners(2, {0, 1, 1}), {5, 1, 1}).holds);
  }
  SUBCASE("fails against an empty earner") {
    const FairnessReport rep = is_pef1(owners(2, {0, 0}), {3, 3});
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->agent == 0);
    CHECK(rep.witness->other == 1);
  }
}

TEST_CASE("big and least earner selection break ties toward low indices") {
  const Allocation a = owners(3, {0, 1, 2});
  CHECK(select_big_earner(a, {1, 1, 1}) == 0);   // all p_{-1} equal 0
  CHECK(select_least_earner(a, {1, 1, 1}) == 0);
  CHECK(select_big_earner(owners(3, {1, 1, 2}), {2, 3, 4}) == 1);
  CHECK(select_least_earner(owners(3, {1, 1, 2}), {2, 3, 4}) == 0);
}

TEST_CASE("balance checks") {
  const Instance bv = make({{1, 5, 5}, {5, 1, 5}});
  SUBCASE("total sizes") {
    CHECK(is_balanced(bv, owners(2, {0, 1, 0}), BalanceMode::total));
    CHECK_FALSE(is_balanced(bv, owners(2, {0, 0, 0}), BalanceMode::total));
  }
  SUBCASE("per-value counts need bivalued normal form") {
    // a: {j1 (1), j3 (5)}, b: {j2 (1)} -> one-chores 1/1, k-chores 1/0.
    const Allocation a = owners(2, {0, 1, 0});
    CHECK(is_balanced(bv, a, BalanceMode::one_chores));
    CHECK(is_balanced(bv, a, BalanceMode::k_chores));
    CHECK(is_balanced(bv, a, BalanceMode::fully));
    // a: {j1 (1), j2' (5), j3 (5)} unbalanced in k-chores once b holds none.
    CHECK_FALSE(is_balanced(make({{1, 5, 5, 5}, {5, 1, 5, 5}}),
                            owners(2, {0, 1, 0, 0}), BalanceMode::k_chores));
    CHECK_THROWS_AS(is_balanced(make({{2, 5}, {5, 2}}), owners(2, {0, 1}),
                                BalanceMode::one_chores),
                    input_error);
  }
  SUBCASE("all-ones matrix has no k-chores to balance") {
    CHECK(is_balanced(make({{1, 1}, {1, 1}}), owners(2, {0, 0}),
                      BalanceMode::k_chores));
  }
}

TEST_CASE("cost-minimizing placement") {
  const Instance inst = make({{1, 9}, {9, 1}});
  CHECK(is_cost_minimizing(inst, owners(2, {0, 1})));
  CHECK_FALSE(is_cost_minimizing(inst, owners(2, {1, 1})));
  CHECK(is_cost_minimizing(inst, owners(2, {0, -1})));  // unassigned not judged
}

// On a competitive equilibrium, payment-EF1 implies EF1, and payment-EF1
// holds exactly when the big earner does not payment-envy the least earner.
// Exercised on randomly constructed equilibria with skewed earnings.
TEST_CASE("pEF1 implies EF1 on equilibria; big-vs-least earner test is exact") {
  SplitMix64 rng(99);
  int pef1_true = 0, pef1_false = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.range(2, 5));
    const int m = static_cast<int>(rng.range(1, 8));
    const testing::RandomCe ce = random_ce(rng, n, m, 10);
    CAPTURE(trial);
    REQUIRE(is_ce(ce.inst, ce.alloc, ce.pay).holds);

    const bool pef1 = is_pef1(ce.alloc, ce.pay).holds;
    if (pef1) {
      ++pef1_true;
      CHECK(is_ef1(ce.inst, ce.alloc).holds);
    } else {
      ++pef1_false;
    }

    const int be = select_big_earner(ce.alloc, ce.pay);
    const int le = select_least_earner(ce.alloc, ce.pay);
    const bool be_vs_le =
        earning_less_one(ce.alloc, ce.pay, be) <= earning(ce.alloc, ce.pay, le);
    CHECK(pef1 == be_vs_le);
  }
  CHECK(pef1_true > 20);
  CHECK(pef1_false > 20);
}

}  // namespace
}  // namespace choreq
