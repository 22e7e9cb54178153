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
#include "choreq/instance.hpp"
#include "choreq/market.hpp"
#include "choreq/oracle.hpp"
#include "choreq/rational.hpp"
#include "choreq/simplex.hpp"
#include "doctest.h"
#include "helpers.hpp"

namespace choreq {
namespace {

using testing::make;
using testing::owners;

TEST_CASE("rational parsing accepts integers and fractions") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("14/6") == Rational(7) / 3);
  CHECK(parse_rational("0/5") == 0);
  CHECK(parse_rational("-9/3") == -3);
}

TEST_CASE("rational parsing rejects malformed text") {
  for (const char* bad : {"", "a", "1.5", " 7", "7 ", "7/", "/3", "7/0",
                          "3/-2", "--3", "1e3", "7 /3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), input_error);
  }
}

TEST_CASE("rational formatting is canonical") {
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(format_rational(Rational(-7)) == "-7");
  CHECK(format_rational(Rational(7) / 3) == "7/3");
  CHECK(format_rational(Rational(-7) / 3) == "-7/3");
  CHECK(format_rational(Rational(14) / 6) == "7/3");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("instance builder assigns default ids and validates") {
  const Instance inst = make({{1, 2, 3}, {4, 5, 6}});
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 3);
  CHECK(inst.agents == std::vector<std::string>{"a1", "a2"});
  CHECK(inst.chores == std::vector<std::string>{"j1", "j2", "j3"});
  CHECK(inst.cost(1, 2) == 6);
  CHECK(inst.all_positive());
  CHECK_FALSE(make({{0, 2}, {3, 4}}).all_positive());
}

TEST_CASE("instance validation rejects malformed input") {
  CHECK_THROWS_AS(make({{1}, {1, 2}}), input_error);   // ragged rows
  CHECK_THROWS_AS(make({{1, -2}}), input_error);       // negative cost

  Instance dup = make({{1, 2}, {3, 4}});
  dup.agents[1] = dup.agents[0];
  CHECK_THROWS_AS(dup.validate(), input_error);

  Instance dup2 = make({{1, 2}, {3, 4}});
  dup2.chores[1] = dup2.chores[0];
  CHECK_THROWS_AS(dup2.validate(), input_error);

  Instance no_agents;
  CHECK_THROWS_AS(no_agents.validate(), input_error);
}

TEST_CASE("classification flags") {
  SUBCASE("two distinct rows, four distinct values") {
    const InstanceClass cls = classify(make({{1, 2}, {3, 4}}));
    CHECK_FALSE(cls.three_agent);
    CHECK(cls.two_type);
    CHECK_FALSE(cls.identical);
    CHECK_FALSE(cls.bivalued);
    CHECK(cls.two_ary);
    CHECK(cls.ary_low == std::vector<Rational>{1, 3});
    CHECK(cls.ary_high == std::vector<Rational>{2, 4});
  }
  SUBCASE("bivalued with low 1, high 5") {
    const InstanceClass cls = classify(make({{1, 5}, {5, 1}}));
    CHECK(cls.bivalued);
    CHECK(cls.bivalued_low == 1);
    CHECK(cls.bivalued_high == 5);
    CHECK(cls.two_type);
    CHECK(cls.two_ary);
  }
  SUBCASE("constant matrix is identical and degenerate-bivalued") {
    const InstanceClass cls = classify(make({{2, 2}, {2, 2}}));
    CHECK(cls.identical);
    CHECK_FALSE(cls.two_type);
    CHECK(cls.bivalued);
    CHECK(cls.bivalued_low == 2);
    CHECK(cls.bivalued_high == 2);
  }
  SUBCASE("three distinct values in one row break 2-ary") {
    const InstanceClass cls = classify(make({{1, 2, 3}}));
    CHECK(cls.identical);  // a single row is trivially one type
    CHECK_FALSE(cls.two_ary);
    CHECK_FALSE(cls.bivalued);
  }
  SUBCASE("zero entries disqualify bivalued and 2-ary") {
    const InstanceClass cls = classify(make({{0, 1}, {1, 1}}));
    CHECK_FALSE(cls.bivalued);
    CHECK_FALSE(cls.two_ary);
  }
  SUBCASE("three agents") {
    CHECK(classify(make({{1}, {1}, {1}})).three_agent);
  }
}

TEST_CASE("allocation bundles and completeness") {
  const Allocation a = owners(2, {1, 0, 1, -1});
  CHECK_FALSE(a.complete());
  CHECK(a.bundle(0) == std::vector<int>{1});
  CHECK(a.bundle(1) == std::vector<int>{0, 2});
  CHECK(a.bundle_size(0) == 1);
  CHECK(a.bundles().size() == 2);

  const Allocation all = Allocation::all_to(3, 4, 1);
  CHECK(all.complete());
  CHECK(all.bundle(1) == std::vector<int>{0, 1, 2, 3});
  CHECK(all.bundle(0).empty());
}

TEST_CASE("bundle costs and one-removal costs") {
  const Instance inst = make({{1, 2, 3}, {4, 5, 6}});
  const Allocation a = owners(2, {0, 0, 0});
  CHECK(bundle_disutility(inst, a, 0) == 6);
  CHECK(bundle_disutility(inst, a, 1) == 0);
  CHECK(disutility_less_one(inst, a, 0) == 3);  // forgives the cost-3 chore
  CHECK(disutility_less_one(inst, a, 1) == 0);  // empty bundle
  CHECK(set_disutility(inst, 1, {0, 2}) == 10);
  CHECK(set_disutility(inst, 0, {}) == 0);
}

TEST_CASE("earnings and one-removal earnings") {
  const Allocation a = owners(2, {0, 0, 1});
  const PaymentVector pay = {2, 3, 5};
  CHECK(earning(a, pay, 0) == 5);
  CHECK(earning_less_one(a, pay, 0) == 2);  // forgives the 3-payment
  CHECK(earning(a, pay, 1) == 5);
  CHECK(earning_less_one(a, pay, 1) == 0);  // single chore fully forgiven
}

TEST_CASE("minimum pain-per-buck ratio and set") {
  const Instance inst = make({{2, 4, 8}});
  const PaymentVector pay = {1, 2, 2};
  CHECK(mpb_ratio(inst, pay, 0) == 2);
  CHECK(mpb_set(inst, pay, 0) == std::vector<int>{0, 1});

  const Instance empty = make({{}});
  CHECK_THROWS_AS(mpb_ratio(empty, PaymentVector{}, 0), input_error);
}

TEST_CASE("zero-cost chores are split off and merged verdicts survive") {
  SUBCASE("frozen split") {
    const Instance inst = make({{0, 2, 3}, {4, 0, 6}});
    const ZeroChoreSplit zs = preprocess_zero_chores(inst);
    CHECK(zs.preassigned ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(zs.kept == std::vector<int>{2});
    CHECK(zs.reduced.m() == 1);
    CHECK(zs.reduced.chores == std::vector<std::string>{"j3"});
    CHECK(zs.reduced.cost(0, 0) == 3);
    CHECK(zs.reduced.cost(1, 0) == 6);
    CHECK(zs.reduced.all_positive());
  }
  SUBCASE("no zeros, nothing changes") {
    const Instance inst = make({{1, 2}, {3, 4}});
    const ZeroChoreSplit zs = preprocess_zero_chores(inst);
    CHECK(zs.preassigned.empty());
    CHECK(zs.kept == std::vector<int>{0, 1});
  }

  SUBCASE("EF1 / PO / fPO on the remainder imply them on the merged whole") {
    SplitMix64 rng(404);
    int merged_checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int n = static_cast<int>(rng.range(2, 3));
      const int m = static_cast<int>(rng.range(2, 5));
      std::vector<std::vector<Rational>> costs(n, std::vector<Rational>(m));
      for (auto& row : costs) {
        for (auto& c : row) c = rng.range(0, 3);
      }
      const Instance inst = Instance::from_costs(std::move(costs));
      const ZeroChoreSplit zs = preprocess_zero_chores(inst);
      if (zs.preassigned.empty() || zs.reduced.m() == 0) continue;

      // Merge the first few EF1 allocations of the remainder and re-verify
      // the carried-over properties on the original instance.
      int taken = 0;
      enumerate_allocations(n, zs.reduced.m(), [&](const std::vector<int>& o) {
        Allocation reduced = owners(n, o);
        if (!is_ef1(zs.reduced, reduced).holds) return true;
        Allocation merged(n, inst.m());
        for (int r = 0; r < zs.reduced.m(); ++r) {
          merged.owner[zs.kept[r]] = reduced.owner[r];
        }
        for (const auto& [chore, agent] : zs.preassigned) {
          merged.owner[chore] = agent;
        }
        CHECK(is_ef1(inst, merged).holds);
        if (is_po_bruteforce(zs.reduced, reduced)) {
          CHECK(is_po_bruteforce(inst, merged));
        }
        if (is_fpo_lp(zs.reduced, reduced)) {
          CHECK(is_fpo_lp(inst, merged));
        }
        ++merged_checked;
        return ++taken < 3;
      });
    }
    CHECK(merged_checked > 30);  // the sweep must not be vacuous
  }

  SUBCASE("EFX does not survive handing the envier a free chore") {
    const Instance inst = make({{1, 1, 1, 0}, {1, 1, 1, 1}});
    const ZeroChoreSplit zs = preprocess_zero_chores(inst);
    REQUIRE(zs.kept == std::vector<int>{0, 1, 2});
    const Allocation reduced = owners(2, {0, 0, 1});
    CHECK(is_efx(zs.reduced, reduced).holds);
    const Allocation merged = owners(2, {0, 0, 1, 0});
    CHECK(is_ef1(inst, merged).holds);
    CHECK_FALSE(is_efx(inst, merged).holds);  // dropping j4 forgives nothing
  }
}

TEST_CASE("simplex solves, detects infeasibility and unboundedness") {
  SUBCASE("simple bounded minimum") {
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {-1, -1};
    lp.rows.push_back({{1, 1}, 1, LpProblem::Rel::le});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == -1);
    CHECK(sol.values[0] + sol.values[1] == 1);
  }
  SUBCASE("equality constraint with a rational optimum") {
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {1, 1};
    lp.rows.push_back({{2, 1}, 3, LpProblem::Rel::eq});
    lp.rows.push_back({{1, 0}, 1, LpProblem::Rel::le});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == 2);  // x = (1, 1)
    CHECK(2 * sol.values[0] + sol.values[1] == 3);
  }
  SUBCASE("infeasible equality") {
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {1, 1};
    lp.rows.push_back({{1, 1}, -1, LpProblem::Rel::eq});
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SUBCASE("unbounded objective") {
    LpProblem lp;
    lp.num_vars = 1;
    lp.objective = {-1};
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
  }
  SUBCASE("classic cycling instance terminates under Bland's rule") {
    // Degenerate pivots everywhere; a naive most-negative rule cycles here.
    LpProblem lp;
    lp.num_vars = 4;
    lp.objective = {Rational(-3) / 4, 150, Rational(-1) / 50, 6};
    lp.rows.push_back(
        {{Rational(1) / 4, -60, Rational(-1) / 25, 9}, 0, LpProblem::Rel::le});
    lp.rows.push_back(
        {{Rational(1) / 2, -90, Rational(-1) / 50, 3}, 0, LpProblem::Rel::le});
    lp.rows.push_back({{0, 0, 1, 0}, 1, LpProblem::Rel::le});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == Rational(-1) / 20);
  }
}

}  // namespace
}  // namespace choreq
