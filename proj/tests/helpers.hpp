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

#include <utility>
#include <vector>

#include "choreq/generate.hpp"
#include "choreq/instance.hpp"
#include "choreq/market.hpp"

namespace choreq::testing {

// Instance from integer literals.
inline Instance make(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Rational>> costs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    costs[i].assign(rows[i].begin(), rows[i].end());
  }
  return Instance::from_costs(std::move(costs));
}

// Allocation from an explicit owner vector.
inline Allocation owners(int n, std::vector<int> owner) {
  Allocation a(n, static_cast<int>(owner.size()));
  a.owner = std::move(owner);
  return a;
}

// A randomly constructed competitive equilibrium: draw a target ratio
// alpha_i > 0 per agent, price every chore at p_j = min_i d_i(j)/alpha_i and
// hand it to one of the agents attaining that minimum.  Then d_i(j)/p_j >=
// alpha_i everywhere, with equality exactly at the argmin agents, so every
// owner performs only minimum-pain-per-buck chores: a genuine equilibrium
// with otherwise arbitrary (often unbalanced) earnings.
struct RandomCe {
  Instance inst;
  Allocation alloc;
  PaymentVector pay;
};

inline RandomCe random_ce(SplitMix64& rng, int n, int m, long vmax) {
  std::vector<std::vector<Rational>> costs(n, std::vector<Rational>(m));
  for (auto& row : costs) {
    for (auto& c : row) c = rng.range(1, vmax);
  }
  RandomCe ce;
  ce.inst = Instance::from_costs(std::move(costs));

  std::vector<Rational> alpha(n);
  for (auto& a : alpha) {
    a = Rational(rng.range(1, 9)) / Rational(rng.range(1, 9));
  }

  ce.alloc = Allocation(n, m);
  ce.pay.resize(m);
  for (int j = 0; j < m; ++j) {
    Rational best = 0;
    std::vector<int> argmin;
    for (int i = 0; i < n; ++i) {
      const Rational q = ce.inst.cost(i, j) / alpha[i];
      if (argmin.empty() || q < best) {
        best = q;
        argmin = {i};
      } else if (q == best) {
        argmin.push_back(i);
      }
    }
    ce.pay[j] = best;
    ce.alloc.owner[j] = argmin[rng.below(argmin.size())];
  }
  return ce;
}

}  // namespace choreq::testing
