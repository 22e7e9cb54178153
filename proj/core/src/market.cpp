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

#include "choreq/market.hpp"

#include <algorithm>

#include "choreq/errors.hpp"

namespace choreq {

bool Allocation::complete() const {
  return std::all_of(owner.begin(), owner.end(),
                     [&](int o) { return o >= 0 && o < n_agents; });
}

std::vector<int> Allocation::bundle(int agent) const {
  std::vector<int> chores;
  for (int j = 0; j < m(); ++j) {
    if (owner[j] == agent) chores.push_back(j);
  }
  return chores;
}

std::vector<std::vector<int>> Allocation::bundles() const {
  std::vector<std::vector<int>> all(n_agents);
  for (int j = 0; j < m(); ++j) {
    if (owner[j] >= 0) all[owner[j]].push_back(j);
  }
  return all;
}

int Allocation::bundle_size(int agent) const {
  return static_cast<int>(
      std::count(owner.begin(), owner.end(), agent));
}

Allocation Allocation::all_to(int n, int m, int agent) {
  Allocation alloc(n, m);
  std::fill(alloc.owner.begin(), alloc.owner.end(), agent);
  return alloc;
}

Rational bundle_disutility(const Instance& inst, const Allocation& alloc, int agent) {
  Rational total = 0;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] == agent) total += inst.cost(agent, j);
  }
  return total;
}

Rational set_disutility(const Instance& inst, int agent, const std::vector<int>& chores) {
  Rational total = 0;
  for (int j : chores) total += inst.cost(agent, j);
  return total;
}

Rational disutility_less_one(const Instance& inst, const Allocation& alloc, int agent) {
  Rational total = 0, worst = 0;
  bool any = false;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] != agent) continue;
    total += inst.cost(agent, j);
    if (!any || inst.cost(agent, j) > worst) worst = inst.cost(agent, j);
    any = true;
  }
  return total - worst;
}

Rational earning(const Allocation& alloc, const PaymentVector& pay, int agent) {
  Rational total = 0;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] == agent) total += pay[j];
  }
  return total;
}

Rational earning_less_one(const Allocation& alloc, const PaymentVector& pay, int agent) {
  Rational total = 0, top = 0;
  bool any = false;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] != agent) continue;
    total += pay[j];
    if (!any || pay[j] > top) top = pay[j];
    any = true;
  }
  return total - top;
}

Rational mpb_ratio(const Instance& inst, const PaymentVector& pay, int agent) {
  if (inst.m() == 0) throw input_error("pain-per-buck ratio undefined without chores");
  Rational best;
  bool any = false;
  for (int j = 0; j < inst.m(); ++j) {
    Rational ratio = inst.cost(agent, j) / pay[j];
    if (!any || ratio < best) best = ratio;
    any = true;
  }
  return best;
}

std::vector<int> mpb_set(const Instance& inst, const PaymentVector& pay, int agent) {
  if (inst.m() == 0) return {};
  const Rational best = mpb_ratio(inst, pay, agent);
  std::vector<int> chores;
  for (int j = 0; j < inst.m(); ++j) {
    if (inst.cost(agent, j) / pay[j] == best) chores.push_back(j);
  }
  return chores;
}

}  // namespace choreq
