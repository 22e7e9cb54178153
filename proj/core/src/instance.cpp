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

#include "choreq/instance.hpp"

#include <algorithm>
#include <set>

#include "choreq/errors.hpp"

namespace choreq {

Instance Instance::from_costs(std::vector<std::vector<Rational>> costs) {
  Instance inst;
  inst.costs = std::move(costs);
  const int n = static_cast<int>(inst.costs.size());
  const int m = n == 0 ? 0 : static_cast<int>(inst.costs[0].size());
  for (int i = 0; i < n; ++i) inst.agents.push_back("a" + std::to_string(i + 1));
  for (int j = 0; j < m; ++j) inst.chores.push_back("j" + std::to_string(j + 1));
  inst.validate();
  return inst;
}

void Instance::validate() const {
  if (agents.empty()) throw input_error("instance needs at least one agent");
  if (costs.size() != agents.size()) {
    throw input_error("cost matrix has " + std::to_string(costs.size()) +
                      " rows for " + std::to_string(agents.size()) + " agents");
  }
  for (int i = 0; i < n(); ++i) {
    if (costs[i].size() != chores.size()) {
      throw input_error("cost row " + std::to_string(i) + " has " +
                        std::to_string(costs[i].size()) + " entries for " +
                        std::to_string(chores.size()) + " chores");
    }
    for (int j = 0; j < m(); ++j) {
      if (costs[i][j] < 0) {
        throw input_error("negative cost at agent " + std::to_string(i) +
                          ", chore " + std::to_string(j));
      }
    }
  }
  const std::set<std::string> agent_ids(agents.begin(), agents.end());
  if (static_cast<int>(agent_ids.size()) != n()) throw input_error("duplicate agent id");
  const std::set<std::string> chore_ids(chores.begin(), chores.end());
  if (static_cast<int>(chore_ids.size()) != m()) throw input_error("duplicate chore id");
}

bool Instance::all_positive() const {
  for (const auto& row : costs) {
    for (const auto& c : row) {
      if (c == 0) return false;
    }
  }
  return true;
}

InstanceClass classify(const Instance& inst) {
  InstanceClass cls;
  cls.three_agent = inst.n() == 3;

  std::set<std::vector<Rational>> rows(inst.costs.begin(), inst.costs.end());
  cls.identical = rows.size() == 1;
  cls.two_type = rows.size() == 2;

  std::set<Rational> values;
  for (const auto& row : inst.costs) values.insert(row.begin(), row.end());
  if (values.size() <= 2 && (values.empty() || *values.begin() > 0)) {
    cls.bivalued = true;
    if (values.empty()) {
      cls.bivalued_low = cls.bivalued_high = 1;  // no chores: vacuous
    } else {
      cls.bivalued_low = *values.begin();
      cls.bivalued_high = *values.rbegin();
    }
  }

  cls.two_ary = true;
  cls.ary_low.resize(inst.n());
  cls.ary_high.resize(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    std::set<Rational> row_values(inst.costs[i].begin(), inst.costs[i].end());
    if (row_values.size() > 2 || (!row_values.empty() && *row_values.begin() <= 0)) {
      cls.two_ary = false;
      cls.ary_low.clear();
      cls.ary_high.clear();
      break;
    }
    if (row_values.empty()) {
      cls.ary_low[i] = cls.ary_high[i] = 1;  // no chores: vacuous
    } else {
      cls.ary_low[i] = *row_values.begin();
      cls.ary_high[i] = *row_values.rbegin();
    }
  }
  return cls;
}

ZeroChoreSplit preprocess_zero_chores(const Instance& inst) {
  ZeroChoreSplit split;
  split.reduced.agents = inst.agents;
  split.reduced.costs.resize(inst.n());
  for (int j = 0; j < inst.m(); ++j) {
    int free_agent = -1;
    for (int i = 0; i < inst.n() && free_agent < 0; ++i) {
      if (inst.cost(i, j) == 0) free_agent = i;
    }
    if (free_agent >= 0) {
      split.preassigned.emplace_back(j, free_agent);
    } else {
      split.kept.push_back(j);
      split.reduced.chores.push_back(inst.chores[j]);
      for (int i = 0; i < inst.n(); ++i) {
        split.reduced.costs[i].push_back(inst.cost(i, j));
      }
    }
  }
  return split;
}

}  // namespace choreq
