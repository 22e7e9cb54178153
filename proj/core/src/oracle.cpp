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

#include "choreq/oracle.hpp"

#include <cstdlib>
#include <string>

#include "choreq/errors.hpp"

namespace choreq {

std::uint64_t enumeration_limit() {
  const char* env = std::getenv("CHOREQ_ENUM_LIMIT");
  if (env == nullptr || *env == '\0') return 10u * 1000 * 1000;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw input_error(std::string("CHOREQ_ENUM_LIMIT is not a number: ") + env);
  }
  return parsed;
}

bool enumeration_feasible(int n, int m, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    if (total > limit / static_cast<std::uint64_t>(n)) return false;
    total *= static_cast<std::uint64_t>(n);
  }
  return total <= limit;
}

void enumerate_allocations(int n, int m,
                           const std::function<bool(const std::vector<int>&)>& visit) {
  if (n < 1) throw input_error("enumeration needs at least one agent");
  if (!enumeration_feasible(n, m)) {
    throw input_error("n^m exceeds the enumeration budget (CHOREQ_ENUM_LIMIT)");
  }
  std::vector<int> owner(m, 0);
  for (;;) {
    if (!visit(owner)) return;
    int j = m - 1;
    while (j >= 0 && owner[j] == n - 1) owner[j--] = 0;
    if (j < 0) return;
    ++owner[j];
  }
}

namespace {

std::vector<Rational> disutility_vector(const Instance& inst,
                                        const std::vector<int>& owner) {
  std::vector<Rational> d(inst.n(), Rational(0));
  for (int j = 0; j < inst.m(); ++j) d[owner[j]] += inst.cost(owner[j], j);
  return d;
}

// `candidate` dominates `target`: everyone weakly better, someone strictly.
bool dominates(const std::vector<Rational>& candidate,
               const std::vector<Rational>& target) {
  bool strict = false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (candidate[i] > target[i]) return false;
    if (candidate[i] < target[i]) strict = true;
  }
  return strict;
}

}  // namespace

bool is_po_bruteforce(const Instance& inst, const Allocation& alloc) {
  if (!alloc.complete()) throw input_error("PO check needs a complete allocation");
  const std::vector<Rational> target = disutility_vector(inst, alloc.owner);
  bool dominated = false;
  enumerate_allocations(inst.n(), inst.m(), [&](const std::vector<int>& owner) {
    if (dominates(disutility_vector(inst, owner), target)) {
      dominated = true;
      return false;
    }
    return true;
  });
  return !dominated;
}

LpProblem build_fpo_lp(const Instance& inst, const Allocation& alloc) {
  // Variables y[i][j] (flattened i*m+j): a fractional allocation.  Minimize
  // total cost subject to full assignment and no agent exceeding its current
  // bundle cost.  The allocation is fPO iff it already attains the optimum.
  const int n = inst.n(), m = inst.m();
  LpProblem lp;
  lp.num_vars = n * m;
  lp.objective.assign(lp.num_vars, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) lp.objective[i * m + j] = inst.cost(i, j);
  }
  for (int j = 0; j < m; ++j) {
    LpProblem::Row row;
    row.coeff.assign(lp.num_vars, Rational(0));
    for (int i = 0; i < n; ++i) row.coeff[i * m + j] = 1;
    row.rhs = 1;
    row.rel = LpProblem::Rel::eq;
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    LpProblem::Row row;
    row.coeff.assign(lp.num_vars, Rational(0));
    for (int j = 0; j < m; ++j) row.coeff[i * m + j] = inst.cost(i, j);
    row.rhs = bundle_disutility(inst, alloc, i);
    row.rel = LpProblem::Rel::le;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

bool is_fpo_lp(const Instance& inst, const Allocation& alloc) {
  if (!alloc.complete()) throw input_error("fPO check needs a complete allocation");
  if (inst.m() == 0) return true;
  const LpSolution sol = solve_lp(build_fpo_lp(inst, alloc));
  if (sol.status != LpStatus::optimal) {
    // The integral allocation itself is feasible and costs are bounded below.
    throw defect_error("fPO probe LP must have an optimum");
  }
  Rational total = 0;
  for (int i = 0; i < inst.n(); ++i) total += bundle_disutility(inst, alloc, i);
  return sol.objective == total;
}

std::vector<Allocation> find_allocations(const Instance& inst,
                                         const std::vector<Property>& props,
                                         const PaymentVector* pay) {
  bool want_po = false, want_fpo = false;
  std::vector<Property> cheap;
  for (Property p : props) {
    if (p == Property::po) {
      want_po = true;
    } else if (p == Property::fpo) {
      want_fpo = true;
    } else {
      cheap.push_back(p);
      if (p == Property::pef1 && pay == nullptr) {
        throw input_error("pef1 filter needs a payment vector");
      }
    }
  }

  std::vector<Allocation> found;
  enumerate_allocations(inst.n(), inst.m(), [&](const std::vector<int>& owner) {
    Allocation alloc(inst.n(), inst.m());
    alloc.owner = owner;
    for (Property p : cheap) {
      switch (p) {
        case Property::ef:
          if (!is_ef(inst, alloc).holds) return true;
          break;
        case Property::ef1:
          if (!is_ef1(inst, alloc).holds) return true;
          break;
        case Property::efx:
          if (!is_efx(inst, alloc).holds) return true;
          break;
        case Property::pef1:
          if (!is_pef1(alloc, *pay).holds) return true;
          break;
        default:
          break;
      }
    }
    found.push_back(std::move(alloc));
    return true;
  });

  if (want_po && !found.empty()) {
    // One shared enumeration of disutility vectors beats running the full
    // brute-force scan once per surviving allocation.
    std::vector<std::vector<Rational>> all;
    enumerate_allocations(inst.n(), inst.m(), [&](const std::vector<int>& owner) {
      all.push_back(disutility_vector(inst, owner));
      return true;
    });
    std::vector<Allocation> kept;
    for (auto& alloc : found) {
      const std::vector<Rational> target = disutility_vector(inst, alloc.owner);
      bool dominated = false;
      for (const auto& candidate : all) {
        if (dominates(candidate, target)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(std::move(alloc));
    }
    found = std::move(kept);
  }

  if (want_fpo) {
    std::vector<Allocation> kept;
    for (auto& alloc : found) {
      if (is_fpo_lp(inst, alloc)) kept.push_back(std::move(alloc));
    }
    found = std::move(kept);
  }
  return found;
}

bool verify_nonexistence_efx_fpo(const Instance& inst) {
  bool exists = false;
  enumerate_allocations(inst.n(), inst.m(), [&](const std::vector<int>& owner) {
    Allocation alloc(inst.n(), inst.m());
    alloc.owner = owner;
    if (is_efx(inst, alloc).holds && is_fpo_lp(inst, alloc)) {
      exists = true;
      return false;
    }
    return true;
  });
  return !exists;
}

}  // namespace choreq
