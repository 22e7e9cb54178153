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

#include <cstdint>
#include <functional>
#include <vector>

#include "choreq/certify.hpp"
#include "choreq/market.hpp"
#include "choreq/simplex.hpp"

namespace choreq {

// Ground-truth checks by exhaustive enumeration and exact LP.  Everything in
// this header is independent of the constructive solvers so it can sit in
// judgment over them.

// Enumeration budget: n^m owner vectors.  Default 10^7; override with the
// CHOREQ_ENUM_LIMIT environment variable.
std::uint64_t enumeration_limit();
bool enumeration_feasible(int n, int m, std::uint64_t limit = enumeration_limit());

// Visits every owner vector (o_1..o_m), o_j in [0,n), in lexicographic order.
// The visitor returns false to stop early.  Throws input_error when n^m
// exceeds the budget.
void enumerate_allocations(int n, int m,
                           const std::function<bool(const std::vector<int>&)>& visit);

// Pareto optimality among integral allocations, by scanning all of them for a
// dominator (everyone weakly better off, someone strictly).
bool is_po_bruteforce(const Instance& inst, const Allocation& alloc);

// Fractional Pareto optimality via LP: minimize total cost over fractional
// allocations that make no agent worse off than `alloc`.  The allocation is
// fPO iff the optimum equals its own total cost (any dominator would achieve
// a strictly smaller total, and conversely).
LpProblem build_fpo_lp(const Instance& inst, const Allocation& alloc);
bool is_fpo_lp(const Instance& inst, const Allocation& alloc);

enum class Property { ef, ef1, efx, pef1, po, fpo };

// All allocations satisfying every requested property.  `pef1` needs the
// payment vector; requesting it without one is an input error.  Cheap
// share-based properties are tested before the enumeration/LP-based ones.
std::vector<Allocation> find_allocations(const Instance& inst,
                                         const std::vector<Property>& props,
                                         const PaymentVector* pay = nullptr);

// True when no allocation is simultaneously EFX and fPO.  (For zero chores
// the empty allocation vacuously has both, so the answer is false.)
bool verify_nonexistence_efx_fpo(const Instance& inst);

}  // namespace choreq
