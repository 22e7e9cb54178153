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

#include "choreq/instance.hpp"

namespace choreq {

// Deterministic 64-bit generator (splitmix64).  Ordinary std distributions
// are not bit-stable across standard libraries; instance generation must be,
// since seeds appear in test logs and bug reports.
struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  // Uniform-ish value in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform-ish integer in [lo, hi] inclusive.
  long range(long lo, long hi);
};

enum class InstanceKind { general, two_type, bivalued, two_ary, identical };

struct GenParams {
  int n = 3;
  int m = 6;
  std::uint64_t seed = 1;
  long vmax = 10;  // general/identical/two_type: integer costs in [1, vmax]
  long k = 5;      // bivalued: costs in {1, k}
};

// Random instance of the requested structural class.  All costs are strictly
// positive integers.  two_type guarantees exactly two distinct rows with both
// present; two_ary gives each row values {s_i, s_i * k_i} with k_i >= m.
Instance generate(InstanceKind kind, const GenParams& params);

}  // namespace choreq
