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

#include "choreq/generate.hpp"

#include <vector>

#include "choreq/errors.hpp"

namespace choreq {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw input_error("random bound must be positive");
  return next() % bound;
}

long SplitMix64::range(long lo, long hi) {
  if (lo > hi) throw input_error("random range is empty");
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

Instance from_long_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> costs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    costs[i].assign(rows[i].begin(), rows[i].end());
  }
  return Instance::from_costs(costs);
}

}  // namespace

Instance generate(InstanceKind kind, const GenParams& params) {
  const int n = params.n, m = params.m;
  if (n < 1 || m < 0) throw input_error("generator needs n >= 1 and m >= 0");
  if (params.vmax < 1) throw input_error("generator needs vmax >= 1");
  if (params.k < 2) throw input_error("generator needs k >= 2");
  SplitMix64 rng(params.seed);
  std::vector<std::vector<long>> rows(n, std::vector<long>(m, 1));

  switch (kind) {
    case InstanceKind::general:
      for (auto& row : rows) {
        for (long& v : row) v = rng.range(1, params.vmax);
      }
      break;

    case InstanceKind::identical: {
      std::vector<long> row(m);
      for (long& v : row) v = rng.range(1, params.vmax);
      rows.assign(n, row);
      break;
    }

    case InstanceKind::two_type: {
      if (n < 2) throw input_error("a two-type instance needs at least 2 agents");
      std::vector<long> row1(m), row2(m);
      // Redraw until the rows differ so both types are really present (with
      // m == 0 they cannot differ; the caller gets identical empty rows).
      do {
        for (long& v : row1) v = rng.range(1, params.vmax);
        for (long& v : row2) v = rng.range(1, params.vmax);
      } while (m > 0 && row1 == row2);
      // Agent 0 takes type 1 and agent 1 type 2 so both types always appear;
      // the rest flip a coin.
      for (int i = 0; i < n; ++i) {
        rows[i] = (i == 0 || (i > 1 && rng.below(2) == 0)) ? row1 : row2;
      }
      break;
    }

    case InstanceKind::bivalued:
      for (auto& row : rows) {
        for (long& v : row) v = rng.below(2) == 0 ? 1 : params.k;
      }
      break;

    case InstanceKind::two_ary:
      // Per-agent scale s_i and ratio k_i >= m, the regime where the 2-ary
      // solver applies.
      for (auto& row : rows) {
        const long s = rng.range(1, params.vmax);
        const long ki = std::max<long>(m, 2) + rng.range(0, 5);
        for (long& v : row) v = rng.below(2) == 0 ? s : s * ki;
      }
      break;
  }
  return from_long_rows(rows);
}

}  // namespace choreq
