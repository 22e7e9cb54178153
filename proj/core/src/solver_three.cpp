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

#include "choreq/solver_three.hpp"

#include "choreq/certify.hpp"
#include "choreq/errors.hpp"

namespace choreq {

Rational drop_factor(const Instance& inst, const Allocation& alloc,
                     const PaymentVector& pay, int big, int least, int high,
                     DropMode mode) {
  // beta = max over (dropping agent, target chore) of alpha_i / (d_i(j)/p_j).
  // Each term is < 1 precisely because the calling branch established that no
  // target chore is minimum-pain-per-buck for a dropping agent; scaling the
  // dropping bundles by the max brings the tightest such pair to equality.
  Rational beta = 0;
  bool any = false;
  const std::vector<int> droppers =
      mode == DropMode::least_and_high ? std::vector<int>{least, high}
                                       : std::vector<int>{least};
  for (int agent : droppers) {
    const Rational alpha = mpb_ratio(inst, pay, agent);
    for (int j = 0; j < alloc.m(); ++j) {
      const int o = alloc.owner[j];
      const bool target =
          mode == DropMode::least_and_high ? o == big : (o == big || o == high);
      if (!target) continue;
      const Rational term = alpha * pay[j] / inst.cost(agent, j);
      if (!any || term > beta) beta = term;
      any = true;
    }
  }
  if (!any || beta <= 0 || beta >= 1) {
    throw defect_error("payment drop factor out of range; branch precondition "
                       "must have been violated");
  }
  return beta;
}

ThreeAgentResult solve_three_agents(const Instance& inst) {
  inst.validate();
  if (inst.n() != 3) throw input_error("three-agent solver requires exactly 3 agents");
  if (!inst.all_positive()) {
    throw input_error("three-agent solver requires strictly positive costs; "
                      "split off zero-cost chores first");
  }

  const int m = inst.m();
  ThreeAgentResult res;
  res.alloc = Allocation::all_to(3, m, 0);
  res.pay.resize(m);
  for (int j = 0; j < m; ++j) res.pay[j] = inst.cost(0, j);

  const long cap = 20L * m * m;
  long events = 0;
  while (!is_ef1(inst, res.alloc).holds) {
    if (++events > cap) {
      throw defect_error("three-agent solver exceeded its event cap of 20*m^2");
    }
    const int b = select_big_earner(res.alloc, res.pay);
    const int l = select_least_earner(res.alloc, res.pay);
    if (b == l) {
      // Under a competitive equilibrium, failing EF1 implies failing
      // payment-EF1, which forces p_{-1}(x_b) > p(x_l); impossible for b == l.
      throw defect_error("big earner and least earner coincide while not EF1");
    }
    const int h = 3 - b - l;

    ThreeAgentEvent ev;
    ev.big = b;
    ev.least = l;
    ev.high = h;

    auto transfer = [&](int chore, int to) {
      ev.kind = ThreeAgentEvent::Kind::transfer;
      ev.chore = chore;
      ev.from = res.alloc.owner[chore];
      ev.to = to;
      res.alloc.owner[chore] = to;
      ++res.trace.transfers;
    };
    auto drop = [&](DropMode mode) {
      ev.kind = ThreeAgentEvent::Kind::drop;
      ev.factor = drop_factor(inst, res.alloc, res.pay, b, l, h, mode);
      for (int j = 0; j < m; ++j) {
        const int o = res.alloc.owner[j];
        if (o == l || (mode == DropMode::least_and_high && o == h)) {
          res.pay[j] *= ev.factor;
          ev.dropped.push_back(j);
        }
      }
      ++res.trace.drops;
    };

    const std::vector<int> mpb_l = mpb_set(inst, res.pay, l);
    int b_to_l = -1, h_to_l = -1;
    for (int j : mpb_l) {
      if (b_to_l < 0 && res.alloc.owner[j] == b) b_to_l = j;
      if (h_to_l < 0 && res.alloc.owner[j] == h) h_to_l = j;
    }

    if (b_to_l >= 0) {
      transfer(b_to_l, l);
    } else if (h_to_l >= 0) {
      if (earning(res.alloc, res.pay, h) - res.pay[h_to_l] >
          earning(res.alloc, res.pay, l)) {
        // h pEF1-envies l, so l can absorb the chore without overtaking h.
        transfer(h_to_l, l);
      } else {
        int b_to_h = -1;
        for (int j : mpb_set(inst, res.pay, h)) {
          if (res.alloc.owner[j] == b) {
            b_to_h = j;
            break;
          }
        }
        if (b_to_h >= 0) {
          transfer(b_to_h, h);
        } else {
          drop(DropMode::least_and_high);
        }
      }
    } else {
      drop(DropMode::least_only);
    }

    res.trace.events.push_back(std::move(ev));
    const FairnessReport ce = is_ce(inst, res.alloc, res.pay);
    if (!ce.holds) {
      throw defect_error("competitive equilibrium broke after an event: " +
                         ce.witness->detail);
    }
  }
  return res;
}

}  // namespace choreq
