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

#include "choreq/solver_bivalued.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "choreq/certify.hpp"
#include "choreq/errors.hpp"
#include "choreq/rational.hpp"

namespace choreq {
namespace {

// The solver prices chores as it allocates them, so mid-phase the market can
// contain unassigned (and therefore unpriced) heavy chores.  All equilibrium
// reasoning below is restricted to the priced sub-market; once the allocation
// is complete the restricted notions coincide with the global ones.

bool assigned(const BivaluedState& st, int chore) {
  return st.alloc.owner[chore] >= 0;
}

// Minimum pain-per-buck over the priced chores; empty when nothing is priced.
std::optional<Rational> restricted_alpha(const BivaluedState& st, int agent) {
  std::optional<Rational> best;
  for (int j = 0; j < st.alloc.m(); ++j) {
    if (!assigned(st, j)) continue;
    const Rational ratio = st.bn->base.cost(agent, j) / st.pay[j];
    if (!best || ratio < *best) best = ratio;
  }
  return best;
}

bool restricted_mpb(const BivaluedState& st, int agent, int chore) {
  if (!assigned(st, chore)) return false;
  const std::optional<Rational> alpha = restricted_alpha(st, agent);
  return alpha && st.bn->base.cost(agent, chore) / st.pay[chore] == *alpha;
}

// True when every chore of `owner`'s bundle sits in `viewer`'s
// minimum-pain-per-buck set.  An empty bundle qualifies vacuously.
bool bundle_all_mpb_for(const BivaluedState& st, int owner, int viewer) {
  for (int j = 0; j < st.alloc.m(); ++j) {
    if (st.alloc.owner[j] == owner && !restricted_mpb(st, viewer, j)) return false;
  }
  return true;
}

// Lowest-index chore of `agent`'s bundle satisfying `pred`; -1 when none.
template <typename Pred>
int lowest_owned(const BivaluedState& st, int agent, Pred pred) {
  for (int j = 0; j < st.alloc.m(); ++j) {
    if (st.alloc.owner[j] == agent && pred(j)) return j;
  }
  return -1;
}

int lowest_heavy_owned(const BivaluedState& st, int agent) {
  return lowest_owned(st, agent, [&](int j) { return st.is_heavy(j); });
}

// EFX-envy from i toward h: even after i forgives its own cheapest chore, its
// bundle still costs it more than h's bundle would (both priced with i's own
// costs).  Agents with empty bundles never envy.
bool efx_envies(const BivaluedState& st, int i, int h) {
  const Instance& base = st.bn->base;
  Rational own = 0, theirs = 0;
  std::optional<Rational> cheapest;
  for (int j = 0; j < st.alloc.m(); ++j) {
    if (st.alloc.owner[j] == i) {
      own += base.cost(i, j);
      if (!cheapest || base.cost(i, j) < *cheapest) cheapest = base.cost(i, j);
    } else if (st.alloc.owner[j] == h) {
      theirs += base.cost(i, j);
    }
  }
  if (!cheapest) return false;
  return own - *cheapest > theirs;
}

std::vector<std::pair<int, int>> efx_envy_pairs(const BivaluedState& st) {
  std::vector<std::pair<int, int>> pairs;
  const int n = st.bn->base.n();
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      if (i != h && efx_envies(st, i, h)) pairs.emplace_back(i, h);
    }
  }
  return pairs;
}

bool state_is_efx(const BivaluedState& st) { return efx_envy_pairs(st).empty(); }

void maybe_validate(BivaluedState& st, const std::string& phase) {
  if (st.check_invariants) validate_bivalued_state(st, phase);
}

// Records an invariant breach both in the trace (so sweeps can count
// violations) and as a defect, since every one of them has a termination or
// correctness argument behind it.
[[noreturn]] void invariant_breach(BivaluedState& st, const std::string& msg) {
  st.trace.violations.push_back(msg);
  throw defect_error(msg);
}

void append_branch(BivaluedState& st, const std::string& name) {
  if (st.trace.repair_branch.empty()) {
    st.trace.repair_branch = name;
  } else {
    st.trace.repair_branch += "+" + name;
  }
}

// Tracks which groups have gained or lost chores since group formation ended;
// a group doing both contradicts the balancing argument.
struct GainLossFlags {
  std::vector<char> gained, lost;
};

GainLossFlags gain_loss_from_trace(const BivaluedState& st) {
  GainLossFlags fl;
  fl.gained.assign(st.groups.groups.size(), 0);
  fl.lost.assign(st.groups.groups.size(), 0);
  for (const BivaluedEvent& ev : st.trace.events) {
    if (ev.kind == BivaluedEvent::Kind::k_assign) {
      fl.gained[st.groups.group_of[ev.to]] = 1;
    } else if (ev.kind == BivaluedEvent::Kind::balance_transfer) {
      fl.gained[st.groups.group_of[ev.to]] = 1;
      fl.lost[st.groups.group_of[ev.from]] = 1;
    }
  }
  return fl;
}

}  // namespace

bool BivaluedState::is_low_for(int agent, int chore) const {
  return bn->base.cost(agent, chore) == 1;
}

bool BivaluedState::is_heavy(int chore) const { return !bn->chore_is_low[chore]; }

int BivaluedState::own_one_count(int agent) const {
  int count = 0;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] == agent && bn->base.cost(agent, j) == 1) ++count;
  }
  return count;
}

int BivaluedState::own_k_count(int agent) const {
  int count = 0;
  for (int j = 0; j < alloc.m(); ++j) {
    if (alloc.owner[j] == agent && bn->base.cost(agent, j) == bn->k) ++count;
  }
  return count;
}

void BivaluedState::transfer(int chore, int to, BivaluedEvent::Kind kind) {
  if (chore < 0 || chore >= alloc.m() || to < 0 || to >= bn->base.n()) {
    throw input_error("transfer argument out of range");
  }
  const int from = alloc.owner[chore];
  if (from < 0) throw input_error("cannot transfer an unallocated chore");
  if (from == to) return;
  if (check_invariants && !restricted_mpb(*this, to, chore)) {
    throw defect_error("transferred chore " + bn->base.chores[chore] +
                       " is not minimum pain-per-buck for its receiver " +
                       bn->base.agents[to]);
  }
  alloc.owner[chore] = to;
  BivaluedEvent ev;
  ev.kind = kind;
  ev.chore = chore;
  ev.from = from;
  ev.to = to;
  trace.events.push_back(ev);
  switch (kind) {
    case BivaluedEvent::Kind::path_transfer: ++trace.mig_transfers; break;
    case BivaluedEvent::Kind::balance_transfer: ++trace.balance_transfers; break;
    case BivaluedEvent::Kind::fix_transfer: ++trace.fix_transfers; break;
    default: break;
  }
}

void BivaluedState::swap_chores(int chore_a, int chore_b, BivaluedEvent::Kind kind) {
  if (chore_a < 0 || chore_a >= alloc.m() || chore_b < 0 || chore_b >= alloc.m()) {
    throw input_error("swap argument out of range");
  }
  const int oa = alloc.owner[chore_a], ob = alloc.owner[chore_b];
  if (oa < 0 || ob < 0) throw input_error("cannot swap an unallocated chore");
  if (oa == ob) throw input_error("swap requires chores of two different agents");
  if (check_invariants &&
      (!restricted_mpb(*this, ob, chore_a) || !restricted_mpb(*this, oa, chore_b))) {
    throw defect_error("swapped chores " + bn->base.chores[chore_a] + " and " +
                       bn->base.chores[chore_b] +
                       " are not minimum pain-per-buck for their receivers");
  }
  alloc.owner[chore_a] = ob;
  alloc.owner[chore_b] = oa;
  BivaluedEvent ev;
  ev.kind = kind;
  ev.chore = chore_a;
  ev.other_chore = chore_b;
  ev.from = oa;
  ev.to = ob;
  trace.events.push_back(ev);
  if (kind == BivaluedEvent::Kind::fix_swap) ++trace.fix_swaps;
}

BivaluedNormal rescale_bivalued(const Instance& inst) {
  inst.validate();
  const InstanceClass cls = classify(inst);
  if (!cls.bivalued) {
    throw input_error("instance is not bivalued: costs must take at most two "
                      "distinct values, both strictly positive");
  }
  const int n = inst.n(), m = inst.m();
  BivaluedNormal bn;
  bn.base = inst;
  const Rational low = cls.bivalued_low;
  const Rational high = cls.bivalued_high;
  // An all-equal matrix normalizes to all-ones with no heavy chores left; any
  // ratio above 1 then behaves identically, so pick 2.
  bn.k = low == high ? Rational(2) : high / low;
  bn.row_scale.assign(n, low);
  for (int i = 0; i < n; ++i) {
    bool all_high = low != high;
    for (int j = 0; j < m && all_high; ++j) {
      if (inst.cost(i, j) != high) all_high = false;
    }
    // A row using only the high value carries no information about which
    // chores are relatively painful; scale it down to all-ones so that every
    // agent has at least one unit-cost chore.
    const Rational scale = all_high ? high : low;
    bn.row_scale[i] = scale;
    for (int j = 0; j < m; ++j) bn.base.costs[i][j] = inst.cost(i, j) / scale;
  }
  bn.chore_is_low.assign(m, false);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      if (bn.base.cost(i, j) == 1) {
        bn.chore_is_low[j] = true;
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    bool has_unit = m == 0;
    for (int j = 0; j < m; ++j) {
      const Rational& c = bn.base.cost(i, j);
      if (c != 1 && c != bn.k) {
        throw defect_error("bivalued normalization produced a value outside {1, k}");
      }
      if (c == 1) has_unit = true;
    }
    if (!has_unit) {
      throw defect_error("bivalued normalization left an agent with no unit-cost chore");
    }
  }
  return bn;
}

BivaluedState make_bivalued_state(const BivaluedNormal& bn) {
  BivaluedState st;
  st.bn = &bn;
  st.alloc = Allocation(bn.base.n(), bn.base.m());
  st.pay.assign(bn.base.m(), Rational(0));
  st.groups.group_of.assign(bn.base.n(), -1);
  return st;
}

MpbLevels mpb_levels(const Instance& base, const Allocation& alloc,
                     const PaymentVector& pay, int source,
                     const std::vector<char>& active) {
  const int n = base.n(), m = alloc.m();
  if (source < 0 || source >= n) throw input_error("layering source out of range");
  MpbLevels lv;
  lv.agent_level.assign(n, -1);
  lv.via_chore.assign(n, -1);
  lv.via_agent.assign(n, -1);
  // Pain-per-buck minima over the priced chores, computed once up front.
  std::vector<std::optional<Rational>> alpha(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (alloc.owner[j] < 0) continue;
      const Rational ratio = base.cost(i, j) / pay[j];
      if (!alpha[i] || ratio < *alpha[i]) alpha[i] = ratio;
    }
  }
  lv.agent_level[source] = 0;
  std::vector<int> frontier{source};
  int level = 0;
  while (!frontier.empty()) {
    ++level;
    std::vector<int> next;
    for (int u : frontier) {
      for (int j = 0; j < m; ++j) {
        if (alloc.owner[j] != u) continue;
        for (int v = 0; v < n; ++v) {
          if (!active[v] || lv.agent_level[v] >= 0) continue;
          if (!alpha[v] || base.cost(v, j) / pay[j] != *alpha[v]) continue;
          lv.agent_level[v] = level;
          lv.via_chore[v] = j;
          lv.via_agent[v] = u;
          next.push_back(v);
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return lv;
}

void make_init_groups(BivaluedState& st) {
  const Instance& base = st.bn->base;
  const int n = base.n(), m = base.m();
  // Cost-minimizing start: every low chore goes, at payment 1, to the first
  // agent that can do it at unit cost.  Heavy chores stay unassigned.
  for (int j = 0; j < m; ++j) {
    if (!st.bn->chore_is_low[j]) continue;
    for (int i = 0; i < n; ++i) {
      if (base.cost(i, j) == 1) {
        st.alloc.owner[j] = i;
        st.pay[j] = 1;
        BivaluedEvent ev;
        ev.kind = BivaluedEvent::Kind::init_assign;
        ev.chore = j;
        ev.to = i;
        st.trace.events.push_back(ev);
        break;
      }
    }
  }
  maybe_validate(st, "mig");

  std::vector<char> active(n, 1);
  int remaining = n;
  long cap = 4L * n * m * std::max(n, m) + 16;
  while (remaining > 0) {
    for (;;) {
      // Biggest earner among the ungrouped agents, by earning less its
      // single largest payment; ties to the lowest index.
      int b = -1;
      Rational best = 0;
      for (int i = 0; i < n; ++i) {
        if (!active[i]) continue;
        const Rational e = earning_less_one(st.alloc, st.pay, i);
        if (b < 0 || e > best) {
          b = i;
          best = e;
        }
      }
      const MpbLevels lv = mpb_levels(base, st.alloc, st.pay, b, active);
      // Nearest agent the big earner payment-envies, closest layer first,
      // then lowest index.
      int target = -1;
      for (int i = 0; i < n; ++i) {
        if (i == b || !active[i] || lv.agent_level[i] < 0) continue;
        if (best > earning(st.alloc, st.pay, i)) {
          if (target < 0 ||
              std::make_pair(lv.agent_level[i], i) <
                  std::make_pair(lv.agent_level[target], target)) {
            target = i;
          }
        }
      }
      if (target < 0) {
        // Nobody in the big earner's component is payment-envied: the
        // component settles as the next (lower) group.
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
          if (active[i] && lv.agent_level[i] >= 0) members.push_back(i);
        }
        const int rank = static_cast<int>(st.groups.groups.size());
        for (int i : members) {
          st.groups.group_of[i] = rank;
          active[i] = 0;
        }
        st.groups.groups.push_back(std::move(members));
        st.group_raised.push_back(0);
        remaining -= static_cast<int>(st.groups.groups.back().size());
        break;
      }
      // Push one chore a single step along the discovered shortest path.
      st.transfer(lv.via_chore[target], target, BivaluedEvent::Kind::path_transfer);
      if (--cap < 0) throw defect_error("group formation exceeded its transfer cap");
      maybe_validate(st, "mig");
    }
  }
  validate_bivalued_state(st, "mig_end");
}

void assign_k_chores(BivaluedState& st) {
  const Instance& base = st.bn->base;
  const int n = base.n(), m = base.m();
  if (st.groups.groups.empty()) throw input_error("heavy-chore phase requires formed groups");
  for (int j = 0; j < m; ++j) {
    if (st.bn->chore_is_low[j]) continue;
    // Receiver: fewest chores; ties to the lowest group (largest rank), then
    // fewest heavy chores, then lowest index.
    int pick = -1;
    int pick_size = 0, pick_rank = 0, pick_heavy = 0;
    for (int i = 0; i < n; ++i) {
      const int size = st.alloc.bundle_size(i);
      const int rank = st.groups.group_of[i];
      int heavy = 0;
      for (int t = 0; t < m; ++t) {
        if (st.alloc.owner[t] == i && st.is_heavy(t)) ++heavy;
      }
      const auto key = std::make_tuple(size, -rank, heavy, i);
      if (pick < 0 || key < std::make_tuple(pick_size, -pick_rank, pick_heavy, pick)) {
        pick = i;
        pick_size = size;
        pick_rank = rank;
        pick_heavy = heavy;
      }
    }
    st.alloc.owner[j] = pick;
    st.pay[j] = st.bn->k;
    BivaluedEvent ev;
    ev.kind = BivaluedEvent::Kind::k_assign;
    ev.chore = j;
    ev.to = pick;
    st.trace.events.push_back(ev);
    maybe_validate(st, "k_assign");
  }
  validate_bivalued_state(st, "k_assign");
}

void rebalance(BivaluedState& st) {
  const Instance& base = st.bn->base;
  const int n = base.n(), m = base.m();
  if (st.groups.groups.empty()) throw input_error("rebalancing requires formed groups");
  GainLossFlags fl = gain_loss_from_trace(st);
  long transfer_cap = static_cast<long>(m) * n;
  long raise_cap = n;
  for (;;) {
    // Giver: most chores, ties to the highest group (rank 0), then lowest
    // index.  Receiver: fewest chores, ties to the lowest group, then fewest
    // chores it itself prices at k, then lowest index.
    int give = -1, recv = -1;
    for (int i = 0; i < n; ++i) {
      const int size = st.alloc.bundle_size(i);
      const int rank = st.groups.group_of[i];
      if (give < 0 || std::make_tuple(-size, rank, i) <
                          std::make_tuple(-st.alloc.bundle_size(give),
                                          st.groups.group_of[give], give)) {
        give = i;
      }
      const auto rkey = std::make_tuple(size, -rank, st.own_k_count(i), i);
      if (recv < 0 || rkey < std::make_tuple(st.alloc.bundle_size(recv),
                                             -st.groups.group_of[recv],
                                             st.own_k_count(recv), recv)) {
        recv = i;
      }
    }
    if (st.alloc.bundle_size(recv) >= st.alloc.bundle_size(give) - 1) break;

    const int moved = lowest_owned(st, give, [&](int j) {
      return restricted_mpb(st, recv, j);
    });
    if (moved >= 0) {
      const int g_from = st.groups.group_of[give];
      const int g_to = st.groups.group_of[recv];
      if (st.check_invariants) {
        if (!(g_from < g_to)) {
          invariant_breach(st, "rebalancing transfer does not flow from a higher "
                               "group to a lower one");
        }
        if (!st.group_raised[g_from]) {
          invariant_breach(st, "a group lost a chore before its payments were raised");
        }
        if (fl.gained[g_from]) {
          invariant_breach(st, "a group that gained a chore was later chosen to lose one");
        }
        if (fl.lost[g_to]) {
          invariant_breach(st, "a group that lost a chore was later chosen to gain one");
        }
        for (int h = 0; h < n; ++h) {
          if (st.groups.group_of[h] >= g_to && base.cost(h, moved) != st.bn->k) {
            invariant_breach(st, "a gained chore is not heavy for every agent at or "
                                 "below the receiver's group");
          }
        }
      }
      st.transfer(moved, recv, BivaluedEvent::Kind::balance_transfer);
      fl.lost[g_from] = 1;
      fl.gained[g_to] = 1;
      if (--transfer_cap < 0) {
        throw defect_error("rebalancing exceeded its transfer cap of m*n");
      }
      maybe_validate(st, "rebalance");
    } else {
      const int g = st.groups.group_of[give];
      if (st.check_invariants) {
        if (st.group_raised[g]) {
          invariant_breach(st, "a group's payments were raised twice");
        }
        int raised_so_far = 0;
        for (char r : st.group_raised) raised_so_far += r ? 1 : 0;
        if (g != raised_so_far) {
          invariant_breach(st, "group payments raised out of rank order");
        }
        if (fl.gained[g]) {
          invariant_breach(st, "a group that gained a chore was later chosen to lose one");
        }
      }
      for (int i : st.groups.groups[g]) {
        for (int j = 0; j < m; ++j) {
          if (st.alloc.owner[j] == i) st.pay[j] *= st.bn->k;
        }
      }
      st.group_raised[g] = 1;
      BivaluedEvent ev;
      ev.kind = BivaluedEvent::Kind::group_raise;
      ev.group = g;
      ev.factor = st.bn->k;
      st.trace.events.push_back(ev);
      ++st.trace.raises;
      if (--raise_cap < 0) throw defect_error("rebalancing exceeded its raise cap of n");
      maybe_validate(st, "rebalance");
    }
  }
  validate_bivalued_state(st, "final");
}

std::vector<std::string> validate_bivalued_state(BivaluedState& st,
                                                 const std::string& phase) {
  const Instance& base = st.bn->base;
  const Rational& k = st.bn->k;
  const int n = base.n(), m = base.m();
  std::vector<std::string> bad;
  const auto note = [&](const std::string& msg) { bad.push_back(phase + ": " + msg); };

  // Equilibrium over the priced sub-market: positive payments and every owner
  // at its own minimum pain-per-buck.
  std::vector<std::optional<Rational>> alpha(n);
  for (int i = 0; i < n; ++i) alpha[i] = restricted_alpha(st, i);
  for (int j = 0; j < m; ++j) {
    const int o = st.alloc.owner[j];
    if (o < 0) continue;
    if (!(st.pay[j] > 0)) {
      note("assigned chore " + base.chores[j] + " has a nonpositive payment");
      continue;
    }
    if (base.cost(o, j) / st.pay[j] != *alpha[o]) {
      note("agent " + base.agents[o] + " holds chore " + base.chores[j] +
           " outside its minimum pain-per-buck set");
    }
  }

  // Cost-minimization: guaranteed up to the end of the heavy-chore phase, and
  // at the end whenever no rebalancing transfer happened.
  if (phase == "mig" || phase == "mig_end" || phase == "k_assign" ||
      (phase == "final" && st.trace.balance_transfers == 0)) {
    for (int j = 0; j < m; ++j) {
      const int o = st.alloc.owner[j];
      if (o < 0) continue;
      for (int i = 0; i < n; ++i) {
        if (base.cost(i, j) < base.cost(o, j)) {
          note("chore " + base.chores[j] + " is not with a cheapest agent");
          break;
        }
      }
    }
  }

  const bool structural = phase == "mig" || phase == "mig_end" ||
                          phase == "k_assign" || phase == "rebalance" ||
                          phase == "final";
  if (structural && !st.groups.groups.empty()) {
    const int ranks = static_cast<int>(st.groups.groups.size());
    // Chores of a higher group cost k for every agent ranked strictly lower;
    // agents not yet grouped will end up lower than every settled group.
    const auto rank_or_last = [&](int i) {
      const int r = st.groups.group_of[i];
      return r < 0 ? ranks + n : r;
    };
    for (int i = 0; i < n; ++i) {
      const int ri = st.groups.group_of[i];
      if (ri < 0) continue;
      for (int h = 0; h < n; ++h) {
        if (h == i || rank_or_last(h) <= ri) continue;
        for (int j = 0; j < m; ++j) {
          if (st.alloc.owner[j] == i && base.cost(h, j) != k) {
            note("chore " + base.chores[j] + " of higher-ranked agent " +
                 base.agents[i] + " is not heavy for " + base.agents[h]);
          }
        }
      }
    }
    // Within-group balance: total sizes everywhere; once every agent is
    // grouped, also the unit-cost and k-cost bundle slices.
    const bool all_grouped =
        std::none_of(st.groups.group_of.begin(), st.groups.group_of.end(),
                     [](int r) { return r < 0; });
    for (int g = 0; g < ranks; ++g) {
      int lo_size = -1, hi_size = -1, lo_one = -1, hi_one = -1, lo_k = -1, hi_k = -1;
      for (int i : st.groups.groups[g]) {
        const int size = st.alloc.bundle_size(i);
        const int ones = st.own_one_count(i);
        const int ks = st.own_k_count(i);
        if (lo_size < 0) {
          lo_size = hi_size = size;
          lo_one = hi_one = ones;
          lo_k = hi_k = ks;
        } else {
          lo_size = std::min(lo_size, size);
          hi_size = std::max(hi_size, size);
          lo_one = std::min(lo_one, ones);
          hi_one = std::max(hi_one, ones);
          lo_k = std::min(lo_k, ks);
          hi_k = std::max(hi_k, ks);
        }
      }
      if (lo_size >= 0 && hi_size - lo_size > 1) {
        note("group " + std::to_string(g + 1) + " is not balanced in total chores");
      }
      if (all_grouped && phase != "mig" && lo_size >= 0 &&
          (hi_one - lo_one > 1 || hi_k - lo_k > 1)) {
        note("group " + std::to_string(g + 1) + " is not fully balanced");
      }
    }
    if (all_grouped && phase != "mig") {
      // An agent in a lower group never carries more than one chore beyond
      // any higher-ranked agent.
      for (int i = 0; i < n; ++i) {
        for (int h = 0; h < n; ++h) {
          if (st.groups.group_of[i] < st.groups.group_of[h] &&
              st.alloc.bundle_size(h) > st.alloc.bundle_size(i) + 1) {
            note("agent " + base.agents[h] + " in a lower group holds two more "
                 "chores than " + base.agents[i]);
          }
        }
      }
    }
    if (phase == "mig_end") {
      // Group maxima weakly decrease with rank at formation time.
      int prev = -1;
      for (int g = 0; g < ranks; ++g) {
        int mx = 0;
        for (int i : st.groups.groups[g]) mx = std::max(mx, st.alloc.bundle_size(i));
        if (g > 0 && mx > prev) {
          note("group " + std::to_string(g + 1) + " formed with a larger bundle "
               "than the group above it");
        }
        prev = mx;
      }
    }
    // Raise bookkeeping: raised ranks form a prefix; raised agents sit at
    // pain-per-buck 1/k holding unit-cost chores that everyone unraised
    // prices at k and still finds minimum-pain-per-buck; unraised agents sit
    // at exactly 1, and their own k-cost chores are k for all unraised peers.
    if (!st.group_raised.empty() &&
        static_cast<int>(st.group_raised.size()) == ranks && all_grouped &&
        (phase == "rebalance" || phase == "final")) {
      for (int g = 1; g < ranks; ++g) {
        if (st.group_raised[g] && !st.group_raised[g - 1]) {
          note("raised groups do not form a prefix of the ranks");
        }
      }
      for (int i = 0; i < n; ++i) {
        const bool raised = st.group_raised[st.groups.group_of[i]] != 0;
        if (!alpha[i]) continue;
        if (raised && *alpha[i] != Rational(1) / k) {
          note("raised agent " + base.agents[i] + " has pain-per-buck != 1/k");
        }
        if (!raised && *alpha[i] != 1) {
          note("unraised agent " + base.agents[i] + " has pain-per-buck != 1");
        }
      }
      for (int i = 0; i < n; ++i) {
        const bool i_raised = st.group_raised[st.groups.group_of[i]] != 0;
        for (int j = 0; j < m; ++j) {
          if (st.alloc.owner[j] != i) continue;
          if (i_raised && base.cost(i, j) != 1) {
            note("raised agent " + base.agents[i] + " holds a non-unit chore");
          }
          for (int h = 0; h < n; ++h) {
            if (h == i) continue;
            const bool h_raised = st.group_raised[st.groups.group_of[h]] != 0;
            if (h_raised) continue;
            if (i_raised) {
              if (base.cost(h, j) != k) {
                note("chore of raised agent " + base.agents[i] +
                     " is not heavy for unraised agent " + base.agents[h]);
              }
              if (!restricted_mpb(st, h, j)) {
                note("chore of raised agent " + base.agents[i] +
                     " is not minimum pain-per-buck for unraised agent " +
                     base.agents[h]);
              }
            } else if (base.cost(i, j) == k && base.cost(h, j) != k) {
              note("k-cost chore of unraised agent " + base.agents[i] +
                   " is not heavy for unraised agent " + base.agents[h]);
            }
          }
        }
      }
    }
  }

  st.trace.violations.insert(st.trace.violations.end(), bad.begin(), bad.end());
  if (!bad.empty()) throw defect_error(bad.front());
  return bad;
}

void reduce_efx_envy(BivaluedState& st) {
  append_branch(st, "reduce_efx_envy");
  const Instance& base = st.bn->base;
  if (base.n() != 3) throw input_error("envy repair requires exactly 3 agents");
  int heavy_total = 0;
  for (int j = 0; j < base.m(); ++j) heavy_total += st.is_heavy(j) ? 1 : 0;
  const int mod = heavy_total % 3;
  if (state_is_efx(st)) return;
  if (mod == 0) {
    throw defect_error("EFX envy remains although heavy chores split evenly; "
                       "the balanced phase must have failed");
  }

  // Ownership of the "extra" heavy chores rotates until either the
  // allocation is EFX or some bundle stops being universally attractive, at
  // which point at most one envy pair remains for the dedicated fixer.
  int last_mover = -1;
  int moves = 0;
  while (!state_is_efx(st)) {
    if (moves >= 3) {
      throw defect_error("extra-heavy rotation failed to settle within three movements");
    }
    int receiver, giver;
    if (mod == 2) {
      // One agent is short a heavy chore; the other two each hold an extra.
      receiver = 0;
      for (int i = 1; i < 3; ++i) {
        if (st.own_k_count(i) < st.own_k_count(receiver)) receiver = i;
      }
      std::vector<int> extras;
      for (int i = 0; i < 3; ++i) {
        if (i != receiver) extras.push_back(i);
      }
      giver = (moves == 0 || extras[0] != last_mover) ? extras[0] : extras[1];
      if (!bundle_all_mpb_for(st, receiver, extras[0]) ||
          !bundle_all_mpb_for(st, receiver, extras[1])) {
        break;  // some extra holder has stopped envying; hand off
      }
      last_mover = receiver;
    } else {
      // A single agent holds the one extra heavy chore.
      giver = 0;
      for (int i = 1; i < 3; ++i) {
        if (st.own_k_count(i) > st.own_k_count(giver)) giver = i;
      }
      std::vector<int> others;
      for (int i = 0; i < 3; ++i) {
        if (i != giver) others.push_back(i);
      }
      receiver = (moves == 0 || others[0] != last_mover) ? others[0] : others[1];
      if (!bundle_all_mpb_for(st, others[0], giver) ||
          !bundle_all_mpb_for(st, others[1], giver)) {
        break;  // the holder no longer envies both peers; hand off
      }
      last_mover = giver;
    }
    const int heavy = lowest_heavy_owned(st, giver);
    if (heavy < 0) {
      throw defect_error("extra-heavy rotation found no heavy chore to move");
    }
    if (st.alloc.bundle_size(giver) > st.alloc.bundle_size(receiver)) {
      st.transfer(heavy, receiver, BivaluedEvent::Kind::fix_transfer);
    } else {
      const int back = lowest_owned(st, receiver, [&](int j) {
        return base.cost(giver, j) == 1;
      });
      if (back < 0) {
        throw defect_error("extra-heavy rotation found no unit-cost chore to swap back");
      }
      st.swap_chores(heavy, back, BivaluedEvent::Kind::fix_swap);
    }
    ++moves;
    maybe_validate(st, "repair");
  }

  if (!state_is_efx(st)) {
    st.trace.envy_at_dispatch = static_cast<int>(efx_envy_pairs(st).size());
    if (mod == 2) {
      fix_two_extra_K(st);
    } else {
      fix_one_extra_K(st);
    }
  }
  if (!state_is_efx(st)) {
    throw defect_error("envy reduction finished without an EFX allocation");
  }
}

void fix_two_extra_K(BivaluedState& st) {
  append_branch(st, "fix_two_extra_K");
  const Instance& base = st.bn->base;
  if (base.n() != 3) throw input_error("envy repair requires exactly 3 agents");
  const int m = base.m();

  // Exactly one envy pair must remain, aimed at the agent holding the fewest
  // k-cost chores.
  int c = 0;
  for (int i = 1; i < 3; ++i) {
    if (st.own_k_count(i) < st.own_k_count(c)) c = i;
  }
  const auto pairs = efx_envy_pairs(st);
  if (pairs.size() != 1 || pairs[0].second != c) {
    throw defect_error("two-extra repair expects exactly one envy pair toward "
                       "the lightest-loaded agent");
  }
  const int b = pairs[0].first;
  const int a = 3 - b - c;

  const auto unit_for = [&](int owner, int viewer) {
    return lowest_owned(st, owner, [&](int j) { return base.cost(viewer, j) == 1; });
  };
  const int j_c = lowest_owned(st, c, [&](int j) { return !restricted_mpb(st, a, j); });
  const auto need_j_c = [&]() {
    if (j_c < 0) {
      throw defect_error("two-extra repair found no chore of the envied agent "
                         "outside the bystander's minimum-pain-per-buck set");
    }
    return j_c;
  };
  const auto need_heavy = [&](int agent) {
    const int h = lowest_heavy_owned(st, agent);
    if (h < 0) throw defect_error("two-extra repair found no heavy chore to move");
    return h;
  };
  const auto need_unit = [&](int owner, int viewer) {
    const int j = unit_for(owner, viewer);
    if (j < 0) {
      throw defect_error("two-extra repair found no chore the receiver prices at 1");
    }
    return j;
  };

  const bool b_has_non_mpb_for_c =
      lowest_owned(st, b, [&](int j) { return !restricted_mpb(st, c, j); }) >= 0;
  if (b_has_non_mpb_for_c) {
    st.swap_chores(need_heavy(b), need_j_c(), BivaluedEvent::Kind::fix_swap);
    maybe_validate(st, "repair");
  } else if (st.bn->k <= 2) {
    st.transfer(need_unit(b, c), c, BivaluedEvent::Kind::fix_transfer);
    maybe_validate(st, "repair");
  } else if (st.own_one_count(a) < 2) {
    long guard = m + 2;
    while (efx_envies(st, b, c)) {
      if (--guard < 0) throw defect_error("two-extra repair transfer loop exceeded m+2 moves");
      st.transfer(need_unit(b, c), c, BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    }
  } else {
    const int a_for_b_only = lowest_owned(st, a, [&](int j) {
      return restricted_mpb(st, b, j) && !restricted_mpb(st, c, j);
    });
    const int a_for_c_only = lowest_owned(st, a, [&](int j) {
      return restricted_mpb(st, c, j) && !restricted_mpb(st, b, j);
    });
    int a_private = 0;
    for (int j = 0; j < m; ++j) {
      if (st.alloc.owner[j] == a && !restricted_mpb(st, b, j) &&
          !restricted_mpb(st, c, j)) {
        ++a_private;
      }
    }
    if (a_for_b_only >= 0) {
      st.transfer(a_for_b_only, b, BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
      st.swap_chores(need_heavy(b), need_j_c(), BivaluedEvent::Kind::fix_swap);
      maybe_validate(st, "repair");
    } else if (a_for_c_only >= 0) {
      st.transfer(a_for_c_only, c, BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
      if (efx_envies(st, b, a)) {
        st.transfer(need_unit(b, c), c, BivaluedEvent::Kind::fix_transfer);
        maybe_validate(st, "repair");
      }
    } else if (a_private >= 2) {
      if (st.alloc.bundle_size(b) <= st.alloc.bundle_size(a)) {
        st.transfer(need_heavy(a), c, BivaluedEvent::Kind::fix_transfer);
        maybe_validate(st, "repair");
      } else {
        int cheap_elsewhere = -1;
        for (int j = 0; j < m && cheap_elsewhere < 0; ++j) {
          const int o = st.alloc.owner[j];
          if ((o == b || o == c) && base.cost(a, j) == 1) cheap_elsewhere = j;
        }
        if (cheap_elsewhere >= 0) {
          const int heavy = need_heavy(a);
          st.transfer(cheap_elsewhere, a, BivaluedEvent::Kind::fix_transfer);
          maybe_validate(st, "repair");
          st.transfer(heavy, c, BivaluedEvent::Kind::fix_transfer);
          maybe_validate(st, "repair");
        } else {
          st.transfer(need_heavy(b), a, BivaluedEvent::Kind::fix_transfer);
          maybe_validate(st, "repair");
        }
      }
    } else {
      long guard = m + 2;
      while (efx_envies(st, b, c)) {
        if (--guard < 0) {
          throw defect_error("two-extra repair alternating loop exceeded m+2 moves");
        }
        if (st.alloc.bundle_size(b) >= st.alloc.bundle_size(a)) {
          st.transfer(need_unit(b, c), c, BivaluedEvent::Kind::fix_transfer);
        } else {
          st.transfer(need_unit(a, c), c, BivaluedEvent::Kind::fix_transfer);
        }
        maybe_validate(st, "repair");
      }
    }
  }
  if (!state_is_efx(st)) {
    throw defect_error("two-extra repair finished without an EFX allocation");
  }
}

void fix_one_extra_K(BivaluedState& st) {
  append_branch(st, "fix_one_extra_K");
  const Instance& base = st.bn->base;
  if (base.n() != 3) throw input_error("envy repair requires exactly 3 agents");
  const int m = base.m();

  // Exactly one envy pair must remain, coming from the agent holding the
  // most k-cost chores.
  int a = 0;
  for (int i = 1; i < 3; ++i) {
    if (st.own_k_count(i) > st.own_k_count(a)) a = i;
  }
  const auto pairs = efx_envy_pairs(st);
  if (pairs.size() != 1 || pairs[0].first != a) {
    throw defect_error("one-extra repair expects exactly one envy pair from "
                       "the heaviest-loaded agent");
  }
  const int b = pairs[0].second;
  const int c = 3 - a - b;

  const auto need = [&](int j, const char* what) {
    if (j < 0) throw defect_error(std::string("one-extra repair found no ") + what);
    return j;
  };
  const int k_a = lowest_heavy_owned(st, a);
  const int j_b = lowest_owned(st, b, [&](int j) { return base.cost(a, j) == 1; });
  const int j_c = lowest_owned(st, c, [&](int j) { return !restricted_mpb(st, a, j); });

  const bool c_has_non_mpb_for_b =
      lowest_owned(st, c, [&](int j) { return !restricted_mpb(st, b, j); }) >= 0;
  if (c_has_non_mpb_for_b) {
    st.swap_chores(need(k_a, "heavy chore of the envier"),
                   need(j_b, "unit-cost chore in the envied bundle"),
                   BivaluedEvent::Kind::fix_swap);
    maybe_validate(st, "repair");
    long guard = m + 2;
    while (efx_envies(st, b, a)) {
      if (--guard < 0) throw defect_error("one-extra repair transfer loop exceeded m+2 moves");
      const int give_back = lowest_owned(st, b, [&](int j) {
        return base.cost(a, j) == 1;
      });
      st.transfer(need(give_back, "unit-cost chore to hand back"), a,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    }
  } else {
    const int b_unit_for_c = lowest_owned(st, b, [&](int j) {
      return base.cost(c, j) == 1;
    });
    if (b_unit_for_c >= 0) {
      st.swap_chores(b_unit_for_c, need(j_c, "bystander chore outside the envier's "
                                             "minimum-pain-per-buck set"),
                     BivaluedEvent::Kind::fix_swap);
      maybe_validate(st, "repair");
      if (!state_is_efx(st)) {
        const int low_c = lowest_owned(st, c, [&](int j) { return !st.is_heavy(j); });
        st.swap_chores(need(k_a, "heavy chore of the envier"),
                       need(low_c, "low chore in the bystander bundle"),
                       BivaluedEvent::Kind::fix_swap);
        maybe_validate(st, "repair");
      }
      long guard = m + 2;
      while (efx_envies(st, c, a) || efx_envies(st, c, b)) {
        if (--guard < 0) throw defect_error("one-extra repair relief loop exceeded m+2 moves");
        const int low_c = lowest_owned(st, c, [&](int j) { return !st.is_heavy(j); });
        const int to = st.alloc.bundle_size(a) < st.alloc.bundle_size(b) ? a : b;
        st.transfer(need(low_c, "low chore in the bystander bundle"), to,
                    BivaluedEvent::Kind::fix_transfer);
        maybe_validate(st, "repair");
      }
    } else if (st.own_one_count(b) == 1) {
      st.swap_chores(need(k_a, "heavy chore of the envier"),
                     need(j_b, "unit-cost chore in the envied bundle"),
                     BivaluedEvent::Kind::fix_swap);
      maybe_validate(st, "repair");
    } else {
      // Rotate three chores: the envier sheds its extra heavy chore to the
      // bystander, who passes a cheap chore to the envied agent, who hands
      // one back to the envier.
      const int c_unit_for_b = lowest_owned(st, c, [&](int j) {
        return base.cost(b, j) == 1;
      });
      st.transfer(need(k_a, "heavy chore of the envier"), c,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
      st.transfer(need(c_unit_for_b, "bystander chore the envied agent prices at 1"),
                  b, BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
      st.transfer(need(j_b, "unit-cost chore in the envied bundle"), a,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    }
  }
  if (!state_is_efx(st)) {
    throw defect_error("one-extra repair finished without an EFX allocation");
  }
}

void fix_top_singleton(BivaluedState& st) {
  append_branch(st, "fix_top_singleton");
  const Instance& base = st.bn->base;
  if (base.n() != 3) throw input_error("envy repair requires exactly 3 agents");
  if (st.groups.groups.size() != 2 || st.groups.groups[0].size() != 1) {
    throw input_error("this repair expects two groups with a single top agent");
  }
  if (state_is_efx(st)) return;
  const int m = base.m();
  const int a = st.groups.groups[0][0];
  // In the bottom pair, the envied agent is the one with more unit-cost
  // chores; ties toward fewer k-cost chores, then the lower index.
  int b = st.groups.groups[1][0], c = st.groups.groups[1][1];
  if (std::make_tuple(-st.own_one_count(c), st.own_k_count(c), c) <
      std::make_tuple(-st.own_one_count(b), st.own_k_count(b), b)) {
    std::swap(b, c);
  }

  const auto need = [&](int j, const char* what) {
    if (j < 0) throw defect_error(std::string("top-singleton repair found no ") + what);
    return j;
  };

  if (st.own_one_count(a) == st.own_one_count(c)) {
    reduce_efx_envy(st);
  } else if (st.alloc.bundle_size(a) < st.alloc.bundle_size(c)) {
    st.transfer(need(lowest_heavy_owned(st, c), "heavy chore to lift"), a,
                BivaluedEvent::Kind::fix_transfer);
    maybe_validate(st, "repair");
  } else if (st.alloc.bundle_size(b) < st.alloc.bundle_size(a) ||
             st.own_one_count(b) >= 3) {
    int j_a = lowest_owned(st, a, [&](int j) { return restricted_mpb(st, b, j); });
    if (j_a < 0) {
      // Nothing of the top bundle appeals to the receiver yet; raising that
      // bundle's payments by k makes all of it minimum pain-per-buck for the
      // unraised agents below.
      if (st.group_raised[0]) {
        throw defect_error("top bundle already raised yet still unattractive");
      }
      for (int j = 0; j < m; ++j) {
        if (st.alloc.owner[j] == a) st.pay[j] *= st.bn->k;
      }
      st.group_raised[0] = 1;
      BivaluedEvent ev;
      ev.kind = BivaluedEvent::Kind::fix_raise;
      ev.group = 0;
      ev.factor = st.bn->k;
      st.trace.events.push_back(ev);
      ++st.trace.raises;
      maybe_validate(st, "repair");
      j_a = lowest_owned(st, a, [&](int) { return true; });
    }
    st.transfer(need(j_a, "chore of the top agent to pass down"), b,
                BivaluedEvent::Kind::fix_transfer);
    maybe_validate(st, "repair");
  } else {
    const int j_c = lowest_owned(st, c, [&](int j) { return base.cost(b, j) == 1; });
    if (j_c >= 0) {
      st.transfer(j_c, b, BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    } else {
      st.swap_chores(need(lowest_heavy_owned(st, c), "heavy chore of the envier"),
                     need(lowest_owned(st, b, [&](int j) {
                            return base.cost(c, j) == 1;
                          }),
                          "unit-cost chore in the envied bundle"),
                     BivaluedEvent::Kind::fix_swap);
      maybe_validate(st, "repair");
    }
  }
  if (!state_is_efx(st)) {
    throw defect_error("top-singleton repair finished without an EFX allocation");
  }
}

void fix_top_pair(BivaluedState& st) {
  append_branch(st, "fix_top_pair");
  const Instance& base = st.bn->base;
  if (base.n() != 3) throw input_error("envy repair requires exactly 3 agents");
  if (st.groups.groups.size() != 2 || st.groups.groups[0].size() != 2) {
    throw input_error("this repair expects two groups with a top pair");
  }
  if (state_is_efx(st)) return;
  // In the top pair, a has weakly more unit-cost chores (ties toward fewer
  // k-cost chores, then the lower index), so any envy runs from b toward a.
  int a = st.groups.groups[0][0], b = st.groups.groups[0][1];
  if (std::make_tuple(-st.own_one_count(b), st.own_k_count(b), b) <
      std::make_tuple(-st.own_one_count(a), st.own_k_count(a), a)) {
    std::swap(a, b);
  }
  const int c = st.groups.groups[1][0];

  const auto need = [&](int j, const char* what) {
    if (j < 0) throw defect_error(std::string("top-pair repair found no ") + what);
    return j;
  };

  if (st.alloc.bundle_size(c) > st.alloc.bundle_size(a)) {
    if (st.own_k_count(c) > st.own_k_count(b)) {
      st.transfer(need(lowest_heavy_owned(st, c), "heavy chore to lift"), a,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    } else {
      reduce_efx_envy(st);
    }
  } else if (st.own_one_count(c) >= st.own_one_count(b)) {
    reduce_efx_envy(st);
  } else {
    const int j_c = lowest_owned(st, c, [&](int j) { return base.cost(b, j) == 1; });
    if (j_c >= 0) {
      st.swap_chores(j_c, need(lowest_heavy_owned(st, b), "heavy chore of the envier"),
                     BivaluedEvent::Kind::fix_swap);
      maybe_validate(st, "repair");
    } else {
      const int j_a = lowest_owned(st, a, [&](int j) { return base.cost(b, j) == 1; });
      st.transfer(need(lowest_heavy_owned(st, c), "heavy chore to lift"), a,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
      st.transfer(need(j_a, "unit-cost chore to pass across the top pair"), b,
                  BivaluedEvent::Kind::fix_transfer);
      maybe_validate(st, "repair");
    }
  }
  if (!state_is_efx(st)) {
    throw defect_error("top-pair repair finished without an EFX allocation");
  }
}

BivaluedResult balanced_ef1_fpo(const Instance& inst) {
  inst.validate();
  BivaluedResult res;
  res.normal = rescale_bivalued(inst);
  BivaluedState st = make_bivalued_state(res.normal);
  make_init_groups(st);
  assign_k_chores(st);
  rebalance(st);
  if (!is_balanced(res.normal.base, st.alloc, BalanceMode::total)) {
    throw defect_error("balanced solver ended with unbalanced bundles");
  }
  if (!is_ef1(res.normal.base, st.alloc).holds) {
    throw defect_error("balanced solver ended without EF1");
  }
  if (!is_ce(res.normal.base, st.alloc, st.pay).holds) {
    throw defect_error("balanced solver ended outside equilibrium");
  }
  res.alloc = std::move(st.alloc);
  res.pay = std::move(st.pay);
  res.groups = std::move(st.groups);
  res.trace = std::move(st.trace);
  return res;
}

BivaluedResult efx_fpo_three_bivalued(const Instance& inst) {
  inst.validate();
  if (inst.n() != 3) throw input_error("EFX solver requires exactly 3 agents");
  const InstanceClass cls = classify(inst);
  if (!cls.bivalued) {
    throw input_error("EFX solver requires a bivalued instance with strictly "
                      "positive costs");
  }
  BivaluedResult res;
  res.normal = rescale_bivalued(inst);
  const Instance& base = res.normal.base;
  const int m = base.m();

  if (cls.identical) {
    // With one shared cost row every allocation has the same total cost, so
    // efficiency is free and handing each chore, worst first, to the
    // currently least-burdened agent yields EFX directly.
    std::vector<int> order(m);
    for (int j = 0; j < m; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (base.cost(0, x) != base.cost(0, y)) return base.cost(0, x) > base.cost(0, y);
      return x < y;
    });
    res.alloc = Allocation(3, m);
    std::vector<Rational> load(3, Rational(0));
    for (int j : order) {
      int pick = 0;
      for (int i = 1; i < 3; ++i) {
        if (load[i] < load[pick]) pick = i;
      }
      res.alloc.owner[j] = pick;
      load[pick] += base.cost(0, j);
    }
    res.pay = base.costs[0];
    res.groups.groups = {{0, 1, 2}};
    res.groups.group_of = {0, 0, 0};
    res.trace.repair_branch = "identical_greedy";
    res.trace.envy_at_dispatch = 0;
  } else {
    BivaluedState st = make_bivalued_state(res.normal);
    make_init_groups(st);
    assign_k_chores(st);
    rebalance(st);
    st.trace.envy_at_dispatch = static_cast<int>(efx_envy_pairs(st).size());
    const std::size_t ranks = st.groups.groups.size();
    if (ranks == 1) {
      reduce_efx_envy(st);
    } else if (ranks == 2 && st.groups.groups[0].size() == 1) {
      fix_top_singleton(st);
    } else if (ranks == 2) {
      fix_top_pair(st);
    } else {
      append_branch(st, "none");
      if (!state_is_efx(st)) {
        throw defect_error("three singleton groups must already be EFX");
      }
    }
    res.alloc = std::move(st.alloc);
    res.pay = std::move(st.pay);
    res.groups = std::move(st.groups);
    res.trace = std::move(st.trace);
  }

  if (!is_efx(base, res.alloc).holds) {
    throw defect_error("EFX solver ended without an EFX allocation");
  }
  if (m > 0 && !is_ce(base, res.alloc, res.pay).holds) {
    throw defect_error("EFX solver ended outside equilibrium");
  }
  return res;
}

TwoAryResult solve_two_ary(const Instance& inst) {
  inst.validate();
  const InstanceClass cls = classify(inst);
  if (!cls.two_ary) {
    throw input_error("instance is not 2-ary: some agent uses more than two "
                      "distinct cost values");
  }
  if (!inst.all_positive()) {
    throw input_error("2-ary solver requires strictly positive costs; split "
                      "off zero-cost chores first");
  }
  const int n = inst.n(), m = inst.m();
  for (int i = 0; i < n; ++i) {
    if (cls.ary_high[i] == cls.ary_low[i]) continue;
    const Rational ratio = cls.ary_high[i] / cls.ary_low[i];
    if (ratio < m) {
      throw input_error("2-ary solver needs each agent's high/low cost ratio "
                        "to be at least the number of chores; agent " +
                        inst.agents[i] + " has ratio " + format_rational(ratio) +
                        " < m = " + std::to_string(m));
    }
  }
  // When every ratio clears m, only the low/high pattern matters, so solve a
  // stand-in instance with a common ratio and certify against the real costs.
  Instance proxy = inst;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      proxy.costs[i][j] = inst.cost(i, j) == cls.ary_low[i] ? Rational(1) : Rational(2);
    }
  }
  BivaluedResult balanced = balanced_ef1_fpo(proxy);
  TwoAryResult out;
  out.alloc = std::move(balanced.alloc);
  out.ef1 = is_ef1(inst, out.alloc);
  if (!out.ef1.holds) {
    throw defect_error("2-ary allocation is not EF1 under the true costs");
  }
  return out;
}

}  // namespace choreq
