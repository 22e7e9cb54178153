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

#include "choreq/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "choreq/errors.hpp"
#include "choreq/fixtures.hpp"
#include "choreq/generate.hpp"
#include "choreq/instance.hpp"
#include "choreq/oracle.hpp"
#include "choreq/rational.hpp"
#include "choreq/solver_bivalued.hpp"
#include "choreq/solver_three.hpp"
#include "choreq/solver_twotype.hpp"

namespace choreq {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON <-> exact rationals

json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const auto num = numerator(q);
    if (num >= std::numeric_limits<long long>::min() &&
        num <= std::numeric_limits<long long>::max()) {
      return num.convert_to<long long>();
    }
  }
  return format_rational(q);
}

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(where + ": " + e.what());
    }
  }
  if (v.is_number_float()) {
    throw input_error(where + ": non-integer JSON numbers are inexact; write "
                      "the value as a \"num/den\" string");
  }
  throw input_error(where + ": expected an integer or a \"num/den\" string");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << content;
  if (!out) throw input_error("failed writing file: " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(what + ": " + e.what());
  }
}

std::vector<std::string> string_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw input_error(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) throw input_error(where + ": expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::map<std::string, int> index_of(const std::vector<std::string>& ids) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance files

Instance parse_instance(const std::string& json_text) {
  const json doc = parse_json(json_text, "instance JSON");
  if (!doc.is_object()) throw input_error("instance file: top level must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string() ||
      doc["kind"].get<std::string>() != "chores") {
    throw input_error("instance file: \"kind\" must be the string \"chores\"");
  }
  if (!doc.contains("agents") || !doc.contains("chores") || !doc.contains("disutility")) {
    throw input_error("instance file: needs \"agents\", \"chores\" and \"disutility\"");
  }
  Instance inst;
  inst.agents = string_array(doc["agents"], "agents");
  inst.chores = string_array(doc["chores"], "chores");
  const json& du = doc["disutility"];
  if (!du.is_array() || du.size() != inst.agents.size()) {
    throw input_error("disutility: expected " + std::to_string(inst.agents.size()) +
                      " rows (one per agent), got " +
                      std::to_string(du.is_array() ? du.size() : 0));
  }
  inst.costs.resize(inst.agents.size());
  for (std::size_t i = 0; i < du.size(); ++i) {
    const json& row = du[i];
    if (!row.is_array() || row.size() != inst.chores.size()) {
      throw input_error("disutility row " + std::to_string(i + 1) + ": expected " +
                        std::to_string(inst.chores.size()) + " entries");
    }
    inst.costs[i].resize(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      inst.costs[i][j] = rational_from_json(
          row[j], "disutility row " + std::to_string(i + 1) + " column " +
                      std::to_string(j + 1));
    }
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["kind"] = "chores";
  doc["agents"] = inst.agents;
  doc["chores"] = inst.chores;
  json du = json::array();
  for (int i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < inst.m(); ++j) row.push_back(rational_to_json(inst.cost(i, j)));
    du.push_back(std::move(row));
  }
  doc["disutility"] = std::move(du);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Result files

std::string serialize_result(const ResultFile& result) {
  json doc;
  doc["kind"] = "result";
  doc["algorithm"] = result.algorithm;
  doc["instance"] = parse_json(serialize_instance(result.instance), "instance");
  json alloc = json::object();
  for (int i = 0; i < result.alloc.n_agents; ++i) {
    json ids = json::array();
    for (int j : result.alloc.bundle(i)) ids.push_back(result.instance.chores[j]);
    alloc[result.instance.agents[i]] = std::move(ids);
  }
  doc["allocation"] = std::move(alloc);
  if (result.pay) {
    json pay = json::object();
    for (int j = 0; j < result.alloc.m(); ++j) {
      pay[result.instance.chores[j]] = rational_to_json((*result.pay)[j]);
    }
    doc["payments"] = std::move(pay);
  }
  if (!result.certificates.empty()) {
    json certs = json::array();
    for (const FairnessReport& rep : result.certificates) {
      json c;
      c["property"] = rep.property;
      c["holds"] = rep.holds;
      if (rep.witness) {
        json w;
        if (rep.witness->agent >= 0) w["agent"] = result.instance.agents[rep.witness->agent];
        if (rep.witness->other >= 0) w["other"] = result.instance.agents[rep.witness->other];
        if (rep.witness->chore >= 0) w["chore"] = result.instance.chores[rep.witness->chore];
        if (!rep.witness->detail.empty()) w["detail"] = rep.witness->detail;
        c["witness"] = std::move(w);
      }
      certs.push_back(std::move(c));
    }
    doc["certificates"] = std::move(certs);
  }
  if (!result.trace_json.empty()) {
    doc["trace"] = parse_json(result.trace_json, "trace");
  }
  return doc.dump(2) + "\n";
}

ResultFile parse_result(const std::string& json_text, const Instance& inst) {
  const json doc = parse_json(json_text, "result JSON");
  if (!doc.is_object()) throw input_error("result file: top level must be an object");
  ResultFile out;
  out.instance = inst;
  out.algorithm = doc.value("algorithm", std::string());
  if (!doc.contains("allocation") || !doc["allocation"].is_object()) {
    throw input_error("result file: needs an \"allocation\" object");
  }
  const auto agent_idx = index_of(inst.agents);
  const auto chore_idx = index_of(inst.chores);
  out.alloc = Allocation(inst.n(), inst.m());
  for (const auto& [aid, ids] : doc["allocation"].items()) {
    const auto ai = agent_idx.find(aid);
    if (ai == agent_idx.end()) throw input_error("allocation: unknown agent id " + aid);
    for (const std::string& cid : string_array(ids, "allocation of " + aid)) {
      const auto cj = chore_idx.find(cid);
      if (cj == chore_idx.end()) throw input_error("allocation: unknown chore id " + cid);
      if (out.alloc.owner[cj->second] != -1) {
        throw input_error("allocation: chore " + cid + " listed twice");
      }
      out.alloc.owner[cj->second] = ai->second;
    }
  }
  if (doc.contains("payments")) {
    if (!doc["payments"].is_object()) {
      throw input_error("result file: \"payments\" must map chore ids to values");
    }
    PaymentVector pay(inst.m(), Rational(0));
    int found = 0;
    for (const auto& [cid, v] : doc["payments"].items()) {
      const auto cj = chore_idx.find(cid);
      if (cj == chore_idx.end()) throw input_error("payments: unknown chore id " + cid);
      pay[cj->second] = rational_from_json(v, "payment of " + cid);
      ++found;
    }
    if (found != inst.m()) {
      throw input_error("payments: expected a value for every chore");
    }
    out.pay = std::move(pay);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace serialization

namespace {

const char* bivalued_event_name(BivaluedEvent::Kind kind) {
  switch (kind) {
    case BivaluedEvent::Kind::init_assign: return "init_assign";
    case BivaluedEvent::Kind::path_transfer: return "path_transfer";
    case BivaluedEvent::Kind::k_assign: return "k_assign";
    case BivaluedEvent::Kind::balance_transfer: return "balance_transfer";
    case BivaluedEvent::Kind::group_raise: return "group_raise";
    case BivaluedEvent::Kind::fix_transfer: return "fix_transfer";
    case BivaluedEvent::Kind::fix_swap: return "fix_swap";
    case BivaluedEvent::Kind::fix_raise: return "fix_raise";
  }
  return "unknown";
}

std::string three_trace_json(const ThreeAgentTrace& tr, const Instance& inst) {
  json doc;
  doc["transfers"] = tr.transfers;
  doc["drops"] = tr.drops;
  json evs = json::array();
  for (const ThreeAgentEvent& ev : tr.events) {
    json e;
    e["kind"] = ev.kind == ThreeAgentEvent::Kind::transfer ? "transfer" : "drop";
    e["big"] = inst.agents[ev.big];
    e["least"] = inst.agents[ev.least];
    e["high"] = inst.agents[ev.high];
    if (ev.kind == ThreeAgentEvent::Kind::transfer) {
      e["chore"] = inst.chores[ev.chore];
      e["from"] = inst.agents[ev.from];
      e["to"] = inst.agents[ev.to];
    } else {
      e["factor"] = format_rational(ev.factor);
      json dropped = json::array();
      for (int j : ev.dropped) dropped.push_back(inst.chores[j]);
      e["dropped"] = std::move(dropped);
    }
    evs.push_back(std::move(e));
  }
  doc["events"] = std::move(evs);
  return doc.dump();
}

std::string two_type_trace_json(const TwoTypeTrace& tr, const Instance& inst) {
  json doc;
  doc["transfers"] = tr.transfers;
  doc["raises"] = tr.raises;
  doc["iterations"] = tr.iterations;
  json evs = json::array();
  for (const TwoTypeEvent& ev : tr.events) {
    json e;
    if (ev.kind == TwoTypeEvent::Kind::transfer) {
      e["kind"] = "transfer";
      e["chore"] = inst.chores[ev.chore];
    } else {
      e["kind"] = "raise";
      e["factor"] = format_rational(ev.factor);
    }
    evs.push_back(std::move(e));
  }
  doc["events"] = std::move(evs);
  return doc.dump();
}

std::string bivalued_trace_json(const BivaluedTrace& tr, const AgentGroups& groups,
                                const Instance& inst) {
  json doc;
  doc["mig_transfers"] = tr.mig_transfers;
  doc["balance_transfers"] = tr.balance_transfers;
  doc["raises"] = tr.raises;
  doc["fix_transfers"] = tr.fix_transfers;
  doc["fix_swaps"] = tr.fix_swaps;
  doc["envy_at_dispatch"] = tr.envy_at_dispatch;
  doc["repair_branch"] = tr.repair_branch;
  doc["violations"] = tr.violations;
  json gs = json::array();
  for (const auto& g : groups.groups) {
    json ids = json::array();
    for (int i : g) ids.push_back(inst.agents[i]);
    gs.push_back(std::move(ids));
  }
  doc["groups"] = std::move(gs);
  json evs = json::array();
  for (const BivaluedEvent& ev : tr.events) {
    json e;
    e["kind"] = bivalued_event_name(ev.kind);
    if (ev.chore >= 0) e["chore"] = inst.chores[ev.chore];
    if (ev.other_chore >= 0) e["other_chore"] = inst.chores[ev.other_chore];
    if (ev.from >= 0) e["from"] = inst.agents[ev.from];
    if (ev.to >= 0) e["to"] = inst.agents[ev.to];
    if (ev.group >= 0) e["group"] = ev.group + 1;
    if (ev.factor != 0) e["factor"] = format_rational(ev.factor);
    evs.push_back(std::move(e));
  }
  doc["events"] = std::move(evs);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Property evaluation shared by `solve --verify` and `check`

FairnessReport eval_property(const std::string& prop, const Instance& inst,
                             const Allocation& alloc, const PaymentVector* pay) {
  const auto need_pay = [&]() -> const PaymentVector& {
    if (!pay) throw input_error("property \"" + prop + "\" needs a payment vector");
    return *pay;
  };
  if (prop == "ef") return is_ef(inst, alloc);
  if (prop == "ef1") return is_ef1(inst, alloc);
  if (prop == "efx") return is_efx(inst, alloc);
  if (prop == "pef1") return is_pef1(alloc, need_pay());
  if (prop == "ce") return is_ce(inst, alloc, need_pay());
  if (prop == "po") {
    FairnessReport rep;
    rep.property = "po";
    rep.holds = is_po_bruteforce(inst, alloc);
    return rep;
  }
  if (prop == "fpo") {
    FairnessReport rep;
    rep.property = "fpo";
    rep.holds = is_fpo_lp(inst, alloc);
    return rep;
  }
  if (prop == "balanced") {
    FairnessReport rep;
    rep.property = "balanced";
    rep.holds = is_balanced(inst, alloc, BalanceMode::total);
    return rep;
  }
  throw input_error("unknown property: " + prop +
                    " (expected ef, ef1, efx, pef1, ce, po or fpo)");
}

std::vector<std::string> split_props(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  if (out.empty()) throw input_error("empty property list");
  return out;
}

void print_allocation(std::ostream& os, const Instance& inst, const Allocation& alloc) {
  for (int i = 0; i < alloc.n_agents; ++i) {
    os << "  " << inst.agents[i] << ":";
    const std::vector<int> bundle = alloc.bundle(i);
    if (bundle.empty()) {
      os << " (empty)";
    } else {
      for (int j : bundle) os << " " << inst.chores[j];
    }
    os << "  [cost " << format_rational(bundle_disutility(inst, alloc, i)) << "]\n";
  }
}

// ---------------------------------------------------------------------------
// solve

struct SolveOutcome {
  Allocation alloc{0, 0};
  std::optional<PaymentVector> pay;
  std::string trace_json;
  std::vector<std::string> props;  // predicates the algorithm advertises
  std::vector<std::string> notes;
};

SolveOutcome run_solver(const std::string& alg, const Instance& inst) {
  // The market-based solvers need strictly positive costs; chores someone can
  // do for free are pre-assigned to such an agent and merged back afterwards.
  // The merged allocation keeps the fairness/efficiency verdicts but not the
  // payment certificate, so payments are dropped in that case.
  const ZeroChoreSplit zs = preprocess_zero_chores(inst);
  const bool split = !zs.preassigned.empty();
  const Instance& work = split ? zs.reduced : inst;

  SolveOutcome out;
  Allocation part(0, 0);
  std::optional<PaymentVector> part_pay;

  if (alg == "three-agents") {
    ThreeAgentResult r = solve_three_agents(work);
    part = std::move(r.alloc);
    part_pay = std::move(r.pay);
    out.trace_json = three_trace_json(r.trace, work);
    out.props = {"ef1", "fpo"};
  } else if (alg == "two-type") {
    if (classify(work).identical) {
      // One shared cost row: a round-robin pick order is already EF1, and
      // payments proportional to the shared costs certify the equilibrium.
      std::vector<int> order(work.n()), chores(work.m());
      std::iota(order.begin(), order.end(), 0);
      std::iota(chores.begin(), chores.end(), 0);
      part = round_robin(work, order, chores);
      part_pay = proportional_payments(work, 0);
      out.trace_json = R"({"note":"identical cost rows; round-robin with proportional payments"})";
      out.notes.push_back("all agents share one cost row; used round-robin with "
                          "proportional payments");
    } else {
      TwoTypeResult r = solve_two_type(work);
      part = std::move(r.alloc);
      part_pay = std::move(r.pay);
      out.trace_json = two_type_trace_json(r.trace, work);
    }
    out.props = {"ef1", "fpo"};
  } else if (alg == "bivalued-balanced") {
    BivaluedResult r = balanced_ef1_fpo(work);
    part = std::move(r.alloc);
    part_pay = std::move(r.pay);
    out.trace_json = bivalued_trace_json(r.trace, r.groups, work);
    out.props = {"ef1", "fpo"};
    if (!split) out.props.push_back("balanced");
  } else if (alg == "bivalued-efx") {
    BivaluedResult r = efx_fpo_three_bivalued(work);
    part = std::move(r.alloc);
    part_pay = std::move(r.pay);
    out.trace_json = bivalued_trace_json(r.trace, r.groups, work);
    out.props = {"efx", "fpo"};
  } else if (alg == "two-ary") {
    TwoAryResult r = solve_two_ary(work);
    part = std::move(r.alloc);
    out.trace_json = R"({"note":"balanced solver on per-agent low/high proxy costs"})";
    out.props = {"ef1", "po"};
  } else {
    throw input_error("unknown algorithm: " + alg);
  }

  if (!split) {
    out.alloc = std::move(part);
    out.pay = std::move(part_pay);
  } else {
    out.alloc = Allocation(inst.n(), inst.m());
    for (int r = 0; r < static_cast<int>(zs.kept.size()); ++r) {
      out.alloc.owner[zs.kept[r]] = part.owner[r];
    }
    for (const auto& [chore, agent] : zs.preassigned) out.alloc.owner[chore] = agent;
    out.notes.push_back(std::to_string(zs.preassigned.size()) +
                        " zero-cost chore(s) preassigned to agents that do them "
                        "for free; payment certificate omitted");
    // EF1/PO/fPO survive the merge (the worst-chore removal and every total
    // are unchanged), but EFX does not: removing a zero-cost chore forgives
    // nothing, so for its holder EFX degenerates to full envy-freeness.
    for (std::string& p : out.props) {
      if (p == "efx") {
        p = "ef1";
        out.notes.push_back(
            "zero-cost chores weaken the EFX guarantee to EF1 on the merged "
            "instance (removing a free chore forgives no disutility)");
      }
    }
  }
  // Payments, when present, certify an equilibrium on the original instance:
  // the solvers that rescale rows leave every minimum-pain-per-buck set
  // unchanged (per-row scaling cancels in the argmin).
  if (out.pay) out.props.push_back("ce");
  return out;
}

int cmd_solve(const std::string& alg, const std::string& input,
              const std::string& output, const std::string& trace_path,
              bool verify) {
  const Instance inst = load_instance(input);
  const SolveOutcome so = run_solver(alg, inst);

  std::cout << "algorithm: " << alg << "\n";
  for (const std::string& note : so.notes) std::cout << "note: " << note << "\n";
  print_allocation(std::cout, inst, so.alloc);

  ResultFile rf;
  rf.algorithm = alg;
  rf.instance = inst;
  rf.alloc = so.alloc;
  rf.pay = so.pay;
  rf.trace_json = so.trace_json;

  int rc = 0;
  if (verify) {
    for (const std::string& prop : so.props) {
      const FairnessReport rep =
          eval_property(prop, inst, so.alloc, so.pay ? &*so.pay : nullptr);
      rf.certificates.push_back(rep);
      std::cout << "verify " << prop << ": " << (rep.holds ? "PASS" : "FAIL");
      if (!rep.holds && rep.witness && !rep.witness->detail.empty()) {
        std::cout << " (" << rep.witness->detail << ")";
      }
      std::cout << "\n";
      if (!rep.holds) rc = 2;
    }
  }
  if (!output.empty()) write_file(output, serialize_result(rf));
  if (!trace_path.empty()) {
    write_file(trace_path, (so.trace_json.empty() ? "{}" : so.trace_json) + "\n");
  }
  return rc;
}

// ---------------------------------------------------------------------------
// check

std::optional<PaymentVector> parse_payments_file(const std::string& path,
                                                 const Instance& inst) {
  const json doc = parse_json(read_file(path), path);
  const json* payments = &doc;
  if (doc.is_object() && doc.contains("payments")) payments = &doc["payments"];
  PaymentVector pay(inst.m(), Rational(0));
  if (payments->is_array()) {
    if (static_cast<int>(payments->size()) != inst.m()) {
      throw input_error(path + ": expected " + std::to_string(inst.m()) + " payments");
    }
    for (int j = 0; j < inst.m(); ++j) {
      pay[j] = rational_from_json((*payments)[j], "payment " + std::to_string(j + 1));
    }
    return pay;
  }
  if (payments->is_object()) {
    const auto chore_idx = index_of(inst.chores);
    int found = 0;
    for (const auto& [cid, v] : payments->items()) {
      const auto cj = chore_idx.find(cid);
      if (cj == chore_idx.end()) throw input_error(path + ": unknown chore id " + cid);
      pay[cj->second] = rational_from_json(v, "payment of " + cid);
      ++found;
    }
    if (found != inst.m()) throw input_error(path + ": expected a value for every chore");
    return pay;
  }
  throw input_error(path + ": expected a payments object or array");
}

int cmd_check(const std::string& input, const std::string& alloc_path,
              const std::string& props_csv, const std::string& payments_path) {
  const Instance inst = load_instance(input);
  ResultFile rf = parse_result(read_file(alloc_path), inst);
  std::optional<PaymentVector> pay = rf.pay;
  if (!payments_path.empty()) pay = parse_payments_file(payments_path, inst);

  int rc = 0;
  for (const std::string& prop : split_props(props_csv)) {
    const FairnessReport rep =
        eval_property(prop, inst, rf.alloc, pay ? &*pay : nullptr);
    std::cout << prop << ": " << (rep.holds ? "PASS" : "FAIL");
    if (rep.witness && !rep.witness->detail.empty()) {
      std::cout << " (" << rep.witness->detail << ")";
    }
    std::cout << "\n";
    if (!rep.holds) rc = 2;
  }
  return rc;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const std::string& input, const std::string& find_csv,
               long limit, const std::string& payments_path) {
  if (limit > 0) {
    // The enumeration budget is read from the environment by the oracle
    // module; a CLI --limit simply sets it for this process.
    setenv("CHOREQ_ENUM_LIMIT", std::to_string(limit).c_str(), 1);
  }
  const Instance inst = load_instance(input);
  std::optional<PaymentVector> pay;
  if (!payments_path.empty()) pay = parse_payments_file(payments_path, inst);

  std::vector<Property> props;
  for (const std::string& p : split_props(find_csv)) {
    if (p == "ef") props.push_back(Property::ef);
    else if (p == "ef1") props.push_back(Property::ef1);
    else if (p == "efx") props.push_back(Property::efx);
    else if (p == "pef1") props.push_back(Property::pef1);
    else if (p == "po") props.push_back(Property::po);
    else if (p == "fpo") props.push_back(Property::fpo);
    else throw input_error("unknown property: " + p +
                           " (expected ef, ef1, efx, pef1, po or fpo)");
  }
  const std::vector<Allocation> found =
      find_allocations(inst, props, pay ? &*pay : nullptr);
  std::cout << "found " << found.size() << " allocation(s) satisfying " << find_csv
            << "\n";
  for (const Allocation& alloc : found) {
    std::string line;
    for (int i = 0; i < alloc.n_agents; ++i) {
      line += inst.agents[i] + "={";
      const std::vector<int> bundle = alloc.bundle(i);
      for (std::size_t t = 0; t < bundle.size(); ++t) {
        if (t) line += ",";
        line += inst.chores[bundle[t]];
      }
      line += "} ";
    }
    std::cout << "  " << line << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const std::string& cls, int n, int m, long k, long vmax,
            std::optional<std::uint64_t> seed_flag, const std::string& output) {
  InstanceKind kind;
  if (cls == "general") kind = InstanceKind::general;
  else if (cls == "two-type") kind = InstanceKind::two_type;
  else if (cls == "bivalued") kind = InstanceKind::bivalued;
  else if (cls == "two-ary") kind = InstanceKind::two_ary;
  else if (cls == "identical") kind = InstanceKind::identical;
  else throw input_error("unknown instance class: " + cls);

  std::uint64_t seed = 1;
  if (seed_flag) {
    seed = *seed_flag;
  } else if (const char* env = std::getenv("CHOREQ_SEED")) {
    char* end = nullptr;
    seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw input_error(std::string("CHOREQ_SEED is not a number: ") + env);
    }
  }

  GenParams params;
  params.n = n;
  params.m = m;
  params.seed = seed;
  params.vmax = vmax;
  params.k = k;
  const Instance inst = generate(kind, params);
  write_file(output, serialize_instance(inst));
  std::cout << "wrote " << output << ": " << cls << " instance, n=" << n
            << ", m=" << m << ", seed=" << seed << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// repro

int cmd_repro(const std::string& example) {
  std::string name;
  for (char c : example) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const ReplayReport report = replay_fixture(name);
  for (const std::string& line : report.lines) std::cout << line << "\n";
  return report.ok ? 0 : 2;
}

}  // namespace

// ---------------------------------------------------------------------------
// entry point

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"choreq: exact fair division of indivisible chores"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
  std::string s_alg, s_input, s_output, s_trace;
  bool s_verify = false;
  solve->add_option("--alg", s_alg, "algorithm")
      ->required()
      ->check(CLI::IsMember({"three-agents", "two-type", "bivalued-balanced",
                             "bivalued-efx", "two-ary"}));
  solve->add_option("--input", s_input, "instance file")->required();
  solve->add_option("--output", s_output, "write the result file here");
  solve->add_option("--trace", s_trace, "write the solver trace here");
  solve->add_flag("--verify", s_verify, "re-verify the advertised guarantees");

  auto* check = app.add_subcommand("check", "verify properties of an allocation");
  std::string c_input, c_alloc, c_props, c_pay;
  check->add_option("--input", c_input, "instance file")->required();
  check->add_option("--alloc", c_alloc, "result file with the allocation")->required();
  check->add_option("--props", c_props, "comma-separated: ef,ef1,efx,pef1,ce,po,fpo")
      ->required();
  check->add_option("--payments", c_pay, "payments file (for pef1/ce)");

  auto* oracle = app.add_subcommand("oracle", "enumerate allocations with properties");
  std::string o_input, o_find, o_pay;
  long o_limit = 0;
  oracle->add_option("--input", o_input, "instance file")->required();
  oracle->add_option("--find", o_find, "comma-separated: ef,ef1,efx,pef1,po,fpo")
      ->required();
  oracle->add_option("--limit", o_limit, "enumeration budget override");
  oracle->add_option("--payments", o_pay, "payments file (for pef1)");

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::string g_class, g_output;
  int g_n = 3, g_m = 6;
  long g_k = 5, g_vmax = 10;
  std::optional<std::uint64_t> g_seed;
  gen->add_option("--class", g_class, "general|two-type|bivalued|two-ary|identical")
      ->required();
  gen->add_option("--agents", g_n, "number of agents")->required();
  gen->add_option("--chores", g_m, "number of chores")->required();
  gen->add_option("--k", g_k, "high value for bivalued instances");
  gen->add_option("--vmax", g_vmax, "max integer cost for sampled values");
  gen->add_option("--seed", g_seed, "random seed (default: CHOREQ_SEED or 1)");
  gen->add_option("--output", g_output, "instance file to write")->required();

  auto* repro = app.add_subcommand("repro", "replay a bundled example scenario");
  std::string r_example;
  repro->add_option("--example", r_example, "B1|B2|B3|B4|B5|B6|thm2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (solve->parsed()) return cmd_solve(s_alg, s_input, s_output, s_trace, s_verify);
    if (check->parsed()) return cmd_check(c_input, c_alloc, c_props, c_pay);
    if (oracle->parsed()) return cmd_oracle(o_input, o_find, o_limit, o_pay);
    if (gen->parsed()) return cmd_gen(g_class, g_n, g_m, g_k, g_vmax, g_seed, g_output);
    if (repro->parsed()) return cmd_repro(r_example);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const defect_error& e) {
    std::cerr << "defect: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "defect: " << e.what() << "\n";
    return 70;
  }
  return 64;
}

}  // namespace choreq
