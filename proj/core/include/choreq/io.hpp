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

#include <optional>
#include <string>
#include <vector>

#include "choreq/certify.hpp"
#include "choreq/market.hpp"

namespace choreq {

// Instance files are JSON objects with keys "kind" (always "chores"),
// "agents", "chores" (string ids) and "disutility" (a cost row per agent).
// Matrix entries are JSON integers or "num/den" strings; non-integer JSON
// numbers are rejected to keep arithmetic exact.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);

// Canonical serialization: sorted keys, two-space indent, denominators of 1
// printed as plain integers, trailing newline.  parse . serialize == id and
// serialize . parse == id on canonical files.
std::string serialize_instance(const Instance& inst);

// Result files bundle the allocation with optional payments, certificates
// and a solver trace (already JSON-encoded by the caller).
struct ResultFile {
  std::string algorithm;
  Instance instance;  // echoed for self-contained checking
  Allocation alloc;
  std::optional<PaymentVector> pay;
  std::vector<FairnessReport> certificates;
  std::string trace_json;  // empty = none
};

std::string serialize_result(const ResultFile& result);
// Re-reads allocation + payments written by serialize_result against the
// given instance (ids are resolved back to dense indices).
ResultFile parse_result(const std::string& json_text, const Instance& inst);

// Command line entry point (subcommands: solve, check, oracle, gen, repro).
// Returns the process exit code: 0 success, 1 input error, 2 verification
// failure, 64 usage error, 70 internal defect.
int cli_main(int argc, const char* const* argv);

}  // namespace choreq
