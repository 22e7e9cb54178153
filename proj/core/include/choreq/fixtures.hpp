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

#include <string>
#include <vector>

#include "choreq/instance.hpp"

namespace choreq {

// Small hand-constructed instances with externally known behaviour, used by
// the repro command and the regression tests.  Each fixture's JSON text is
// embedded here and also shipped under fixtures/ as a data file; a test keeps
// the two in sync.
struct Fixture {
  std::string name;         // b1..b6, thm2
  std::string description;  // what the replay demonstrates
  std::string json;         // instance file content (canonical form)
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);  // input_error when unknown
Instance fixture_instance(const std::string& name);

// Replays the fixture's scenario and checks its documented milestones and
// post-conditions.  Returns human-readable report lines; `ok` goes false on
// any failed check.  Tie-break divergences from the fixture's historical
// trace are reported as notes, not failures, as long as every post-condition
// holds.
struct ReplayReport {
  bool ok = true;
  std::vector<std::string> lines;
};
ReplayReport replay_fixture(const std::string& name);

}  // namespace choreq
