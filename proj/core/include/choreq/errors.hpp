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

#include <stdexcept>
#include <string>

namespace choreq {

// Raised when the caller hands us something malformed or out of contract
// (bad file, bad matrix shape, instance outside an algorithm's precondition).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant breaks or a step cap is exceeded.  These
// indicate a bug in this library, never a user mistake: the algorithms carry
// termination proofs, so the caps exist purely as defect detectors.
class defect_error : public std::logic_error {
 public:
  explicit defect_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace choreq
