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

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace choreq {

// Every quantity in this library (costs, payments, pivot ratios) is an exact
// rational.  No floats, no epsilons: equality tests such as "is this chore's
// pain-per-buck ratio exactly the agent's minimum" are meaningful only with
// exact arithmetic.  Expression templates are disabled so that deduced types
// (auto, lambda returns) are always materialized values, never lazy
// expressions holding references to dead temporaries.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

// Parses "7", "-7" or "7/3".  Whitespace is not accepted.  Throws input_error
// on malformed text or a zero denominator.  The result is normalized.
Rational parse_rational(const std::string& text);

// Canonical form: lowest terms, "n" when the denominator is 1, else "n/d".
std::string format_rational(const Rational& q);

}  // namespace choreq
