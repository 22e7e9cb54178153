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

#include "choreq/rational.hpp"

#include <cctype>

#include "choreq/errors.hpp"

namespace choreq {

namespace {

// "-123" or "123"; no whitespace, no signs elsewhere, at least one digit.
bool valid_integer_text(const std::string& s) {
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::string num_text = text.substr(0, slash);
  if (!valid_integer_text(num_text)) {
    throw input_error("malformed rational: '" + text + "'");
  }
  boost::multiprecision::mpz_int num(num_text);
  if (slash == std::string::npos) return Rational(num);

  const std::string den_text = text.substr(slash + 1);
  if (!valid_integer_text(den_text) || den_text[0] == '-') {
    throw input_error("malformed rational: '" + text + "'");
  }
  boost::multiprecision::mpz_int den(den_text);
  if (den == 0) throw input_error("zero denominator: '" + text + "'");
  // Division normalizes to lowest terms.
  return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& q) {
  // mpq values stay canonical (lowest terms, positive denominator) through
  // all arithmetic, so the components can be printed directly.
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace choreq
