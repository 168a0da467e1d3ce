// Copyright 2026 The rankone Authors
//
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

#include <cctype>
#include <stdexcept>
#include <string>

#include "rankone/rational.hpp"

namespace rankone {

Rational parse_rational(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s = text.substr(b, e - b);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = false;
    std::string digits = s;
    if (digits[0] == '-' || digits[0] == '+') {
      neg = digits[0] == '-';
      digits = digits.substr(1);
      --dot;
    }
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        whole.find_first_not_of("0123456789") != std::string::npos ||
        frac.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed decimal: " + text);
    }
    mpz_class num(whole.empty() && frac.empty() ? "0" : whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  r.canonicalize();
  return r;
}

}  // namespace rankone
