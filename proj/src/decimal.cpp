// Copyright 2026 The ICAR Authors
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

#include "icar/decimal.hpp"

#include <cstdlib>
#include <limits>

#include "icar/errors.hpp"

namespace icar {

Decimal Decimal::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Decimal {
    throw ParseError("invalid decimal '" + original + "'");
  };
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return fail();
  if (dot != std::string_view::npos && frac.empty() && whole.empty())
    return fail();
  // Trailing zeros never matter for the value.
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  if (frac.size() > static_cast<std::size_t>(kFractionDigits)) return fail();

  constexpr std::int64_t kMaxWhole =
      std::numeric_limits<std::int64_t>::max() / kOne - 1;
  std::int64_t units = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') return fail();
    units = units * 10 + (c - '0');
    if (units > kMaxWhole) return fail();
  }
  units *= kOne;
  std::int64_t scale = kOne / 10;
  for (char c : frac) {
    if (c < '0' || c > '9') return fail();
    units += (c - '0') * scale;
    scale /= 10;
  }
  // Reject characters hidden behind stripped zeros, e.g. "1.0x0".
  if (dot != std::string_view::npos) {
    for (char c : text.substr(dot + 1))
      if (c < '0' || c > '9') return fail();
  }
  return from_units(negative ? -units : units);
}

int Decimal::fraction_digits() const {
  std::int64_t frac = std::llabs(units_) % kOne;
  if (frac == 0) return 0;
  int digits = kFractionDigits;
  while (frac % 10 == 0) {
    frac /= 10;
    --digits;
  }
  return digits;
}

std::string Decimal::to_string() const {
  const std::int64_t magnitude = units_ < 0 ? -units_ : units_;
  std::string out = units_ < 0 ? "-" : "";
  out += std::to_string(magnitude / kOne);
  std::string frac = std::to_string(magnitude % kOne);
  frac.insert(0, kFractionDigits - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  out += '.';
  out += frac;
  return out;
}

__extension__ using Wide = __int128;

Decimal operator*(Decimal a, Decimal b) {
  const Wide product = static_cast<Wide>(a.units_) * b.units_;
  Wide quotient = product / Decimal::kOne;
  const Wide remainder = product % Decimal::kOne;
  if (2 * (remainder < 0 ? -remainder : remainder) >= Decimal::kOne)
    quotient += product < 0 ? -1 : 1;
  return Decimal::from_units(static_cast<std::int64_t>(quotient));
}

}  // namespace icar
