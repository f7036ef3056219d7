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

#ifndef ICAR_DECIMAL_HPP_
#define ICAR_DECIMAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace icar {

// Fixed-point decimal with seven fractional digits. CVSS scores carry one
// fractional digit and CMDB importance weights at most six, so a score times
// a weight is always representable exactly.
class Decimal {
 public:
  static constexpr int kFractionDigits = 7;
  static constexpr std::int64_t kOne = 10'000'000;

  constexpr Decimal() = default;

  // Accepts "[-]digits[.digits]" with at most kFractionDigits fractional
  // digits. Throws ParseError otherwise.
  static Decimal parse(std::string_view text);
  static constexpr Decimal from_units(std::int64_t units) {
    Decimal d;
    d.units_ = units;
    return d;
  }
  static constexpr Decimal from_int(std::int64_t value) {
    return from_units(value * kOne);
  }

  constexpr std::int64_t units() const { return units_; }

  // Number of significant fractional digits (0 for integers).
  int fraction_digits() const;

  // Shortest rendering with at least one fractional digit: "9.5", "13.8",
  // "0.0", "7.0".
  std::string to_string() const;
  double to_double() const { return static_cast<double>(units_) / kOne; }

  friend constexpr Decimal operator+(Decimal a, Decimal b) {
    return from_units(a.units_ + b.units_);
  }
  friend constexpr Decimal operator-(Decimal a, Decimal b) {
    return from_units(a.units_ - b.units_);
  }
  // Exact when the operands' fractional digits sum to at most seven;
  // otherwise rounds half away from zero.
  friend Decimal operator*(Decimal a, Decimal b);

  Decimal& operator+=(Decimal other) {
    units_ += other.units_;
    return *this;
  }

  friend constexpr auto operator<=>(Decimal, Decimal) = default;

 private:
  std::int64_t units_ = 0;
};

}  // namespace icar

#endif  // ICAR_DECIMAL_HPP_
