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

#include "icar/normalize.hpp"

#include <algorithm>
#include <cctype>

#include "icar/decimal.hpp"
#include "icar/errors.hpp"
#include "icar/schema.hpp"

namespace icar {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// "<PREFIX>-<digits>" or bare digits.
std::string numbered(std::string_view prefix, std::string_view ns,
                     std::string_view raw, std::string_view s) {
  std::string dashed = std::string(prefix) + "-";
  if (starts_with_ci(s, dashed)) s.remove_prefix(dashed.size());
  if (!all_digits(s)) throw NormalizationError(std::string(ns), std::string(raw));
  return dashed + std::string(s);
}

}  // namespace

std::string normalize_id(std::string_view ns, std::string_view raw) {
  const std::string ns_str(ns);
  const std::string raw_str(raw);
  const std::string_view s = trim(raw);
  if (s.empty()) throw NormalizationError(ns_str, raw_str);

  if (ns == vertex::kCwe) return numbered("CWE", ns, raw, s);
  if (ns == vertex::kCapec) return numbered("CAPEC", ns, raw, s);

  if (ns == vertex::kCve) {
    std::string_view rest = s;
    if (starts_with_ci(rest, "CVE-")) rest.remove_prefix(4);
    const auto dash = rest.find('-');
    if (dash != 4 || !all_digits(rest.substr(0, 4)) ||
        !all_digits(rest.substr(5)))
      throw NormalizationError(ns_str, raw_str);
    return "CVE-" + std::string(rest);
  }

  if (ns == vertex::kTechnique) {
    std::string_view rest = s;
    if (starts_with_ci(rest, "T")) rest.remove_prefix(1);
    const auto dot = rest.find('.');
    const std::string_view main = rest.substr(0, dot);
    if (!all_digits(main)) throw NormalizationError(ns_str, raw_str);
    if (dot != std::string_view::npos && !all_digits(rest.substr(dot + 1)))
      throw NormalizationError(ns_str, raw_str);
    return "T" + std::string(rest);
  }

  if (ns == vertex::kTactic) {
    std::string_view rest = s;
    if (starts_with_ci(rest, "TA")) rest.remove_prefix(2);
    if (!all_digits(rest) || rest.size() > 4)
      throw NormalizationError(ns_str, raw_str);
    return "TA" + std::string(4 - rest.size(), '0') + std::string(rest);
  }

  if (ns == vertex::kCvss || ns == vertex::kImportance) {
    Decimal value;
    try {
      value = Decimal::parse(s);
    } catch (const ParseError&) {
      throw NormalizationError(ns_str, raw_str);
    }
    if (value < Decimal{}) throw NormalizationError(ns_str, raw_str);
    if (ns == vertex::kCvss &&
        (value > Decimal::from_int(10) || value.fraction_digits() > 1))
      throw NormalizationError(ns_str, raw_str);
    if (ns == vertex::kImportance && value.fraction_digits() > 6)
      throw NormalizationError(ns_str, raw_str);
    return value.to_string();
  }

  if (ns == vertex::kCpe) return lower(s);
  return std::string(s);
}

}  // namespace icar
