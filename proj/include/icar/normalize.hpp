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

#ifndef ICAR_NORMALIZE_HPP_
#define ICAR_NORMALIZE_HPP_

#include <string>
#include <string_view>

namespace icar {

// Canonical key for `raw` in table `ns`:
//   CWE-<n>, CAPEC-<n>, CVE-<yyyy>-<n>, T<n>[.<sub>], TA<nnnn>
//   (bare numbers get the prefix; prefixes are case-insensitive),
//   CVSS scores with one decimal ("9.50" -> "9.5", "7" -> "7.0", range
//   [0, 10]), IMPT_X weights as shortest decimals (>= 0),
//   CPE URIs lower-cased, anything else trimmed verbatim.
// Throws NormalizationError when `raw` does not fit the namespace.
std::string normalize_id(std::string_view ns, std::string_view raw);

}  // namespace icar

#endif  // ICAR_NORMALIZE_HPP_
