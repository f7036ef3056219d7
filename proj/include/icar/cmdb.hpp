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

#ifndef ICAR_CMDB_HPP_
#define ICAR_CMDB_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "icar/decimal.hpp"

namespace icar {

// One CMDB configuration item: asset id, its CPE and an importance weight.
struct AssetRow {
  std::string asset_id;
  std::string cpe;  // normalized (lower-cased); empty when not recorded
  Decimal importance = Decimal::from_int(1);
  std::size_t line = 0;  // 1-based line in the source file

  // Rows without a CPE are kept but cannot join the CPE dictionary.
  bool no_cpe() const { return cpe.empty(); }

  friend bool operator==(const AssetRow&, const AssetRow&) = default;
};

// Comma-separated text with a header naming ID and CPE columns (any order,
// case-insensitive) and optionally Importance. Other columns are ignored.
// Double-quoted fields follow RFC 4180. Throws FormatError on a missing
// mandatory header, an empty asset id, or an invalid importance weight.
std::vector<AssetRow> parse_cmdb(std::string_view text);

std::vector<AssetRow> import_cmdb(const std::filesystem::path& path);

}  // namespace icar

#endif  // ICAR_CMDB_HPP_
