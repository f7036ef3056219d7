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

#ifndef ICAR_REPORT_HPP_
#define ICAR_REPORT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "icar/feeds.hpp"
#include "icar/migration.hpp"
#include "icar/queries.hpp"
#include "icar/validation.hpp"

namespace icar {

using Json = nlohmann::ordered_json;

// {"query": ..., "parameters": ..., "result": ...}
Json make_report(std::string query, Json parameters, Json result);

Json ids_json(const IdSet& ids);
Json witness_json(const Witness& witness);

Json pullback_json(const CpePullback& pb);
Json surface_json(const SurfaceReport& report);
Json sieve_json(const SieveResult& result);
Json cosieve_json(const CosieveResult& result);
Json threat_json(const ThreatSurface& surface);
Json validation_json(const ValidationReport& report);
Json merge_json(const MergeResult& merge);
Json diagnostics_json(const std::vector<FeedDiagnostics>& diagnostics);

// Canonical form: two-space indent, trailing newline.
std::string render_json(const Json& report);
// Plain-text tables for terminals.
std::string render_pretty(const Json& report);

}  // namespace icar

#endif  // ICAR_REPORT_HPP_
