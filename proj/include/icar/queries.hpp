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

#ifndef ICAR_QUERIES_HPP_
#define ICAR_QUERIES_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "icar/decimal.hpp"
#include "icar/instance.hpp"

namespace icar {

// Fiber product DB_X x_CPE CVE with its two projections.
struct CpePullback {
  PairSet pairs;  // (asset, cve)
  IdSet left;
  IdSet right;
};

// Throws QueryError when the instance has no DB_X table.
CpePullback pullback_cpe(const Instance& inst);

IdSet affected_assets(const Instance& inst);
IdSet is_vulnerabilities(const Instance& inst);

// Unknown keys are a QueryError.
IdSet asset_vulnerabilities(const Instance& inst, std::string_view asset);
IdSet vuln_assets(const Instance& inst, std::string_view cve);

// Closed interval; requires 0 <= lo <= hi <= 10 (InputError).
IdSet vulns_by_score(const Instance& inst, Decimal lo, Decimal hi);

struct SurfaceEntry {
  EntityId asset;
  EntityId cve;
  Decimal score;
  Decimal weight;

  friend bool operator==(const SurfaceEntry&, const SurfaceEntry&) = default;
};

struct SurfaceReport {
  bool weighted = false;
  std::vector<SurfaceEntry> entries;  // sorted by (asset, cve, score)
  Decimal total;
};

// One entry per (asset, cve, score). Weights come from DB_X -Has-> IMPT_X
// and default to 1.0; an asset with several weights is a QueryError.
SurfaceReport attack_surface(const Instance& inst, bool weighted);

enum class Level { kTechnique, kTactic };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);  // InputError

struct WitnessStep {
  EntityId src;
  std::string label;
  EntityId tgt;

  friend auto operator<=>(const WitnessStep&, const WitnessStep&) = default;
};
using Witness = std::vector<WitnessStep>;

struct SieveResult {
  EntityId anchor;
  IdSet cve_ids;
  std::map<EntityId, Witness> witnesses;  // keyed by CVE
};

struct CosieveResult {
  EntityId anchor;
  Level level = Level::kTechnique;
  IdSet target_ids;
  std::map<EntityId, Witness> witnesses;  // keyed by target
};

struct QueryOptions {
  // Allow isChildOf/isParentOf hops inside CWE and CAPEC.
  bool closure = false;
};

// CVEs with a chain CVE -> CWE -> CAPEC -> Technique (-> parent technique)*
// (-> Tactic) ending at the anchor. Witnesses are shortest chains, ties
// broken by the ID sequence read from the CVE.
SieveResult differential_sieve(const Instance& inst, std::string_view anchor,
                               Level kind, const QueryOptions& options = {});

// Targets reachable from the CVE. Technique targets are folded up to
// techniques that are not sub-techniques of anything.
CosieveResult differential_cosieve(const Instance& inst, std::string_view cve,
                                   Level level, const QueryOptions& options = {});

struct ThreatSurface {
  Level level = Level::kTechnique;
  std::map<EntityId, IdSet> supporting;  // target -> CVEs of Vuln_X reaching it
  std::size_t total = 0;
};

ThreatSurface threat_surface(const Instance& inst, Level level,
                             const QueryOptions& options = {});

}  // namespace icar

#endif  // ICAR_QUERIES_HPP_
