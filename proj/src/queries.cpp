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

#include "icar/queries.hpp"

#include <algorithm>
#include <deque>

#include "icar/errors.hpp"
#include "icar/migration.hpp"

namespace icar {
namespace {

ArrowDecl has(std::string_view src, std::string_view tgt) {
  return arrow(label::kHas, src, tgt);
}

void require_assets(const Instance& inst) {
  if (!inst.schema().has_vertex(vertex::kAssets) ||
      !inst.schema().has_arrow(has(vertex::kAssets, vertex::kCpe)))
    throw QueryError("instance over schema '" + inst.schema().name() +
                     "' has no DB_X table; merge a CMDB first");
}

// Successors that actually live in the arrow's target table.
std::vector<EntityId> typed_successors(const Instance& inst, const ArrowDecl& a,
                                       const EntityId& e) {
  std::vector<EntityId> out;
  for (const auto& t : inst.successors(a, e))
    if (t.ns == a.tgt && inst.contains(t)) out.push_back(t);
  return out;
}

std::vector<EntityId> typed_predecessors(const Instance& inst, const ArrowDecl& a,
                                         const EntityId& e) {
  std::vector<EntityId> out;
  for (const auto& s : inst.predecessors(a, e))
    if (s.ns == a.src && inst.contains(s)) out.push_back(s);
  return out;
}

struct Edge {
  EntityId to;
  std::string label;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Concrete edges usable in CVE-to-technique/tactic chains.
class ChainGraph {
 public:
  ChainGraph(const Instance& inst, bool to_tactics, bool closure) {
    std::vector<ArrowDecl> arrows = {
        has(vertex::kCve, vertex::kCwe),
        has(vertex::kCwe, vertex::kCapec),
        has(vertex::kCapec, vertex::kTechnique),
        arrow(label::kIsSubTechniqueOf, vertex::kTechnique, vertex::kTechnique),
    };
    if (to_tactics)
      arrows.push_back(
          arrow(label::kAccomplishesTactic, vertex::kTechnique, vertex::kTactic));
    if (closure) {
      for (auto v : {vertex::kCwe, vertex::kCapec}) {
        arrows.push_back(arrow(label::kIsChildOf, v, v));
        arrows.push_back(arrow(label::kIsParentOf, v, v));
      }
    }
    for (const auto& a : arrows) {
      if (!inst.schema().has_arrow(a)) continue;
      for (const auto& [s, t] : inst.relation(a)) {
        if (s.ns != a.src || t.ns != a.tgt) continue;
        if (!inst.contains(s) || !inst.contains(t)) continue;
        forward_[s].push_back(Edge{t, a.label});
        backward_[t].push_back(Edge{s, a.label});
      }
    }
    for (auto* adj : {&forward_, &backward_})
      for (auto& [node, edges] : *adj) std::sort(edges.begin(), edges.end());
  }

  const std::vector<Edge>& out(const EntityId& e) const { return find(forward_, e); }
  const std::vector<Edge>& in(const EntityId& e) const { return find(backward_, e); }

  bool has_parent_technique(const EntityId& e) const {
    const auto& edges = out(e);
    return std::any_of(edges.begin(), edges.end(), [](const Edge& x) {
      return x.label == label::kIsSubTechniqueOf;
    });
  }

  // Distances to `target` along forward edges.
  std::map<EntityId, std::size_t> distances_to(const EntityId& target) const {
    std::map<EntityId, std::size_t> dist{{target, 0}};
    std::deque<EntityId> queue{target};
    while (!queue.empty()) {
      const EntityId cur = queue.front();
      queue.pop_front();
      for (const auto& e : in(cur)) {
        if (dist.emplace(e.to, dist[cur] + 1).second) queue.push_back(e.to);
      }
    }
    return dist;
  }

  IdSet reachable_from(const EntityId& start) const {
    IdSet seen{start};
    std::deque<EntityId> queue{start};
    while (!queue.empty()) {
      const EntityId cur = queue.front();
      queue.pop_front();
      for (const auto& e : out(cur))
        if (seen.insert(e.to).second) queue.push_back(e.to);
    }
    return seen;
  }

  // Shortest path, smallest next hop first; `dist` must come from
  // distances_to(end) and contain `start`.
  Witness walk(const EntityId& start,
               const std::map<EntityId, std::size_t>& dist) const {
    Witness path;
    EntityId cur = start;
    std::size_t left = dist.at(start);
    while (left > 0) {
      for (const auto& e : out(cur)) {
        auto it = dist.find(e.to);
        if (it == dist.end() || it->second != left - 1) continue;
        path.push_back(WitnessStep{cur, e.label, e.to});
        cur = e.to;
        break;
      }
      --left;
    }
    return path;
  }

 private:
  static const std::vector<Edge>& find(
      const std::map<EntityId, std::vector<Edge>>& adj, const EntityId& e) {
    static const std::vector<Edge> kNone;
    auto it = adj.find(e);
    return it == adj.end() ? kNone : it->second;
  }

  std::map<EntityId, std::vector<Edge>> forward_;
  std::map<EntityId, std::vector<Edge>> backward_;
};

IdSet cosieve_targets(const ChainGraph& graph, const EntityId& cve, Level level) {
  IdSet targets;
  for (const auto& e : graph.reachable_from(cve)) {
    if (level == Level::kTactic) {
      if (e.ns == vertex::kTactic) targets.insert(e);
    } else if (e.ns == vertex::kTechnique && !graph.has_parent_technique(e)) {
      targets.insert(e);
    }
  }
  return targets;
}

}  // namespace

CpePullback pullback_cpe(const Instance& inst) {
  require_assets(inst);
  const ArrowDecl asset_cpe = has(vertex::kAssets, vertex::kCpe);
  const ArrowDecl cve_cpe = has(vertex::kCve, vertex::kCpe);
  CpePullback out;
  for (const auto& [asset, cpe] : inst.relation(asset_cpe)) {
    if (asset.ns != vertex::kAssets || !inst.contains(asset)) continue;
    if (cpe.ns != vertex::kCpe || !inst.contains(cpe)) continue;
    for (const auto& cve : typed_predecessors(inst, cve_cpe, cpe)) {
      out.pairs.emplace(asset, cve);
      out.left.insert(asset);
      out.right.insert(cve);
    }
  }
  return out;
}

IdSet affected_assets(const Instance& inst) { return pullback_cpe(inst).left; }

IdSet is_vulnerabilities(const Instance& inst) { return pullback_cpe(inst).right; }

IdSet asset_vulnerabilities(const Instance& inst, std::string_view asset) {
  require_assets(inst);
  const EntityId x = id(vertex::kAssets, asset);
  if (!inst.contains(x)) throw QueryError("unknown asset '" + x.key + "'");
  // Pullback of the cospan restricted to {x}.
  IdSet out;
  for (const auto& cpe : typed_successors(inst, has(vertex::kAssets, vertex::kCpe), x))
    for (const auto& cve : typed_predecessors(inst, has(vertex::kCve, vertex::kCpe), cpe))
      out.insert(cve);
  return out;
}

IdSet vuln_assets(const Instance& inst, std::string_view cve) {
  require_assets(inst);
  const EntityId y = id(vertex::kCve, cve);
  if (!inst.contains(y)) throw QueryError("unknown CVE '" + y.key + "'");
  IdSet out;
  for (const auto& cpe : typed_successors(inst, has(vertex::kCve, vertex::kCpe), y))
    for (const auto& a : typed_predecessors(inst, has(vertex::kAssets, vertex::kCpe), cpe))
      out.insert(a);
  return out;
}

IdSet vulns_by_score(const Instance& inst, Decimal lo, Decimal hi) {
  if (lo < Decimal() || hi > Decimal::from_int(10) || lo > hi)
    throw InputError("score interval [" + lo.to_string() + ", " + hi.to_string() +
                     "] is not within [0.0, 10.0]");
  const Instance kept =
      type_change_filter(inst, TypeChangeSpec::score_interval(lo, hi));
  const ArrowDecl cve_cvss = has(vertex::kCve, vertex::kCvss);
  IdSet out;
  for (const auto& cve : kept.ids(vertex::kCve))
    if (!typed_successors(kept, cve_cvss, cve).empty()) out.insert(cve);
  return out;
}

SurfaceReport attack_surface(const Instance& inst, bool weighted) {
  const CpePullback pb = pullback_cpe(inst);
  const ArrowDecl cve_cvss = has(vertex::kCve, vertex::kCvss);
  const ArrowDecl asset_weight = has(vertex::kAssets, vertex::kImportance);
  const bool has_weights = weighted && inst.schema().has_arrow(asset_weight);

  SurfaceReport report;
  report.weighted = weighted;
  std::map<EntityId, Decimal> weights;
  for (const auto& [asset, cve] : pb.pairs) {
    auto w = weights.find(asset);
    if (w == weights.end()) {
      Decimal weight = Decimal::from_int(1);
      if (has_weights) {
        const auto found = typed_successors(inst, asset_weight, asset);
        if (found.size() > 1)
          throw QueryError("asset '" + asset.key + "' has " +
                           std::to_string(found.size()) + " importance weights");
        if (found.size() == 1) weight = Decimal::parse(found.front().key);
      }
      w = weights.emplace(asset, weight).first;
    }
    std::vector<Decimal> scores;
    for (const auto& s : typed_successors(inst, cve_cvss, cve)) {
      auto value = inst.decimal_value(s);
      scores.push_back(value ? *value : Decimal::parse(s.key));
    }
    std::sort(scores.begin(), scores.end());
    for (const auto& score : scores) {
      report.entries.push_back(SurfaceEntry{asset, cve, score, w->second});
      report.total += score * w->second;
    }
  }
  return report;
}

std::string_view to_string(Level level) {
  return level == Level::kTactic ? "tactic" : "technique";
}

Level parse_level(std::string_view text) {
  if (text == "technique") return Level::kTechnique;
  if (text == "tactic") return Level::kTactic;
  throw InputError("level must be 'technique' or 'tactic', got '" +
                   std::string(text) + "'");
}

SieveResult differential_sieve(const Instance& inst, std::string_view anchor,
                               Level kind, const QueryOptions& options) {
  const EntityId t =
      id(kind == Level::kTactic ? vertex::kTactic : vertex::kTechnique, anchor);
  if (!inst.schema().has_vertex(t.ns) || !inst.contains(t))
    throw QueryError("unknown " + std::string(to_string(kind)) + " '" + t.key + "'");
  const ChainGraph graph(inst, kind == Level::kTactic, options.closure);
  const auto dist = graph.distances_to(t);
  SieveResult result{t, {}, {}};
  for (const auto& [node, d] : dist) {
    if (node.ns != vertex::kCve) continue;
    result.cve_ids.insert(node);
    result.witnesses.emplace(node, graph.walk(node, dist));
  }
  return result;
}

CosieveResult differential_cosieve(const Instance& inst, std::string_view cve,
                                   Level level, const QueryOptions& options) {
  const EntityId c = id(vertex::kCve, cve);
  if (!inst.contains(c)) throw QueryError("unknown CVE '" + c.key + "'");
  const ChainGraph graph(inst, level == Level::kTactic, options.closure);
  CosieveResult result{c, level, cosieve_targets(graph, c, level), {}};
  for (const auto& target : result.target_ids)
    result.witnesses.emplace(target, graph.walk(c, graph.distances_to(target)));
  return result;
}

ThreatSurface threat_surface(const Instance& inst, Level level,
                             const QueryOptions& options) {
  const IdSet vulns = is_vulnerabilities(inst);
  const ChainGraph graph(inst, level == Level::kTactic, options.closure);
  ThreatSurface surface;
  surface.level = level;
  for (const auto& cve : vulns)
    for (const auto& target : cosieve_targets(graph, cve, level))
      surface.supporting[target].insert(cve);
  surface.total = surface.supporting.size();
  return surface;
}

}  // namespace icar
