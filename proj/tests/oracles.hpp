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

#ifndef ICAR_TESTS_ORACLES_HPP_
#define ICAR_TESTS_ORACLES_HPP_

// Brute-force reference implementations. They scan whole relations and
// share no code with the query engine.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "icar/instance.hpp"
#include "icar/queries.hpp"

namespace icar::testing::oracle {

inline PairSet pullback(const Instance& inst) {
  PairSet out;
  const auto& assets = inst.relation(arrow(label::kHas, vertex::kAssets, vertex::kCpe));
  const auto& cves = inst.relation(arrow(label::kHas, vertex::kCve, vertex::kCpe));
  for (const auto& [a, p] : assets)
    for (const auto& [c, q] : cves)
      if (p == q) out.emplace(a, c);
  return out;
}

inline IdSet filter_left(const PairSet& pairs, const std::string& asset) {
  IdSet out;
  for (const auto& [a, c] : pairs)
    if (a.key == asset) out.insert(c);
  return out;
}

inline IdSet filter_right(const PairSet& pairs, const std::string& cve) {
  IdSet out;
  for (const auto& [a, c] : pairs)
    if (c.key == cve) out.insert(a);
  return out;
}

inline std::vector<ArrowDecl> chain_arrows(bool to_tactics, bool closure) {
  using namespace vertex;
  std::vector<ArrowDecl> out = {
      arrow(label::kHas, kCve, kCwe), arrow(label::kHas, kCwe, kCapec),
      arrow(label::kHas, kCapec, kTechnique),
      arrow(label::kIsSubTechniqueOf, kTechnique, kTechnique)};
  if (to_tactics) out.push_back(arrow(label::kAccomplishesTactic, kTechnique, kTactic));
  if (closure)
    for (auto v : {kCwe, kCapec})
      for (auto l : {label::kIsChildOf, label::kIsParentOf}) out.push_back(arrow(l, v, v));
  return out;
}

// Fixpoint over relations: everything reachable from `start`.
inline IdSet reachable(const Instance& inst, const EntityId& start, bool to_tactics,
                       bool closure) {
  IdSet seen{start};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& a : chain_arrows(to_tactics, closure))
      for (const auto& [s, t] : inst.relation(a))
        if (seen.contains(s) && !seen.contains(t)) grew = seen.insert(t).second || grew;
  }
  return seen;
}

inline bool is_root_technique(const Instance& inst, const EntityId& t) {
  for (const auto& [s, p] :
       inst.relation(arrow(label::kIsSubTechniqueOf, vertex::kTechnique, vertex::kTechnique)))
    if (s == t) return false;
  return true;
}

inline IdSet cosieve(const Instance& inst, const EntityId& cve, Level level, bool closure) {
  IdSet out;
  for (const auto& e : reachable(inst, cve, level == Level::kTactic, closure)) {
    if (level == Level::kTactic && e.ns == vertex::kTactic) out.insert(e);
    if (level == Level::kTechnique && e.ns == vertex::kTechnique && is_root_technique(inst, e))
      out.insert(e);
  }
  return out;
}

inline IdSet sieve(const Instance& inst, const EntityId& anchor, bool closure) {
  IdSet out;
  for (const auto& c : inst.ids(vertex::kCve))
    if (reachable(inst, c, anchor.ns == vertex::kTactic, closure).contains(anchor))
      out.insert(c);
  return out;
}

// Shortest chain length by repeated relaxation; -1 when unreachable.
inline int distance(const Instance& inst, const EntityId& from, const EntityId& to,
                    bool closure) {
  std::map<EntityId, int> dist{{from, 0}};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : chain_arrows(to.ns == vertex::kTactic, closure))
      for (const auto& [s, t] : inst.relation(a)) {
        auto ds = dist.find(s);
        if (ds == dist.end()) continue;
        auto dt = dist.find(t);
        if (dt == dist.end() || dt->second > ds->second + 1) {
          dist[t] = ds->second + 1;
          changed = true;
        }
      }
  }
  auto it = dist.find(to);
  return it == dist.end() ? -1 : it->second;
}

// Every step is a pair of some declared relation and the steps chain up.
inline bool witness_valid(const Instance& inst, const Witness& w, const EntityId& from,
                          const EntityId& to) {
  if (w.empty()) return from == to;
  if (w.front().src != from || w.back().tgt != to) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && w[i - 1].tgt != w[i].src) return false;
    const ArrowDecl a = arrow(w[i].label, w[i].src.ns, w[i].tgt.ns);
    if (!inst.schema().has_arrow(a)) return false;
    if (!inst.relation(a).contains(IdPair{w[i].src, w[i].tgt})) return false;
  }
  return true;
}

}  // namespace icar::testing::oracle

#endif  // ICAR_TESTS_ORACLES_HPP_
