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

#include "icar/instance.hpp"

#include <algorithm>

#include "icar/errors.hpp"

namespace icar {
namespace {

const std::vector<EntityId>& empty_ids() {
  static const std::vector<EntityId> kEmpty;
  return kEmpty;
}

}  // namespace

const std::set<std::string>& Instance::table(std::string_view vertex) const {
  auto it = data_->tables.find(VertexName(vertex));
  if (it == data_->tables.end())
    throw InputError("vertex '" + std::string(vertex) +
                     "' is not declared in schema '" + schema_->name() + "'");
  return it->second;
}

IdSet Instance::ids(std::string_view vertex) const {
  IdSet out;
  for (const auto& key : table(vertex)) out.insert(EntityId{VertexName(vertex), key});
  return out;
}

bool Instance::contains(const EntityId& e) const {
  auto it = data_->tables.find(e.ns);
  return it != data_->tables.end() && it->second.contains(e.key);
}

std::size_t Instance::row_count() const {
  std::size_t n = 0;
  for (const auto& [v, keys] : data_->tables) n += keys.size();
  return n;
}

const PairSet& Instance::relation(const ArrowDecl& arrow) const {
  auto it = data_->relations.find(arrow);
  if (it == data_->relations.end())
    throw InputError("arrow " + arrow.to_string() +
                     " is not declared in schema '" + schema_->name() + "'");
  return it->second;
}

const std::vector<EntityId>& Instance::successors(const ArrowDecl& arrow,
                                                  const EntityId& e) const {
  auto adj = data_->adjacency.find(arrow);
  if (adj == data_->adjacency.end()) return empty_ids();
  auto it = adj->second.forward.find(e);
  return it == adj->second.forward.end() ? empty_ids() : it->second;
}

const std::vector<EntityId>& Instance::predecessors(const ArrowDecl& arrow,
                                                    const EntityId& e) const {
  auto adj = data_->adjacency.find(arrow);
  if (adj == data_->adjacency.end()) return empty_ids();
  auto it = adj->second.backward.find(e);
  return it == adj->second.backward.end() ? empty_ids() : it->second;
}

IdSet Instance::image(const ArrowDecl& arrow, const IdSet& from) const {
  relation(arrow);  // rejects undeclared arrows
  IdSet out;
  for (const auto& e : from)
    for (const auto& t : successors(arrow, e)) out.insert(t);
  return out;
}

std::optional<Decimal> Instance::decimal_value(const EntityId& e) const {
  auto it = data_->decimals.find(e);
  if (it == data_->decimals.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.data_ == b.data_ && *a.schema_ == *b.schema_) return true;
  return *a.schema_ == *b.schema_ && a.data_->tables == b.data_->tables &&
         a.data_->relations == b.data_->relations;
}

InstanceBuilder::InstanceBuilder(std::shared_ptr<const KnowledgeSchema> schema)
    : schema_(std::move(schema)) {
  for (const auto& v : schema_->vertices()) tables_[v];
  for (const auto& a : schema_->arrows()) relations_[a];
}

InstanceBuilder::InstanceBuilder(KnowledgeSchema schema)
    : InstanceBuilder(
          std::make_shared<const KnowledgeSchema>(std::move(schema))) {}

InstanceBuilder& InstanceBuilder::add_row(std::string_view vertex,
                                          std::string key) {
  auto it = tables_.find(VertexName(vertex));
  if (it == tables_.end())
    throw InputError("vertex '" + std::string(vertex) +
                     "' is not declared in schema '" + schema_->name() + "'");
  if (key.empty())
    throw InputError("empty key for vertex '" + std::string(vertex) + "'");
  it->second.insert(std::move(key));
  return *this;
}

InstanceBuilder& InstanceBuilder::add_pair(const ArrowDecl& arrow,
                                           std::string src_key,
                                           std::string tgt_key) {
  return add_pair(arrow, EntityId{arrow.src, std::move(src_key)},
                  EntityId{arrow.tgt, std::move(tgt_key)});
}

InstanceBuilder& InstanceBuilder::add_pair(const ArrowDecl& arrow, EntityId src,
                                           EntityId tgt) {
  auto it = relations_.find(arrow);
  if (it == relations_.end())
    throw InputError("arrow " + arrow.to_string() +
                     " is not declared in schema '" + schema_->name() + "'");
  it->second.emplace(std::move(src), std::move(tgt));
  return *this;
}

InstanceBuilder& InstanceBuilder::add_all(const Instance& other) {
  for (const auto& v : other.schema().vertices()) {
    auto it = tables_.find(v);
    if (it == tables_.end()) continue;
    const auto& keys = other.table(v);
    it->second.insert(keys.begin(), keys.end());
  }
  for (const auto& a : other.schema().arrows()) {
    auto it = relations_.find(a);
    if (it == relations_.end()) continue;
    const auto& pairs = other.relation(a);
    it->second.insert(pairs.begin(), pairs.end());
  }
  return *this;
}

Instance InstanceBuilder::build() && {
  auto data = std::make_shared<Instance::Data>();
  data->tables = std::move(tables_);
  data->relations = std::move(relations_);
  for (const auto& [a, pairs] : data->relations) {
    auto& adj = data->adjacency[a];
    for (const auto& [s, t] : pairs) {
      adj.forward[s].push_back(t);
      adj.backward[t].push_back(s);
    }
    // PairSet iteration is ordered by (src, tgt), so forward lists are
    // already sorted; backward lists need it.
    for (auto& [t, sources] : adj.backward)
      std::sort(sources.begin(), sources.end());
  }
  if (schema_->typing()) {
    for (const auto& attr : schema_->typing()->attributes) {
      if (attr.type != ValueType::kDecimalScore) continue;
      auto it = data->tables.find(attr.owner);
      if (it == data->tables.end()) continue;
      for (const auto& key : it->second) {
        try {
          data->decimals.emplace(EntityId{attr.owner, key}, Decimal::parse(key));
        } catch (const ParseError&) {
          throw InputError("key '" + key + "' in table " + attr.owner +
                           " is not a decimal value");
        }
      }
    }
  }
  return Instance(std::move(schema_), std::move(data));
}

IdSet evaluate_path(const Instance& inst, const PathExpr& path,
                    const IdSet& start) {
  if (!path.is_composable())
    throw InputError("path '" + path.to_string() + "' is not composable");
  if (!inst.schema().has_vertex(path.start))
    throw InputError("path starts at undeclared vertex '" + path.start + "'");
  for (const auto& a : path.arrows)
    if (!inst.schema().has_arrow(a))
      throw InputError("path uses undeclared arrow " + a.to_string());
  for (const auto& e : start)
    if (e.ns != path.start)
      throw InputError("start id " + e.to_string() +
                       " is not in namespace '" + path.start + "'");
  IdSet current = start;
  for (const auto& a : path.arrows) {
    if (current.empty()) break;
    current = inst.image(a, current);
  }
  return current;
}

}  // namespace icar
