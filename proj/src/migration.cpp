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

#include "icar/migration.hpp"

#include <algorithm>

#include "icar/errors.hpp"

namespace icar {
namespace {

// How an added vertex is populated by a pushforward.
enum class AddedKind { kSupplied, kSource, kLeaf, kMixed };

struct EmbeddingShape {
  std::set<VertexName> image_vertices;
  std::set<ArrowDecl> image_arrows;
  std::map<VertexName, AddedKind> added;
  std::vector<ArrowDecl> added_arrows;
};

void require_instance_over(const Instance& inst, const KnowledgeSchema& schema,
                           std::string_view role) {
  if (!(inst.schema() == schema))
    throw InputError("instance over schema '" + inst.schema().name() +
                     "' is not over the morphism's " + std::string(role) +
                     " schema '" + schema.name() + "'");
}

void require_valid(const SchemaMorphism& f) {
  const auto problems = validate_morphism(f);
  if (!problems.empty()) throw InputError("malformed schema morphism: " + problems.front());
}

// Checks the supported class and classifies the vertices F adds.
EmbeddingShape classify(const SchemaMorphism& f, const AttachData& attach) {
  require_valid(f);
  EmbeddingShape shape;
  for (const auto& [v, image] : f.vertex_map) {
    if (!shape.image_vertices.insert(image).second)
      throw UnsupportedMorphismError("pushforward along a morphism that is not "
                                     "injective on vertices (two vertices map to '" +
                                     image + "')");
  }
  for (const auto& [a, image] : f.arrow_map) {
    if (image.length() != 1)
      throw UnsupportedMorphismError("pushforward along a morphism sending arrow " +
                                     a.to_string() + " to a path of length " +
                                     std::to_string(image.length()));
    if (!shape.image_arrows.insert(image.arrows.front()).second)
      throw UnsupportedMorphismError(
          "pushforward along a morphism that is not injective on arrows");
  }
  for (const auto& fact : f.tgt->facts()) {
    bool from_source = false;
    for (const auto& sf : f.src->facts()) {
      if (FactRule{f.map_path(sf.lhs), f.map_path(sf.rhs), sf.mode} == fact) {
        from_source = true;
        break;
      }
    }
    if (!from_source)
      throw UnsupportedMorphismError("target fact " + fact.to_string() +
                                     " is not the image of a source fact");
  }

  for (const auto& v : f.tgt->vertices()) {
    if (shape.image_vertices.contains(v)) continue;
    shape.added[v] = attach.rows.contains(v) ? AddedKind::kSupplied : AddedKind::kSource;
  }
  for (const auto& a : f.tgt->arrows()) {
    if (shape.image_arrows.contains(a)) continue;
    shape.added_arrows.push_back(a);
    const bool src_added = shape.added.contains(a.src);
    const bool tgt_added = shape.added.contains(a.tgt);
    if (!src_added && !tgt_added)
      throw UnsupportedMorphismError("added arrow " + a.to_string() +
                                     " joins two existing vertices");
    for (const auto& [end, outgoing] : {std::pair{a.src, true}, std::pair{a.tgt, false}}) {
      auto it = shape.added.find(end);
      if (it == shape.added.end() || it->second == AddedKind::kSupplied) continue;
      if (src_added && tgt_added)
        throw UnsupportedMorphismError("added arrow " + a.to_string() +
                                       " joins two added vertices; supply their rows");
      const AddedKind want = outgoing ? AddedKind::kSource : AddedKind::kLeaf;
      // kSource doubles as "no arrows seen yet".
      if (it->second == AddedKind::kSource && !outgoing) {
        bool has_outgoing = false;
        for (const auto& other : shape.added_arrows)
          if (other.src == end) has_outgoing = true;
        it->second = has_outgoing ? AddedKind::kMixed : AddedKind::kLeaf;
      } else if (it->second != want) {
        it->second = AddedKind::kMixed;
      }
    }
  }
  for (const auto& [v, kind] : shape.added)
    if (kind == AddedKind::kMixed)
      throw UnsupportedMorphismError("added vertex '" + v +
                                     "' has both incoming and outgoing arrows");

  for (const auto& [v, rows] : attach.rows)
    if (!shape.added.contains(v))
      throw InputError("attach data for '" + v +
                       "', which is not a vertex added by the morphism");
  for (const auto& [a, pairs] : attach.pairs)
    if (std::find(shape.added_arrows.begin(), shape.added_arrows.end(), a) ==
        shape.added_arrows.end())
      throw InputError("attach data for arrow " + a.to_string() +
                       ", which is not an arrow added by the morphism");
  return shape;
}

// Copies the source instance along the embedding.
InstanceBuilder transport(const SchemaMorphism& f, const Instance& inst_src) {
  InstanceBuilder builder(f.tgt);
  for (const auto& [v, image] : f.vertex_map)
    for (const auto& key : inst_src.table(v)) builder.add_row(image, key);
  for (const auto& [a, image] : f.arrow_map)
    for (const auto& [s, t] : inst_src.relation(a))
      builder.add_pair(image.arrows.front(), s.key, t.key);
  return builder;
}

// Populates supplied vertices; returns pairs with a missing endpoint.
std::vector<UnmatchedPair> attach_supplied(const SchemaMorphism& f,
                                           const Instance& inst_src,
                                           const EmbeddingShape& shape,
                                           const AttachData& attach,
                                           InstanceBuilder& builder) {
  std::map<VertexName, VertexName> preimage;
  for (const auto& [v, image] : f.vertex_map) preimage[image] = v;
  auto has_row = [&](const VertexName& v, const std::string& key) {
    if (auto rows = attach.rows.find(v); rows != attach.rows.end())
      return rows->second.contains(key);
    if (auto src = preimage.find(v); src != preimage.end())
      return inst_src.table(src->second).contains(key);
    return false;
  };

  for (const auto& [v, rows] : attach.rows)
    for (const auto& key : rows) builder.add_row(v, key);

  std::vector<UnmatchedPair> unmatched;
  for (const auto& a : shape.added_arrows) {
    auto pairs = attach.pairs.find(a);
    if (pairs == attach.pairs.end()) continue;
    for (const auto& [s, t] : pairs->second) {
      if (has_row(a.src, s) && has_row(a.tgt, t))
        builder.add_pair(a, s, t);
      else
        unmatched.push_back(UnmatchedPair{a, s, t});
    }
  }
  return unmatched;
}

}  // namespace

SchemaMorphism SchemaMorphism::identity(std::shared_ptr<const KnowledgeSchema> schema) {
  return inclusion(schema, schema);
}

SchemaMorphism SchemaMorphism::inclusion(std::shared_ptr<const KnowledgeSchema> sub,
                                         std::shared_ptr<const KnowledgeSchema> super) {
  SchemaMorphism f{sub, super, {}, {}};
  for (const auto& v : sub->vertices()) {
    if (!super->has_vertex(v))
      throw InputError("vertex '" + v + "' of '" + sub->name() +
                       "' is missing from '" + super->name() + "'");
    f.vertex_map[v] = v;
  }
  for (const auto& a : sub->arrows()) {
    if (!super->has_arrow(a))
      throw InputError("arrow " + a.to_string() + " of '" + sub->name() +
                       "' is missing from '" + super->name() + "'");
    f.arrow_map[a] = PathExpr::of(a);
  }
  return f;
}

PathExpr SchemaMorphism::map_path(const PathExpr& path) const {
  auto start = vertex_map.find(path.start);
  if (start == vertex_map.end())
    throw InputError("vertex '" + path.start + "' has no image");
  PathExpr out = PathExpr::identity(start->second);
  for (const auto& a : path.arrows) {
    auto image = arrow_map.find(a);
    if (image == arrow_map.end())
      throw InputError("arrow " + a.to_string() + " has no image");
    out = compose(out, image->second);
  }
  return out;
}

std::vector<std::string> validate_morphism(const SchemaMorphism& f) {
  std::vector<std::string> problems;
  if (!f.src || !f.tgt) return {"morphism without source or target schema"};
  for (const auto& v : f.src->vertices()) {
    auto it = f.vertex_map.find(v);
    if (it == f.vertex_map.end())
      problems.push_back("vertex '" + v + "' has no image");
    else if (!f.tgt->has_vertex(it->second))
      problems.push_back("vertex '" + v + "' maps to undeclared '" + it->second + "'");
  }
  for (const auto& [v, image] : f.vertex_map)
    if (!f.src->has_vertex(v))
      problems.push_back("vertex map mentions unknown source vertex '" + v + "'");
  for (const auto& a : f.src->arrows()) {
    auto it = f.arrow_map.find(a);
    if (it == f.arrow_map.end()) {
      problems.push_back("arrow " + a.to_string() + " has no image");
      continue;
    }
    const PathExpr& image = it->second;
    const bool arrows_declared =
        std::all_of(image.arrows.begin(), image.arrows.end(),
                    [&](const ArrowDecl& x) { return f.tgt->has_arrow(x); });
    auto src_image = f.vertex_map.find(a.src);
    auto tgt_image = f.vertex_map.find(a.tgt);
    if (!image.is_composable() || !arrows_declared)
      problems.push_back("image of " + a.to_string() + " is not a path of '" +
                         f.tgt->name() + "'");
    else if (src_image == f.vertex_map.end() || tgt_image == f.vertex_map.end() ||
             image.start != src_image->second || image.end() != tgt_image->second)
      problems.push_back("image of " + a.to_string() + " (" + image.to_string() +
                         ") does not connect the mapped endpoints");
  }
  for (const auto& [a, image] : f.arrow_map)
    if (!f.src->has_arrow(a))
      problems.push_back("arrow map mentions unknown source arrow " + a.to_string());
  if (!problems.empty()) return problems;

  for (const auto& fact : f.src->facts()) {
    const FactRule image{f.map_path(fact.lhs), f.map_path(fact.rhs), fact.mode};
    if (image.lhs == image.rhs || f.tgt->has_fact(image)) continue;
    problems.push_back("fact " + fact.to_string() + " maps to undeclared " +
                       image.to_string());
  }
  return problems;
}

Instance delta(const SchemaMorphism& f, const Instance& inst_tgt) {
  require_valid(f);
  require_instance_over(inst_tgt, *f.tgt, "target");
  InstanceBuilder builder(f.src);
  for (const auto& [v, image] : f.vertex_map)
    for (const auto& key : inst_tgt.table(image)) builder.add_row(v, key);
  for (const auto& [a, image] : f.arrow_map) {
    for (const auto& x : inst_tgt.ids(image.start)) {
      for (const auto& y : evaluate_path(inst_tgt, image, {x}))
        builder.add_pair(a, x.key, y.key);
    }
  }
  return std::move(builder).build();
}

Migrated sigma_union(const SchemaMorphism& f, const Instance& inst_src,
                     const AttachData& attach) {
  const EmbeddingShape shape = classify(f, attach);
  require_instance_over(inst_src, *f.src, "source");
  InstanceBuilder builder = transport(f, inst_src);
  auto unmatched = attach_supplied(f, inst_src, shape, attach, builder);

  for (const auto& a : shape.added_arrows) {
    auto leaf = shape.added.find(a.tgt);
    if (leaf == shape.added.end() || leaf->second != AddedKind::kLeaf) continue;
    // Left Kan extension at a leaf: one fresh row per incoming source row.
    auto src = std::find_if(f.vertex_map.begin(), f.vertex_map.end(),
                            [&](const auto& kv) { return kv.second == a.src; });
    for (const auto& key : inst_src.table(src->first)) {
      const std::string fresh = "skolem:" + a.src + "." + a.label + ":" + key;
      builder.add_row(a.tgt, fresh);
      builder.add_pair(a, key, fresh);
    }
  }
  return Migrated{std::move(builder).build(), std::move(unmatched)};
}

Migrated pi_join(const SchemaMorphism& f, const Instance& inst_src,
                 const AttachData& attach) {
  const EmbeddingShape shape = classify(f, attach);
  require_instance_over(inst_src, *f.src, "source");
  for (const auto& [v, kind] : shape.added)
    if (kind == AddedKind::kLeaf)
      throw UnsupportedMorphismError("right pushforward to unsupplied leaf vertex '" +
                                     v + "' would invent a placeholder row");
  InstanceBuilder builder = transport(f, inst_src);
  auto unmatched = attach_supplied(f, inst_src, shape, attach, builder);

  std::map<VertexName, VertexName> preimage;
  for (const auto& [v, image] : f.vertex_map) preimage[image] = v;
  for (const auto& [v, kind] : shape.added) {
    if (kind != AddedKind::kSource) continue;
    // Right Kan extension at a source: product of the tables it points to.
    std::vector<ArrowDecl> legs;
    for (const auto& a : shape.added_arrows)
      if (a.src == v) legs.push_back(a);
    std::vector<std::vector<std::string>> tuples{{}};
    for (const auto& leg : legs) {
      std::vector<std::vector<std::string>> next;
      for (const auto& partial : tuples)
        for (const auto& key : inst_src.table(preimage.at(leg.tgt))) {
          next.push_back(partial);
          next.back().push_back(key);
        }
      tuples = std::move(next);
    }
    for (const auto& tuple : tuples) {
      std::string key = "(";
      for (std::size_t i = 0; i < tuple.size(); ++i)
        key += (i ? "," : "") + tuple[i];
      key += ")";
      builder.add_row(v, key);
      for (std::size_t i = 0; i < legs.size(); ++i)
        builder.add_pair(legs[i], key, tuple[i]);
    }
  }
  return Migrated{std::move(builder).build(), std::move(unmatched)};
}

MergeResult merge_cmdb(const Instance& inst, const std::vector<AssetRow>& assets,
                       MergeRoute route) {
  std::map<std::string, int> seen;
  for (const auto& a : assets) ++seen[a.asset_id];
  std::string duplicates;
  for (const auto& [asset, n] : seen)
    if (n > 1) duplicates += (duplicates.empty() ? "" : ", ") + asset;
  if (!duplicates.empty()) throw MergeError("duplicate asset ids: " + duplicates);

  auto base = std::make_shared<const KnowledgeSchema>(build_base_schema());
  const Instance knowledge =
      delta(SchemaMorphism::inclusion(base, inst.schema_ptr()), inst);

  const bool weighted =
      std::any_of(assets.begin(), assets.end(), [](const AssetRow& a) {
        return a.importance != Decimal::from_int(1);
      });
  auto target = std::make_shared<const KnowledgeSchema>(
      weighted ? with_importance(build_icar_schema()) : build_icar_schema());

  const ArrowDecl has_cpe = arrow(label::kHas, vertex::kAssets, vertex::kCpe);
  const ArrowDecl has_weight = arrow(label::kHas, vertex::kAssets, vertex::kImportance);
  AttachData attach;
  auto& asset_rows = attach.rows[VertexName(vertex::kAssets)];
  for (const auto& a : assets) {
    asset_rows.insert(a.asset_id);
    if (!a.no_cpe()) attach.pairs[has_cpe].emplace(a.asset_id, a.cpe);
    if (weighted) {
      attach.rows[VertexName(vertex::kImportance)].insert(a.importance.to_string());
      attach.pairs[has_weight].emplace(a.asset_id, a.importance.to_string());
    }
  }

  const SchemaMorphism f = SchemaMorphism::inclusion(base, target);
  Migrated migrated = route == MergeRoute::kUnion ? sigma_union(f, knowledge, attach)
                                                  : pi_join(f, knowledge, attach);
  MergeResult result{std::move(migrated.instance), {}, {}};
  std::set<std::string> unmatched_assets;
  for (const auto& u : migrated.unmatched)
    if (u.arrow == has_cpe) unmatched_assets.insert(u.src_key);
  for (const auto& a : assets) {
    if (a.no_cpe())
      result.without_cpe.push_back(a);
    else if (unmatched_assets.contains(a.asset_id))
      result.unmatched.push_back(a);
  }
  return result;
}

TypeChangeSpec TypeChangeSpec::score_interval(Decimal lo, Decimal hi) {
  return TypeChangeSpec{
      VertexName(vertex::kCvss), "score", [lo, hi](const AttributeValue& v) {
        const Decimal* d = std::get_if<Decimal>(&v);
        return d && lo <= *d && *d <= hi;
      }};
}

Instance type_change_filter(const Instance& inst, const TypeChangeSpec& spec) {
  const KnowledgeSchema& schema = inst.schema();
  const AttributeDecl* attr =
      schema.typing() ? schema.typing()->find(spec.owner, spec.attribute) : nullptr;
  if (!attr)
    throw TypingError("attribute '" + spec.attribute + "' is not declared on '" +
                      spec.owner + "' in schema '" + schema.name() + "'");
  if (!spec.predicate) throw TypingError("type change without a predicate");

  auto value_of = [&](const std::string& key) -> AttributeValue {
    switch (attr->type) {
      case ValueType::kDecimalScore:
        return Decimal::parse(key);
      case ValueType::kInteger:
        return static_cast<std::int64_t>(std::stoll(key));
      case ValueType::kText:
        break;
    }
    return key;
  };

  std::set<std::string> removed;
  for (const auto& key : inst.table(spec.owner)) {
    bool keep = false;
    try {
      keep = spec.predicate(value_of(key));
    } catch (const std::exception&) {
      throw TypingError("value '" + key + "' of " + spec.owner + "." +
                        spec.attribute + " does not have type " +
                        std::string(to_string(attr->type)));
    }
    if (!keep) removed.insert(key);
  }

  auto gone = [&](const EntityId& e) {
    return e.ns == spec.owner && removed.contains(e.key);
  };
  InstanceBuilder builder(inst.schema_ptr());
  for (const auto& v : schema.vertices())
    for (const auto& key : inst.table(v))
      if (!(v == spec.owner && removed.contains(key))) builder.add_row(v, key);
  for (const auto& a : schema.arrows())
    for (const auto& [s, t] : inst.relation(a))
      if (!gone(s) && !gone(t)) builder.add_pair(a, s, t);
  return std::move(builder).build();
}

}  // namespace icar
