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

#include "icar/schema.hpp"

#include <algorithm>
#include <map>

#include "icar/errors.hpp"

namespace icar {

std::string ArrowDecl::to_string() const {
  return src + " -" + label + "-> " + tgt;
}

bool PathExpr::is_composable() const {
  VertexName at = start;
  for (const auto& a : arrows) {
    if (a.src != at) return false;
    at = a.tgt;
  }
  return true;
}

std::string PathExpr::to_string() const {
  std::string out = start;
  for (const auto& a : arrows) out += " -" + a.label + "-> " + a.tgt;
  return out;
}

PathExpr compose(const PathExpr& p, const PathExpr& q) {
  if (p.end() != q.start) throw CompositionError(p.end(), q.start);
  PathExpr out = p;
  out.arrows.insert(out.arrows.end(), q.arrows.begin(), q.arrows.end());
  return out;
}

std::string_view to_string(FactMode mode) {
  switch (mode) {
    case FactMode::kStrictEquality:
      return "strict";
    case FactMode::kReciprocity:
      return "reciprocity";
  }
  return "?";
}

std::optional<FactMode> parse_fact_mode(std::string_view text) {
  if (text == "strict") return FactMode::kStrictEquality;
  if (text == "reciprocity") return FactMode::kReciprocity;
  return std::nullopt;
}

std::string FactRule::to_string() const {
  return std::string(icar::to_string(mode)) + " " + lhs.to_string() + " = " +
         rhs.to_string();
}

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kDecimalScore:
      return "decimal-score";
    case ValueType::kText:
      return "text";
    case ValueType::kInteger:
      return "integer";
  }
  return "?";
}

std::optional<ValueType> parse_value_type(std::string_view text) {
  if (text == "decimal-score") return ValueType::kDecimalScore;
  if (text == "text") return ValueType::kText;
  if (text == "integer") return ValueType::kInteger;
  return std::nullopt;
}

const AttributeDecl* TypingSpec::find(std::string_view owner,
                                      std::string_view name) const {
  for (const auto& a : attributes)
    if (a.owner == owner && a.name == name) return &a;
  return nullptr;
}

KnowledgeSchema::KnowledgeSchema(std::string name, std::set<VertexName> vertices,
                                 std::set<ArrowDecl> arrows,
                                 std::vector<FactRule> facts,
                                 std::optional<TypingSpec> typing,
                                 std::set<ArrowDecl> functional)
    : name_(std::move(name)),
      vertices_(std::move(vertices)),
      arrows_(std::move(arrows)),
      facts_(std::move(facts)),
      typing_(std::move(typing)),
      functional_(std::move(functional)) {}

bool KnowledgeSchema::has_vertex(std::string_view v) const {
  return vertices_.find(VertexName(v)) != vertices_.end();
}

bool KnowledgeSchema::has_fact(const FactRule& fact) const {
  return std::find(facts_.begin(), facts_.end(), fact) != facts_.end();
}

std::vector<ArrowDecl> KnowledgeSchema::arrows_from(std::string_view src) const {
  std::vector<ArrowDecl> out;
  for (const auto& a : arrows_)
    if (a.src == src) out.push_back(a);
  return out;
}

std::optional<ArrowDecl> KnowledgeSchema::unique_arrow(
    std::string_view label, std::string_view src) const {
  std::optional<ArrowDecl> found;
  for (const auto& a : arrows_) {
    if (a.src != src || a.label != label) continue;
    if (found) return std::nullopt;
    found = a;
  }
  return found;
}

bool operator==(const KnowledgeSchema& a, const KnowledgeSchema& b) {
  auto sorted = [](std::vector<FactRule> facts) {
    std::sort(facts.begin(), facts.end());
    return facts;
  };
  return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_ &&
         sorted(a.facts_) == sorted(b.facts_) && a.typing_ == b.typing_ &&
         a.functional_ == b.functional_;
}

ArrowDecl arrow(std::string_view label, std::string_view src,
                std::string_view tgt) {
  return ArrowDecl{std::string(label), VertexName(src), VertexName(tgt)};
}

std::vector<FactRule> icar_equivalence_facts() {
  std::vector<FactRule> facts;
  const std::pair<std::string_view, std::string_view> reciprocal_pairs[] = {
      {label::kIsChildOf, label::kIsParentOf},
      {label::kIsParentOf, label::kIsChildOf},
  };
  for (std::string_view i : {vertex::kCwe, vertex::kCapec}) {
    const std::string_view other =
        i == vertex::kCwe ? vertex::kCapec : vertex::kCwe;
    facts.push_back(FactRule{
        PathExpr{VertexName(i),
                 {arrow(label::kHas, i, other), arrow(label::kHas, other, i)}},
        PathExpr::identity(VertexName(i)), FactMode::kReciprocity});
    for (const auto& [first, second] : reciprocal_pairs) {
      facts.push_back(FactRule{
          PathExpr{VertexName(i), {arrow(first, i, i), arrow(second, i, i)}},
          PathExpr::identity(VertexName(i)), FactMode::kReciprocity});
    }
  }
  return facts;
}

namespace {

std::set<ArrowDecl> base_arrows() {
  using namespace vertex;
  using namespace label;
  return {
      arrow(kHas, kCve, kCvss),
      arrow(kHas, kCve, kCpe),
      arrow(kHas, kCve, kCwe),
      arrow(kHas, kCwe, kCapec),
      arrow(kIsChildOf, kCwe, kCwe),
      arrow(kIsParentOf, kCwe, kCwe),
      arrow(kHas, kCapec, kCwe),
      arrow(kIsChildOf, kCapec, kCapec),
      arrow(kIsParentOf, kCapec, kCapec),
      arrow(kHas, kCapec, kTechnique),
      arrow(kIsSubTechniqueOf, kTechnique, kTechnique),
      arrow(kAccomplishesTactic, kTechnique, kTactic),
  };
}

TypingSpec base_typing() {
  return TypingSpec{
      {AttributeDecl{"score", VertexName(vertex::kCvss), ValueType::kDecimalScore}}};
}

}  // namespace

KnowledgeSchema build_base_schema() {
  using namespace vertex;
  std::set<VertexName> vertices{VertexName(kCpe),   VertexName(kCve),
                                VertexName(kCvss),  VertexName(kCwe),
                                VertexName(kCapec), VertexName(kTechnique),
                                VertexName(kTactic)};
  return KnowledgeSchema("icar-base", std::move(vertices), base_arrows(),
                         icar_equivalence_facts(), base_typing());
}

KnowledgeSchema build_icar_schema() {
  const KnowledgeSchema base = build_base_schema();
  auto vertices = base.vertices();
  vertices.insert(VertexName(vertex::kAssets));
  auto arrows = base.arrows();
  arrows.insert(arrow(label::kHas, vertex::kAssets, vertex::kCpe));
  return KnowledgeSchema("icar", std::move(vertices), std::move(arrows),
                         base.facts(), base.typing());
}

KnowledgeSchema with_importance(const KnowledgeSchema& schema) {
  if (!schema.has_vertex(vertex::kAssets))
    throw InputError("importance variant requires a DB_X vertex in schema '" +
                     schema.name() + "'");
  auto vertices = schema.vertices();
  vertices.insert(VertexName(vertex::kImportance));
  auto arrows = schema.arrows();
  arrows.insert(arrow(label::kHas, vertex::kAssets, vertex::kImportance));
  TypingSpec typing = schema.typing().value_or(TypingSpec{});
  if (!typing.find(vertex::kImportance, "weight"))
    typing.attributes.push_back(AttributeDecl{
        "weight", VertexName(vertex::kImportance), ValueType::kDecimalScore});
  return KnowledgeSchema(schema.name() + "+importance", std::move(vertices),
                         std::move(arrows), schema.facts(), std::move(typing),
                         schema.functional_arrows());
}

std::string_view to_string(SchemaFinding::Kind kind) {
  using K = SchemaFinding::Kind;
  switch (kind) {
    case K::kUndeclaredVertex:
      return "undeclared-vertex";
    case K::kNonComposablePath:
      return "non-composable-path";
    case K::kUndeclaredArrow:
      return "undeclared-arrow";
    case K::kNonParallelFact:
      return "non-parallel-fact";
    case K::kMalformedReciprocity:
      return "malformed-reciprocity";
    case K::kUnknownTypingOwner:
      return "unknown-typing-owner";
    case K::kDuplicateAttribute:
      return "duplicate-attribute";
  }
  return "?";
}

std::vector<SchemaFinding> validate_schema(const KnowledgeSchema& schema) {
  using K = SchemaFinding::Kind;
  std::vector<SchemaFinding> findings;
  auto report = [&](K kind, std::string message) {
    findings.push_back(SchemaFinding{kind, std::move(message)});
  };

  for (const auto& a : schema.arrows()) {
    for (const auto* end : {&a.src, &a.tgt}) {
      if (!schema.has_vertex(*end))
        report(K::kUndeclaredVertex, "arrow " + a.to_string() +
                                         " references undeclared vertex '" +
                                         *end + "'");
      if (a.src == a.tgt) break;
    }
  }
  for (const auto& a : schema.functional_arrows()) {
    if (!schema.has_arrow(a))
      report(K::kUndeclaredArrow,
             "functional flag on undeclared arrow " + a.to_string());
  }

  for (const auto& fact : schema.facts()) {
    bool well_formed = true;
    for (const auto* path : {&fact.lhs, &fact.rhs}) {
      if (!schema.has_vertex(path->start)) {
        report(K::kUndeclaredVertex, "fact " + fact.to_string() +
                                         " starts at undeclared vertex '" +
                                         path->start + "'");
        well_formed = false;
      }
      if (!path->is_composable()) {
        report(K::kNonComposablePath,
               "fact " + fact.to_string() + ": path '" + path->to_string() +
                   "' is not composable");
        well_formed = false;
      }
      for (const auto& a : path->arrows) {
        if (!schema.has_arrow(a)) {
          report(K::kUndeclaredArrow, "fact " + fact.to_string() +
                                          " uses undeclared arrow " +
                                          a.to_string());
          well_formed = false;
        }
      }
    }
    if (!well_formed) continue;
    if (fact.lhs.start != fact.rhs.start || fact.lhs.end() != fact.rhs.end()) {
      report(K::kNonParallelFact,
             "non-parallel fact " + fact.to_string() + ": lhs " +
                 fact.lhs.start + "->" + fact.lhs.end() + ", rhs " +
                 fact.rhs.start + "->" + fact.rhs.end());
      continue;
    }
    if (fact.mode == FactMode::kReciprocity &&
        (fact.lhs.length() != 2 || fact.rhs.length() != 0)) {
      report(K::kMalformedReciprocity,
             "reciprocity fact " + fact.to_string() +
                 " must equate a two-arrow round trip with the identity");
    }
  }

  if (schema.typing()) {
    std::set<std::pair<VertexName, std::string>> seen;
    for (const auto& attr : schema.typing()->attributes) {
      if (!schema.has_vertex(attr.owner))
        report(K::kUnknownTypingOwner, "attribute '" + attr.name +
                                           "' owned by undeclared vertex '" +
                                           attr.owner + "'");
      if (!seen.emplace(attr.owner, attr.name).second)
        report(K::kDuplicateAttribute, "attribute '" + attr.name +
                                           "' declared twice on '" +
                                           attr.owner + "'");
    }
  }
  return findings;
}

}  // namespace icar
