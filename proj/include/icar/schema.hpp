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

#ifndef ICAR_SCHEMA_HPP_
#define ICAR_SCHEMA_HPP_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace icar {

using VertexName = std::string;

namespace vertex {
inline constexpr std::string_view kAssets = "DB_X";
inline constexpr std::string_view kImportance = "IMPT_X";
inline constexpr std::string_view kCpe = "CPE";
inline constexpr std::string_view kCve = "CVE";
inline constexpr std::string_view kCvss = "CVSS";
inline constexpr std::string_view kCwe = "CWE";
inline constexpr std::string_view kCapec = "CAPEC";
inline constexpr std::string_view kTechnique = "Technique";
inline constexpr std::string_view kTactic = "Tactic";
}  // namespace vertex

namespace label {
inline constexpr std::string_view kHas = "Has";
inline constexpr std::string_view kIsChildOf = "isChildOf";
inline constexpr std::string_view kIsParentOf = "isParentOf";
inline constexpr std::string_view kIsSubTechniqueOf = "isSubTechniqueOf";
inline constexpr std::string_view kAccomplishesTactic = "accomplishesTactic";
}  // namespace label

struct ArrowDecl {
  std::string label;
  VertexName src;
  VertexName tgt;

  friend auto operator<=>(const ArrowDecl&, const ArrowDecl&) = default;

  // "CVE -Has-> CWE"
  std::string to_string() const;
};

// A path in the schema graph: `start` followed by zero or more arrows.
// Composability is not enforced at construction so that malformed paths can
// be reported by validate_schema; use is_composable() or compose().
struct PathExpr {
  VertexName start;
  std::vector<ArrowDecl> arrows;

  static PathExpr identity(VertexName at) { return PathExpr{std::move(at), {}}; }
  static PathExpr of(const ArrowDecl& arrow) { return PathExpr{arrow.src, {arrow}}; }

  std::size_t length() const { return arrows.size(); }
  const VertexName& end() const {
    return arrows.empty() ? start : arrows.back().tgt;
  }
  bool is_composable() const;

  friend auto operator<=>(const PathExpr&, const PathExpr&) = default;

  // "CWE -Has-> CAPEC -Has-> CWE"; a length-0 path prints as its vertex.
  std::string to_string() const;
};

// Concatenation. Throws CompositionError when p.end() != q.start.
PathExpr compose(const PathExpr& p, const PathExpr& q);

enum class FactMode {
  // evaluate(lhs, {x}) == evaluate(rhs, {x}) for every x in the start table.
  kStrictEquality,
  // lhs = a;b with rhs the identity: (x,y) in a implies (y,x) in b.
  kReciprocity,
};

std::string_view to_string(FactMode mode);
std::optional<FactMode> parse_fact_mode(std::string_view text);

struct FactRule {
  PathExpr lhs;
  PathExpr rhs;
  FactMode mode = FactMode::kStrictEquality;

  friend auto operator<=>(const FactRule&, const FactRule&) = default;

  std::string to_string() const;
};

enum class ValueType { kDecimalScore, kText, kInteger };

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view text);

struct AttributeDecl {
  std::string name;
  VertexName owner;
  ValueType type = ValueType::kText;

  friend auto operator<=>(const AttributeDecl&, const AttributeDecl&) = default;
};

struct TypingSpec {
  std::vector<AttributeDecl> attributes;

  const AttributeDecl* find(std::string_view owner, std::string_view name) const;

  friend bool operator==(const TypingSpec&, const TypingSpec&) = default;
};

// A graph together with its declared path equivalences and attribute typing.
// Immutable once constructed; share it through shared_ptr<const ...>.
class KnowledgeSchema {
 public:
  KnowledgeSchema(std::string name, std::set<VertexName> vertices,
                  std::set<ArrowDecl> arrows, std::vector<FactRule> facts = {},
                  std::optional<TypingSpec> typing = std::nullopt,
                  std::set<ArrowDecl> functional = {});

  const std::string& name() const { return name_; }
  const std::set<VertexName>& vertices() const { return vertices_; }
  const std::set<ArrowDecl>& arrows() const { return arrows_; }
  const std::vector<FactRule>& facts() const { return facts_; }
  const std::optional<TypingSpec>& typing() const { return typing_; }
  // Arrows flagged right-unique; checked by validation when present.
  const std::set<ArrowDecl>& functional_arrows() const { return functional_; }

  bool has_vertex(std::string_view v) const;
  bool has_arrow(const ArrowDecl& arrow) const { return arrows_.contains(arrow); }
  bool has_fact(const FactRule& fact) const;
  std::vector<ArrowDecl> arrows_from(std::string_view src) const;

  // The unique arrow out of `src` with `label`, if exactly one exists.
  std::optional<ArrowDecl> unique_arrow(std::string_view label,
                                        std::string_view src) const;

  // Structural equality; the name is informational only.
  friend bool operator==(const KnowledgeSchema& a, const KnowledgeSchema& b);

 private:
  std::string name_;
  std::set<VertexName> vertices_;
  std::set<ArrowDecl> arrows_;
  std::vector<FactRule> facts_;
  std::optional<TypingSpec> typing_;
  std::set<ArrowDecl> functional_;
};

// Knowledge graph without assets: CVE, CVSS, CPE, CWE, CAPEC, Technique,
// Tactic with the reciprocity facts on CWE and CAPEC.
KnowledgeSchema build_base_schema();

// The base schema plus the asset inventory DB_X -Has-> CPE.
KnowledgeSchema build_icar_schema();

// Variant of `schema` (which must contain DB_X) with the importance side
// table IMPT_X and DB_X -Has-> IMPT_X; IMPT_X keys are decimal weights.
KnowledgeSchema with_importance(const KnowledgeSchema& schema);

// The six reciprocity facts (Has.Has, isChildOf.isParentOf,
// isParentOf.isChildOf on CWE and CAPEC).
std::vector<FactRule> icar_equivalence_facts();

// Convenience arrow constructors for the built-in schema.
ArrowDecl arrow(std::string_view label, std::string_view src,
                std::string_view tgt);

struct SchemaFinding {
  enum class Kind {
    kUndeclaredVertex,
    kNonComposablePath,
    kUndeclaredArrow,
    kNonParallelFact,
    kMalformedReciprocity,
    kUnknownTypingOwner,
    kDuplicateAttribute,
  };
  Kind kind;
  std::string message;
};

std::string_view to_string(SchemaFinding::Kind kind);

// Empty iff every arrow references declared vertices, every fact is made of
// composable, parallel paths over declared arrows, and typing is sound.
std::vector<SchemaFinding> validate_schema(const KnowledgeSchema& schema);

}  // namespace icar

#endif  // ICAR_SCHEMA_HPP_
