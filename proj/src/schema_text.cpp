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

#include "icar/schema_text.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "icar/errors.hpp"

namespace icar {
namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

PathExpr parse_path(const std::vector<std::string>& toks, std::size_t begin,
                    std::size_t end, int line_no) {
  auto fail = [&](const std::string& why) -> PathExpr {
    throw ParseError("schema line " + std::to_string(line_no) + ": " + why);
  };
  if (begin >= end) return fail("empty path");
  PathExpr path = PathExpr::identity(toks[begin]);
  VertexName at = toks[begin];
  for (std::size_t i = begin + 1; i < end; i += 2) {
    const std::string& hop = toks[i];
    if (hop.size() < 4 || hop.front() != '-' || !hop.ends_with("->"))
      return fail("expected '-label->' but found '" + hop + "'");
    if (i + 1 >= end) return fail("path ends after '" + hop + "'");
    const std::string lbl = hop.substr(1, hop.size() - 3);
    path.arrows.push_back(ArrowDecl{lbl, at, toks[i + 1]});
    at = toks[i + 1];
  }
  return path;
}

}  // namespace

std::string to_schema_text(const KnowledgeSchema& schema) {
  std::ostringstream out;
  out << "schema " << schema.name() << "\n";
  for (const auto& v : schema.vertices()) out << "vertex " << v << "\n";
  for (const auto& a : schema.arrows())
    out << "arrow " << a.label << " " << a.src << " " << a.tgt << "\n";
  for (const auto& a : schema.functional_arrows())
    out << "functional " << a.label << " " << a.src << " " << a.tgt << "\n";
  if (schema.typing()) {
    auto attrs = schema.typing()->attributes;
    std::sort(attrs.begin(), attrs.end());
    for (const auto& attr : attrs)
      out << "attribute " << attr.name << " " << attr.owner << " "
          << to_string(attr.type) << "\n";
  }
  auto facts = schema.facts();
  std::sort(facts.begin(), facts.end());
  for (const auto& f : facts) out << "fact " << f.to_string() << "\n";
  return out.str();
}

KnowledgeSchema parse_schema_text(std::string_view text) {
  std::string name = "unnamed";
  std::set<VertexName> vertices;
  std::set<ArrowDecl> arrows;
  std::set<ArrowDecl> functional;
  std::vector<FactRule> facts;
  std::optional<TypingSpec> typing;

  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("schema line " + std::to_string(line_no) + ": " + why);
    };
    const std::string& kw = toks[0];
    if (kw == "schema") {
      if (toks.size() != 2) fail("expected 'schema <name>'");
      name = toks[1];
    } else if (kw == "vertex") {
      if (toks.size() != 2) fail("expected 'vertex <name>'");
      if (!vertices.insert(toks[1]).second)
        fail("duplicate vertex '" + toks[1] + "'");
    } else if (kw == "arrow" || kw == "functional") {
      if (toks.size() != 4) fail("expected '" + kw + " <label> <src> <tgt>'");
      ArrowDecl a{toks[1], toks[2], toks[3]};
      auto& target = kw == "arrow" ? arrows : functional;
      if (!target.insert(a).second)
        fail("duplicate " + kw + " " + a.to_string());
    } else if (kw == "attribute") {
      if (toks.size() != 4) fail("expected 'attribute <name> <owner> <type>'");
      auto type = parse_value_type(toks[3]);
      if (!type) fail("unknown value type '" + toks[3] + "'");
      if (!typing) typing.emplace();
      typing->attributes.push_back(AttributeDecl{toks[1], toks[2], *type});
    } else if (kw == "fact") {
      if (toks.size() < 5) fail("expected 'fact <mode> <path> = <path>'");
      auto mode = parse_fact_mode(toks[1]);
      if (!mode) fail("unknown fact mode '" + toks[1] + "'");
      auto eq = std::find(toks.begin() + 2, toks.end(), "=");
      if (eq == toks.end()) fail("fact is missing '='");
      const auto split = static_cast<std::size_t>(eq - toks.begin());
      facts.push_back(FactRule{parse_path(toks, 2, split, line_no),
                               parse_path(toks, split + 1, toks.size(), line_no),
                               *mode});
    } else {
      fail("unknown declaration '" + kw + "'");
    }
  }
  return KnowledgeSchema(std::move(name), std::move(vertices), std::move(arrows),
                         std::move(facts), std::move(typing),
                         std::move(functional));
}

}  // namespace icar
