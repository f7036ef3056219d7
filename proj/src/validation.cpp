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

#include "icar/validation.hpp"

#include <algorithm>
#include <map>

namespace icar {
namespace {

std::string join_ids(const IdSet& ids) {
  std::string out = "{";
  for (const auto& e : ids) {
    if (out.size() > 1) out += ", ";
    out += e.key;
  }
  return out + "}";
}

void check_reciprocity(const Instance& inst, const FactRule& fact,
                       std::size_t limit, ValidationReport& report) {
  const ArrowDecl& forth = fact.lhs.arrows[0];
  const ArrowDecl& back = fact.lhs.arrows[1];
  const PairSet& back_pairs = inst.relation(back);
  for (const auto& [x, y] : inst.relation(forth)) {
    if (back_pairs.contains(IdPair{y, x})) continue;
    ++report.fact_violation_count;
    if (report.fact_violations.size() < limit) {
      report.fact_violations.push_back(FactViolation{
          fact, x, y,
          x.key + " " + forth.label + " " + y.key + " but " + y.key + " " +
              back.label + " lacks " + x.key});
    }
  }
}

void check_strict(const Instance& inst, const FactRule& fact,
                  std::size_t limit, ValidationReport& report) {
  for (const auto& x : inst.ids(fact.lhs.start)) {
    const IdSet left = evaluate_path(inst, fact.lhs, {x});
    const IdSet right = evaluate_path(inst, fact.rhs, {x});
    if (left == right) continue;
    ++report.fact_violation_count;
    if (report.fact_violations.size() < limit) {
      report.fact_violations.push_back(FactViolation{
          fact, x, std::nullopt,
          "lhs reaches " + join_ids(left) + ", rhs reaches " + join_ids(right)});
    }
  }
}

bool fact_is_checkable(const KnowledgeSchema& schema, const FactRule& fact) {
  auto path_ok = [&](const PathExpr& p) {
    if (!schema.has_vertex(p.start) || !p.is_composable()) return false;
    return std::all_of(p.arrows.begin(), p.arrows.end(),
                       [&](const ArrowDecl& a) { return schema.has_arrow(a); });
  };
  if (!path_ok(fact.lhs) || !path_ok(fact.rhs)) return false;
  if (fact.lhs.start != fact.rhs.start || fact.lhs.end() != fact.rhs.end())
    return false;
  if (fact.mode == FactMode::kReciprocity)
    return fact.lhs.length() == 2 && fact.rhs.length() == 0;
  return true;
}

}  // namespace

void ValidationReport::merge(ValidationReport other) {
  auto append = [](auto& into, auto& from) {
    into.insert(into.end(), std::make_move_iterator(from.begin()),
                std::make_move_iterator(from.end()));
  };
  append(fact_violations, other.fact_violations);
  append(integrity_violations, other.integrity_violations);
  append(functional_violations, other.functional_violations);
  append(normal_form_findings, other.normal_form_findings);
  fact_violation_count += other.fact_violation_count;
  integrity_violation_count += other.integrity_violation_count;
  functional_violation_count += other.functional_violation_count;
  for (std::size_t i = 0; i < normal_form_pass.size(); ++i)
    normal_form_pass[i] = normal_form_pass[i] && other.normal_form_pass[i];
}

ValidationReport check_facts(const Instance& inst,
                             const ValidationOptions& options) {
  ValidationReport report;
  // Malformed facts are a schema problem reported by validate_schema.
  for (const auto& fact : inst.schema().facts()) {
    if (!fact_is_checkable(inst.schema(), fact)) continue;
    if (fact.mode == FactMode::kReciprocity)
      check_reciprocity(inst, fact, options.witness_limit, report);
    else
      check_strict(inst, fact, options.witness_limit, report);
  }
  for (const auto& a : inst.schema().functional_arrows()) {
    if (!inst.schema().has_arrow(a)) continue;
    std::map<EntityId, std::size_t> fanout;
    for (const auto& [s, t] : inst.relation(a)) ++fanout[s];
    for (const auto& [s, n] : fanout) {
      if (n <= 1) continue;
      ++report.functional_violation_count;
      if (report.functional_violations.size() < options.witness_limit)
        report.functional_violations.push_back(FunctionalViolation{a, s, n});
    }
  }
  return report;
}

ValidationReport check_referential_integrity(const Instance& inst,
                                             const ValidationOptions& options) {
  ValidationReport report;
  for (const auto& a : inst.schema().arrows()) {
    for (const auto& pair : inst.relation(a)) {
      for (const EntityId* end : {&pair.first, &pair.second}) {
        if (inst.contains(*end)) continue;
        ++report.integrity_violation_count;
        if (report.integrity_violations.size() < options.witness_limit)
          report.integrity_violations.push_back(
              IntegrityViolation{a, *end, pair});
      }
    }
  }
  return report;
}

ValidationReport check_normal_form(
    const Instance& inst, const std::vector<FactRule>& expected_equivalences,
    const ValidationOptions& /*options*/) {
  ValidationReport report;
  // Condition 1: every table is a set of keys in a single namespace, which
  // the instance representation guarantees.
  report.normal_form_pass[0] = true;

  for (const auto& a : inst.schema().arrows()) {
    std::set<VertexName> sources;
    std::set<VertexName> targets;
    for (const auto& [s, t] : inst.relation(a)) {
      sources.insert(s.ns);
      targets.insert(t.ns);
    }
    const bool src_ok = sources.empty() || sources == std::set<VertexName>{a.src};
    const bool tgt_ok = targets.empty() || targets == std::set<VertexName>{a.tgt};
    if (src_ok && tgt_ok) continue;
    report.normal_form_pass[1] = false;
    std::string detail = "column " + a.to_string() + " refers to tables {";
    bool first = true;
    for (const auto& t : targets) {
      detail += (first ? "" : ", ") + t;
      first = false;
    }
    detail += "}";
    if (!src_ok) detail += " from sources outside " + a.src;
    report.normal_form_findings.push_back(NormalFormFinding{2, detail});
  }

  for (const auto& fact : expected_equivalences) {
    if (inst.schema().has_fact(fact)) continue;
    report.normal_form_pass[2] = false;
    report.normal_form_findings.push_back(NormalFormFinding{
        3, "equivalence " + fact.to_string() + " is not declared as a fact"});
  }
  return report;
}

std::vector<FactRule> expected_equivalences_for(const KnowledgeSchema& schema) {
  std::vector<FactRule> out;
  for (auto& fact : icar_equivalence_facts()) {
    const bool applies =
        std::all_of(fact.lhs.arrows.begin(), fact.lhs.arrows.end(),
                    [&](const ArrowDecl& a) { return schema.has_arrow(a); });
    if (applies) out.push_back(std::move(fact));
  }
  return out;
}

ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& options) {
  ValidationReport report = check_facts(inst, options);
  report.merge(check_referential_integrity(inst, options));
  report.merge(check_normal_form(
      inst, expected_equivalences_for(inst.schema()), options));
  return report;
}

}  // namespace icar
