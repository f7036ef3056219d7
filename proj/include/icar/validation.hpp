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

#ifndef ICAR_VALIDATION_HPP_
#define ICAR_VALIDATION_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "icar/instance.hpp"
#include "icar/schema.hpp"

namespace icar {

struct FactViolation {
  FactRule rule;
  EntityId witness;
  // For reciprocity facts: the element reached whose back-reference is
  // missing.
  std::optional<EntityId> counterpart;
  std::string detail;
};

struct IntegrityViolation {
  ArrowDecl arrow;
  EntityId dangling;
  IdPair pair;
};

struct FunctionalViolation {
  ArrowDecl arrow;
  EntityId source;
  std::size_t image_size = 0;
};

struct NormalFormFinding {
  int condition = 0;  // 1, 2 or 3
  std::string detail;
};

struct ValidationOptions {
  // Witness lists are capped; the *_count fields stay exact.
  std::size_t witness_limit = 100;
};

struct ValidationReport {
  std::vector<FactViolation> fact_violations;
  std::size_t fact_violation_count = 0;
  std::vector<IntegrityViolation> integrity_violations;
  std::size_t integrity_violation_count = 0;
  std::vector<FunctionalViolation> functional_violations;
  std::size_t functional_violation_count = 0;
  std::vector<NormalFormFinding> normal_form_findings;
  // Per-condition verdicts of the normal-form section (index 0 = condition 1).
  // Only meaningful when the report came from check_normal_form.
  std::array<bool, 3> normal_form_pass{true, true, true};

  bool empty() const {
    return fact_violation_count == 0 && integrity_violation_count == 0 &&
           functional_violation_count == 0 && normal_form_findings.empty();
  }
  std::size_t finding_count() const {
    return fact_violation_count + integrity_violation_count +
           functional_violation_count + normal_form_findings.size();
  }
  void merge(ValidationReport other);
};

// Fact section: strict facts compare both sides pointwise over the start
// table; reciprocity facts require every (x, y) of the first arrow to be
// answered by (y, x) in the second. Also reports arrows flagged functional
// that map some source to more than one target.
ValidationReport check_facts(const Instance& inst,
                             const ValidationOptions& options = {});

// Integrity section: every relation pair whose endpoint is missing from its
// table.
ValidationReport check_referential_integrity(
    const Instance& inst, const ValidationOptions& options = {});

// Normal-form section. Condition 1 holds structurally (one key column per
// table). Condition 2 fails for each arrow whose pairs leave its declared
// source/target tables. Condition 3 fails for each expected equivalence not
// declared as a fact of the schema.
ValidationReport check_normal_form(
    const Instance& inst, const std::vector<FactRule>& expected_equivalences,
    const ValidationOptions& options = {});

// The reciprocity equivalences that apply to `schema`: those of
// icar_equivalence_facts() whose arrows the schema declares.
std::vector<FactRule> expected_equivalences_for(const KnowledgeSchema& schema);

// All sections, with expected_equivalences_for(inst.schema()) as the
// condition-3 reference.
ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& options = {});

}  // namespace icar

#endif  // ICAR_VALIDATION_HPP_
