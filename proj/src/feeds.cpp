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

#include "icar/feeds.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <future>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "json.hpp"

#include "icar/errors.hpp"
#include "icar/normalize.hpp"

namespace icar {
namespace {

using json = nlohmann::json;
namespace pt = boost::property_tree;

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view local_name(std::string_view name) {
  const auto colon = name.rfind(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

std::optional<std::string> xml_attr(const pt::ptree& node, std::string_view name) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  for (const auto& [key, value] : *attrs)
    if (local_name(key) == name) return value.data();
  return std::nullopt;
}

std::vector<const pt::ptree*> xml_children(const pt::ptree& node,
                                           std::string_view name) {
  std::vector<const pt::ptree*> out;
  for (const auto& [key, child] : node)
    if (local_name(key) == name) out.push_back(&child);
  return out;
}

// Every element named `name` below `node`, without descending into matches.
void xml_find_all(const pt::ptree& node, std::string_view name,
                  std::vector<const pt::ptree*>& out) {
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
    if (local_name(key) == name)
      out.push_back(&child);
    else
      xml_find_all(child, name, out);
  }
}

// Parses XML, reporting failure through `diag`.
std::optional<pt::ptree> parse_xml(std::string_view text, FeedDiagnostics& diag) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    diag.file_error = true;
    diag.messages.push_back("XML parse error at line " + std::to_string(e.line()) +
                            ": " + e.message());
    return std::nullopt;
  }
  return tree;
}

std::optional<json> parse_json(std::string_view text, FeedDiagnostics& diag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    diag.file_error = true;
    diag.messages.push_back(std::string("JSON parse error: ") + e.what());
    return std::nullopt;
  }
}

// normalize_id, counting failures as malformed fields.
std::optional<std::string> normalized(std::string_view ns, std::string_view raw,
                                      FeedDiagnostics& diag,
                                      std::string_view context) {
  try {
    return normalize_id(ns, raw);
  } catch (const NormalizationError& e) {
    ++diag.malformed;
    diag.messages.push_back(std::string(context) + ": " + e.what());
    return std::nullopt;
  }
}

// Declares `child` isChildOf `parent` and the mirrored isParentOf.
void add_hierarchy(SnapshotAccumulator& out, std::string_view ns,
                   const std::string& child, const std::string& parent) {
  out.add_link(arrow(label::kIsChildOf, ns, ns), child, parent);
  out.add_link(arrow(label::kIsParentOf, ns, ns), parent, child);
}

// --- NVD ------------------------------------------------------------------

const json* find_path(const json& node, std::initializer_list<const char*> keys) {
  const json* at = &node;
  for (const char* k : keys) {
    if (!at->is_object()) return nullptr;
    auto it = at->find(k);
    if (it == at->end()) return nullptr;
    at = &*it;
  }
  return at;
}

void collect_cpes(const json& node, std::vector<std::string>& out) {
  if (node.is_array()) {
    for (const auto& n : node) collect_cpes(n, out);
    return;
  }
  if (!node.is_object()) return;
  for (const char* key : {"cpeMatch", "cpe_match"}) {
    auto matches = node.find(key);
    if (matches == node.end() || !matches->is_array()) continue;
    for (const auto& m : *matches) {
      if (!m.is_object()) continue;
      if (m.value("vulnerable", true) == false) continue;
      for (const char* uri_key : {"criteria", "cpe23Uri"}) {
        auto uri = m.find(uri_key);
        if (uri != m.end() && uri->is_string()) {
          out.push_back(uri->get<std::string>());
          break;
        }
      }
    }
  }
  for (const char* key : {"nodes", "children"}) {
    auto nested = node.find(key);
    if (nested != node.end()) collect_cpes(*nested, out);
  }
}

std::optional<std::string> api2_score(const json& metrics) {
  for (const char* key : {"cvssMetricV31", "cvssMetricV30", "cvssMetricV2"}) {
    auto list = metrics.find(key);
    if (list == metrics.end() || !list->is_array() || list->empty()) continue;
    const json* chosen = &list->front();
    for (const auto& m : *list)
      if (m.is_object() && m.value("type", "") == "Primary") {
        chosen = &m;
        break;
      }
    if (const json* score = find_path(*chosen, {"cvssData", "baseScore"});
        score && score->is_number())
      return score->dump();
  }
  return std::nullopt;
}

std::optional<std::string> legacy_score(const json& item) {
  for (auto keys : {std::initializer_list<const char*>{"impact", "baseMetricV3",
                                                       "cvssV3", "baseScore"},
                    std::initializer_list<const char*>{"impact", "baseMetricV2",
                                                       "cvssV2", "baseScore"}}) {
    if (const json* score = find_path(item, keys); score && score->is_number())
      return score->dump();
  }
  return std::nullopt;
}

struct NvdRecord {
  std::optional<std::string> id;
  std::vector<std::string> cwes;
  std::vector<std::string> cpes;
  std::optional<std::string> score;
};

NvdRecord read_api2_item(const json& item) {
  NvdRecord rec;
  const json* cve = find_path(item, {"cve"});
  if (!cve || !cve->is_object()) return rec;
  if (auto id = cve->find("id"); id != cve->end() && id->is_string())
    rec.id = id->get<std::string>();
  if (auto weaknesses = cve->find("weaknesses");
      weaknesses != cve->end() && weaknesses->is_array()) {
    for (const auto& w : *weaknesses) {
      const json* descs = find_path(w, {"description"});
      if (!descs || !descs->is_array()) continue;
      for (const auto& d : *descs)
        if (d.is_object() && d.contains("value") && d["value"].is_string())
          rec.cwes.push_back(d["value"].get<std::string>());
    }
  }
  if (auto configs = cve->find("configurations"); configs != cve->end())
    collect_cpes(*configs, rec.cpes);
  if (const json* metrics = find_path(*cve, {"metrics"}); metrics && metrics->is_object())
    rec.score = api2_score(*metrics);
  return rec;
}

NvdRecord read_legacy_item(const json& item) {
  NvdRecord rec;
  if (const json* id = find_path(item, {"cve", "CVE_data_meta", "ID"});
      id && id->is_string())
    rec.id = id->get<std::string>();
  if (const json* pts = find_path(item, {"cve", "problemtype", "problemtype_data"});
      pts && pts->is_array()) {
    for (const auto& pt_data : *pts) {
      const json* descs = find_path(pt_data, {"description"});
      if (!descs || !descs->is_array()) continue;
      for (const auto& d : *descs)
        if (d.is_object() && d.contains("value") && d["value"].is_string())
          rec.cwes.push_back(d["value"].get<std::string>());
    }
  }
  if (const json* configs = find_path(item, {"configurations"}))
    collect_cpes(*configs, rec.cpes);
  rec.score = legacy_score(item);
  return rec;
}

// --- ATT&CK ---------------------------------------------------------------

std::optional<std::string> attack_external_id(const json& obj) {
  auto refs = obj.find("external_references");
  if (refs == obj.end() || !refs->is_array()) return std::nullopt;
  for (const auto& r : *refs) {
    if (!r.is_object() || r.value("source_name", "") != "mitre-attack") continue;
    if (auto ext = r.find("external_id"); ext != r.end() && ext->is_string())
      return ext->get<std::string>();
  }
  return std::nullopt;
}

}  // namespace

SnapshotAccumulator::SnapshotAccumulator(
    std::shared_ptr<const KnowledgeSchema> schema)
    : schema_(std::move(schema)) {
  for (const auto& v : schema_->vertices()) tables_[v];
}

void SnapshotAccumulator::add_row(std::string_view table, const std::string& key) {
  auto it = tables_.find(VertexName(table));
  if (it == tables_.end())
    throw SchemaMismatchError("table '" + std::string(table) +
                              "' is not a vertex of schema '" + schema_->name() + "'");
  it->second[key];
}

void SnapshotAccumulator::add_link(const ArrowDecl& a, const std::string& src_key,
                                   const std::string& tgt_key) {
  if (!schema_->has_arrow(a))
    throw SchemaMismatchError("arrow " + a.to_string() + " is not declared");
  add_row(a.src, src_key);
  tables_[a.src][src_key][a].insert(tgt_key);
}

void SnapshotAccumulator::merge(const SnapshotAccumulator& other) {
  for (const auto& [table, rows] : other.tables_) {
    for (const auto& [key, links] : rows) {
      add_row(table, key);
      auto& mine = tables_[table][key];
      for (const auto& [a, targets] : links) mine[a].insert(targets.begin(), targets.end());
    }
  }
}

std::size_t SnapshotAccumulator::close_references() {
  std::vector<std::pair<VertexName, std::string>> missing;
  for (const auto& [table, rows] : tables_)
    for (const auto& [key, links] : rows)
      for (const auto& [a, targets] : links)
        for (const auto& t : targets)
          if (!tables_[a.tgt].contains(t)) missing.emplace_back(a.tgt, t);
  std::size_t added = 0;
  for (const auto& [table, key] : missing)
    added += tables_[table].try_emplace(key).second ? 1 : 0;
  return added;
}

std::size_t SnapshotAccumulator::row_count(std::string_view table) const {
  auto it = tables_.find(VertexName(table));
  return it == tables_.end() ? 0 : it->second.size();
}

bool SnapshotAccumulator::has_row(std::string_view table,
                                  const std::string& key) const {
  auto it = tables_.find(VertexName(table));
  return it != tables_.end() && it->second.contains(key);
}

std::set<std::string> SnapshotAccumulator::links(const ArrowDecl& a,
                                                 const std::string& src_key) const {
  auto table = tables_.find(a.src);
  if (table == tables_.end()) return {};
  auto row = table->second.find(src_key);
  if (row == table->second.end()) return {};
  auto targets = row->second.find(a);
  return targets == row->second.end() ? std::set<std::string>{} : targets->second;
}

Snapshot SnapshotAccumulator::to_snapshot() const {
  Snapshot snap;
  if (schema_->name() != "icar") snap.schema_variant = schema_->name();
  for (const auto& [table, rows] : tables_) {
    auto& out = snap.tables[table];
    for (const auto& [key, links] : rows) {
      SnapshotRow row{key, {}};
      for (const auto& [a, targets] : links)
        if (!targets.empty())
          row.columns[column_name(*schema_, a)].assign(targets.begin(), targets.end());
      out.push_back(std::move(row));
    }
  }
  return snap;
}

FeedDiagnostics read_nvd_cves(std::string_view text, SnapshotAccumulator& out) {
  FeedDiagnostics diag{"nvd-cve", "", 0, 0, 0, false, {}};
  if (is_blank(text)) return diag;
  auto doc = parse_json(text, diag);
  if (!doc) return diag;

  std::function<NvdRecord(const json&)> reader;
  const json* items = nullptr;
  if (doc->is_object() && doc->contains("vulnerabilities")) {
    items = &(*doc)["vulnerabilities"];
    reader = read_api2_item;
  } else if (doc->is_object() && doc->contains("CVE_Items")) {
    items = &(*doc)["CVE_Items"];
    reader = read_legacy_item;
  }
  if (!items || !items->is_array()) {
    diag.file_error = true;
    diag.messages.push_back(
        "expected an NVD document with 'vulnerabilities' or 'CVE_Items'");
    return diag;
  }

  const ArrowDecl to_cwe = arrow(label::kHas, vertex::kCve, vertex::kCwe);
  const ArrowDecl to_cpe = arrow(label::kHas, vertex::kCve, vertex::kCpe);
  const ArrowDecl to_cvss = arrow(label::kHas, vertex::kCve, vertex::kCvss);
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string where = "item " + std::to_string(i);
    const NvdRecord rec = reader((*items)[i]);
    if (!rec.id) {
      ++diag.malformed;
      diag.messages.push_back(where + ": missing CVE id");
      continue;
    }
    auto cve = normalized(vertex::kCve, *rec.id, diag, where);
    if (!cve) continue;
    ++diag.records;
    out.add_row(vertex::kCve, *cve);
    for (const auto& raw : rec.cwes) {
      if (raw.starts_with("NVD-CWE-")) {
        ++diag.skipped;
        continue;
      }
      if (auto cwe = normalized(vertex::kCwe, raw, diag, *cve))
        out.add_link(to_cwe, *cve, *cwe);
    }
    for (const auto& raw : rec.cpes)
      if (auto cpe = normalized(vertex::kCpe, raw, diag, *cve))
        out.add_link(to_cpe, *cve, *cpe);
    if (rec.score)
      if (auto score = normalized(vertex::kCvss, *rec.score, diag, *cve))
        out.add_link(to_cvss, *cve, *score);
  }
  return diag;
}

FeedDiagnostics read_cwe_catalog(std::string_view text, SnapshotAccumulator& out) {
  FeedDiagnostics diag{"cwe", "", 0, 0, 0, false, {}};
  if (is_blank(text)) return diag;
  auto tree = parse_xml(text, diag);
  if (!tree) return diag;

  std::vector<const pt::ptree*> weaknesses;
  xml_find_all(*tree, "Weakness", weaknesses);
  const ArrowDecl to_capec = arrow(label::kHas, vertex::kCwe, vertex::kCapec);
  for (const pt::ptree* w : weaknesses) {
    const auto raw_id = xml_attr(*w, "ID");
    if (!raw_id) {
      ++diag.malformed;
      diag.messages.push_back("Weakness element without ID");
      continue;
    }
    auto cwe = normalized(vertex::kCwe, *raw_id, diag, "Weakness");
    if (!cwe) continue;
    ++diag.records;
    out.add_row(vertex::kCwe, *cwe);
    for (const auto* group : xml_children(*w, "Related_Weaknesses")) {
      for (const auto* rel : xml_children(*group, "Related_Weakness")) {
        const auto nature = xml_attr(*rel, "Nature");
        const auto other_raw = xml_attr(*rel, "CWE_ID");
        if (!nature || (*nature != "ChildOf" && *nature != "ParentOf")) continue;
        if (!other_raw) {
          ++diag.malformed;
          diag.messages.push_back(*cwe + ": Related_Weakness without CWE_ID");
          continue;
        }
        auto other = normalized(vertex::kCwe, *other_raw, diag, *cwe);
        if (!other) continue;
        if (*nature == "ChildOf")
          add_hierarchy(out, vertex::kCwe, *cwe, *other);
        else
          add_hierarchy(out, vertex::kCwe, *other, *cwe);
      }
    }
    for (const auto* group : xml_children(*w, "Related_Attack_Patterns")) {
      for (const auto* rel : xml_children(*group, "Related_Attack_Pattern")) {
        const auto capec_raw = xml_attr(*rel, "CAPEC_ID");
        if (!capec_raw) {
          ++diag.malformed;
          diag.messages.push_back(*cwe + ": Related_Attack_Pattern without CAPEC_ID");
          continue;
        }
        if (auto capec = normalized(vertex::kCapec, *capec_raw, diag, *cwe))
          out.add_link(to_capec, *cwe, *capec);
      }
    }
  }
  return diag;
}

FeedDiagnostics read_capec_catalog(std::string_view text, SnapshotAccumulator& out) {
  FeedDiagnostics diag{"capec", "", 0, 0, 0, false, {}};
  if (is_blank(text)) return diag;
  auto tree = parse_xml(text, diag);
  if (!tree) return diag;

  std::vector<const pt::ptree*> patterns;
  xml_find_all(*tree, "Attack_Pattern", patterns);
  const ArrowDecl to_cwe = arrow(label::kHas, vertex::kCapec, vertex::kCwe);
  const ArrowDecl to_technique = arrow(label::kHas, vertex::kCapec, vertex::kTechnique);
  for (const pt::ptree* p : patterns) {
    const auto raw_id = xml_attr(*p, "ID");
    if (!raw_id) {
      ++diag.malformed;
      diag.messages.push_back("Attack_Pattern element without ID");
      continue;
    }
    auto capec = normalized(vertex::kCapec, *raw_id, diag, "Attack_Pattern");
    if (!capec) continue;
    ++diag.records;
    out.add_row(vertex::kCapec, *capec);
    for (const auto* group : xml_children(*p, "Related_Attack_Patterns")) {
      for (const auto* rel : xml_children(*group, "Related_Attack_Pattern")) {
        const auto nature = xml_attr(*rel, "Nature");
        const auto other_raw = xml_attr(*rel, "CAPEC_ID");
        if (!nature || (*nature != "ChildOf" && *nature != "ParentOf")) continue;
        if (!other_raw) {
          ++diag.malformed;
          diag.messages.push_back(*capec + ": Related_Attack_Pattern without CAPEC_ID");
          continue;
        }
        auto other = normalized(vertex::kCapec, *other_raw, diag, *capec);
        if (!other) continue;
        if (*nature == "ChildOf")
          add_hierarchy(out, vertex::kCapec, *capec, *other);
        else
          add_hierarchy(out, vertex::kCapec, *other, *capec);
      }
    }
    for (const auto* group : xml_children(*p, "Related_Weaknesses")) {
      for (const auto* rel : xml_children(*group, "Related_Weakness")) {
        const auto cwe_raw = xml_attr(*rel, "CWE_ID");
        if (!cwe_raw) {
          ++diag.malformed;
          diag.messages.push_back(*capec + ": Related_Weakness without CWE_ID");
          continue;
        }
        if (auto cwe = normalized(vertex::kCwe, *cwe_raw, diag, *capec))
          out.add_link(to_cwe, *capec, *cwe);
      }
    }
    for (const auto* group : xml_children(*p, "Taxonomy_Mappings")) {
      for (const auto* mapping : xml_children(*group, "Taxonomy_Mapping")) {
        if (xml_attr(*mapping, "Taxonomy_Name").value_or("") != "ATTACK") continue;
        for (const auto* entry : xml_children(*mapping, "Entry_ID")) {
          if (auto technique =
                  normalized(vertex::kTechnique, entry->data(), diag, *capec))
            out.add_link(to_technique, *capec, *technique);
        }
      }
    }
  }
  return diag;
}

FeedDiagnostics read_attack_stix(std::string_view text, SnapshotAccumulator& out) {
  FeedDiagnostics diag{"attack", "", 0, 0, 0, false, {}};
  if (is_blank(text)) return diag;
  auto doc = parse_json(text, diag);
  if (!doc) return diag;
  const json* objects = find_path(*doc, {"objects"});
  if (!objects || !objects->is_array()) {
    diag.file_error = true;
    diag.messages.push_back("expected a STIX bundle with an 'objects' array");
    return diag;
  }

  std::map<std::string, std::string> technique_by_stix;
  std::map<std::string, std::string> tactic_by_shortname;
  std::vector<std::pair<std::string, std::string>> phase_links;  // technique, shortname
  std::vector<std::pair<std::string, std::string>> sub_relations;  // stix src, stix tgt
  std::set<std::string> inactive_stix;

  for (const auto& obj : *objects) {
    if (!obj.is_object()) {
      ++diag.malformed;
      continue;
    }
    const std::string type = obj.value("type", "");
    const bool inactive =
        obj.value("revoked", false) || obj.value("x_mitre_deprecated", false);
    if (type == "attack-pattern") {
      const std::string stix_id = obj.value("id", "");
      if (inactive) {
        ++diag.skipped;
        inactive_stix.insert(stix_id);
        continue;
      }
      const auto ext = attack_external_id(obj);
      if (!ext) {
        ++diag.malformed;
        diag.messages.push_back("attack-pattern " + stix_id + " without ATT&CK id");
        continue;
      }
      auto technique = normalized(vertex::kTechnique, *ext, diag, stix_id);
      if (!technique) continue;
      ++diag.records;
      out.add_row(vertex::kTechnique, *technique);
      technique_by_stix[stix_id] = *technique;
      if (auto phases = obj.find("kill_chain_phases");
          phases != obj.end() && phases->is_array()) {
        for (const auto& ph : *phases)
          if (ph.is_object() && ph.value("kill_chain_name", "") == "mitre-attack")
            phase_links.emplace_back(*technique, ph.value("phase_name", ""));
      }
    } else if (type == "x-mitre-tactic") {
      if (inactive) {
        ++diag.skipped;
        continue;
      }
      const auto ext = attack_external_id(obj);
      const std::string shortname = obj.value("x_mitre_shortname", "");
      if (!ext || shortname.empty()) {
        ++diag.malformed;
        diag.messages.push_back("x-mitre-tactic " + obj.value("id", "") +
                                " without ATT&CK id or shortname");
        continue;
      }
      auto tactic = normalized(vertex::kTactic, *ext, diag, shortname);
      if (!tactic) continue;
      ++diag.records;
      out.add_row(vertex::kTactic, *tactic);
      tactic_by_shortname[shortname] = *tactic;
    } else if (type == "relationship" &&
               obj.value("relationship_type", "") == "subtechnique-of") {
      if (inactive) {
        ++diag.skipped;
        continue;
      }
      sub_relations.emplace_back(obj.value("source_ref", ""),
                                 obj.value("target_ref", ""));
    }
  }

  const ArrowDecl sub_of =
      arrow(label::kIsSubTechniqueOf, vertex::kTechnique, vertex::kTechnique);
  const ArrowDecl accomplishes =
      arrow(label::kAccomplishesTactic, vertex::kTechnique, vertex::kTactic);
  for (const auto& [technique, shortname] : phase_links) {
    auto tactic = tactic_by_shortname.find(shortname);
    if (tactic == tactic_by_shortname.end()) {
      ++diag.malformed;
      diag.messages.push_back(technique + ": unknown tactic phase '" + shortname + "'");
      continue;
    }
    out.add_link(accomplishes, technique, tactic->second);
  }
  std::set<std::string> linked;
  for (const auto& [src, tgt] : sub_relations) {
    auto child = technique_by_stix.find(src);
    auto parent = technique_by_stix.find(tgt);
    if (child == technique_by_stix.end() || parent == technique_by_stix.end()) {
      if (inactive_stix.contains(src) || inactive_stix.contains(tgt)) {
        ++diag.skipped;
      } else {
        ++diag.malformed;
        diag.messages.push_back("subtechnique-of " + src + " -> " + tgt +
                                " references an unknown technique");
      }
      continue;
    }
    out.add_link(sub_of, child->second, parent->second);
    linked.insert(child->second);
  }
  // Sub-techniques whose relationship object is absent from the bundle.
  for (const auto& [stix, technique] : technique_by_stix) {
    const auto dot = technique.find('.');
    if (dot == std::string::npos || linked.contains(technique)) continue;
    out.add_link(sub_of, technique, technique.substr(0, dot));
  }
  return diag;
}

FeedDiagnostics read_cpe_dictionary(std::string_view text, SnapshotAccumulator& out) {
  FeedDiagnostics diag{"cpe", "", 0, 0, 0, false, {}};
  if (is_blank(text)) return diag;
  auto tree = parse_xml(text, diag);
  if (!tree) return diag;

  std::vector<const pt::ptree*> items;
  xml_find_all(*tree, "cpe-item", items);
  for (const pt::ptree* item : items) {
    std::optional<std::string> name;
    for (const auto* cpe23 : xml_children(*item, "cpe23-item"))
      if ((name = xml_attr(*cpe23, "name"))) break;
    if (!name) name = xml_attr(*item, "name");
    if (!name) {
      ++diag.malformed;
      diag.messages.push_back("cpe-item without a name");
      continue;
    }
    if (auto cpe = normalized(vertex::kCpe, *name, diag, "cpe-item")) {
      ++diag.records;
      out.add_row(vertex::kCpe, *cpe);
    }
  }
  return diag;
}

bool FeedImport::has_file_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const FeedDiagnostics& d) { return d.file_error; });
}

FeedImport import_feeds(const FeedPaths& paths) {
  using Reader = FeedDiagnostics (*)(std::string_view, SnapshotAccumulator&);
  struct Job {
    std::filesystem::path path;
    Reader reader;
    std::string feed;
  };
  std::vector<Job> jobs;
  if (paths.cve) jobs.push_back({*paths.cve, read_nvd_cves, "nvd-cve"});
  if (paths.cwe) jobs.push_back({*paths.cwe, read_cwe_catalog, "cwe"});
  if (paths.capec) jobs.push_back({*paths.capec, read_capec_catalog, "capec"});
  if (paths.attack) jobs.push_back({*paths.attack, read_attack_stix, "attack"});
  if (paths.cpe) jobs.push_back({*paths.cpe, read_cpe_dictionary, "cpe"});

  auto schema = std::make_shared<const KnowledgeSchema>(build_icar_schema());
  struct Outcome {
    SnapshotAccumulator acc;
    FeedDiagnostics diag;
  };
  std::vector<std::future<Outcome>> running;
  for (const auto& job : jobs) {
    running.push_back(std::async(std::launch::async, [job, schema] {
      Outcome o{SnapshotAccumulator(schema), FeedDiagnostics{}};
      try {
        o.diag = job.reader(read_text_file(job.path), o.acc);
      } catch (const Error& e) {
        o.diag = FeedDiagnostics{job.feed, "", 0, 0, 0, true, {e.what()}};
      }
      o.diag.source = job.path.string();
      return o;
    }));
  }

  SnapshotAccumulator merged(schema);
  FeedImport result;
  for (auto& f : running) {
    Outcome o = f.get();
    merged.merge(o.acc);
    result.diagnostics.push_back(std::move(o.diag));
  }
  result.closure_rows = merged.close_references();
  result.snapshot = merged.to_snapshot();
  return result;
}

}  // namespace icar
