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

#include "icar/report.hpp"

#include <algorithm>
#include <sstream>

namespace icar {
namespace {

Json number(Decimal d) { return Json::parse(d.to_string()); }

Json witness_map(const std::map<EntityId, Witness>& witnesses) {
  Json out = Json::object();
  for (const auto& [e, w] : witnesses) out[e.key] = witness_json(w);
  return out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_triple_list(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& step) {
           return step.is_array() && step.size() == 3;
         });
}

std::string chain_text(const Json& steps) {
  if (steps.empty()) return "(empty)";
  std::string out = scalar_text(steps[0][0]);
  for (const auto& s : steps)
    out += " -" + scalar_text(s[1]) + "-> " + scalar_text(s[2]);
  return out;
}

void table(std::ostream& os, const Json& rows, const std::string& pad) {
  std::vector<std::string> columns;
  for (const auto& [k, v] : rows.front().items()) columns.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : columns) width.push_back(c.size());
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const Json& v = row.contains(columns[i]) ? row[columns[i]] : Json();
      std::string text;
      if (v.is_array()) {
        for (const auto& x : v) text += (text.empty() ? "" : ",") + scalar_text(x);
      } else if (!v.is_null()) {
        text = scalar_text(v);
      }
      width[i] = std::max(width[i], text.size());
      line.push_back(std::move(text));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text = pad;
    for (std::size_t i = 0; i < line.size(); ++i) {
      text += line[i];
      if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    os << text << '\n';
  };
  emit(columns);
  for (const auto& line : cells) emit(line);
}

void render(std::ostream& os, const std::string& name, const Json& v,
            const std::string& pad) {
  if (v.is_object()) {
    const bool witnesses =
        !v.empty() && std::all_of(v.begin(), v.end(), is_triple_list);
    os << pad << name << ":\n";
    if (witnesses) {
      for (const auto& [k, w] : v.items()) os << pad << "  " << k << ": " << chain_text(w) << '\n';
      return;
    }
    for (const auto& [k, x] : v.items()) render(os, k, x, pad + "  ");
    return;
  }
  if (!v.is_array()) {
    os << pad << name << ": " << scalar_text(v) << '\n';
    return;
  }
  os << pad << name << " (" << v.size() << ")\n";
  if (v.empty()) return;
  if (v.front().is_object()) {
    table(os, v, pad + "  ");
  } else if (is_triple_list(v) && !v.front()[0].is_array()) {
    os << pad << "  " << chain_text(v) << '\n';
  } else {
    for (const auto& x : v) {
      if (x.is_array()) {
        std::string line;
        for (const auto& y : x) line += (line.empty() ? "" : "  ") + scalar_text(y);
        os << pad << "  " << line << '\n';
      } else {
        os << pad << "  " << scalar_text(x) << '\n';
      }
    }
  }
}

}  // namespace

Json make_report(std::string query, Json parameters, Json result) {
  Json out;
  out["query"] = std::move(query);
  out["parameters"] = parameters.is_null() ? Json::object() : std::move(parameters);
  out["result"] = std::move(result);
  return out;
}

Json ids_json(const IdSet& ids) {
  Json out = Json::array();
  for (const auto& e : ids) out.push_back(e.key);
  return out;
}

Json witness_json(const Witness& witness) {
  Json out = Json::array();
  for (const auto& s : witness) out.push_back(Json::array({s.src.key, s.label, s.tgt.key}));
  return out;
}

Json pullback_json(const CpePullback& pb) {
  Json pairs = Json::array();
  for (const auto& [a, c] : pb.pairs) pairs.push_back(Json::array({a.key, c.key}));
  Json out;
  out["pairs"] = std::move(pairs);
  out["assets"] = ids_json(pb.left);
  out["cves"] = ids_json(pb.right);
  return out;
}

Json surface_json(const SurfaceReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json row;
    row["asset"] = e.asset.key;
    row["cve"] = e.cve.key;
    row["score"] = number(e.score);
    row["weight"] = number(e.weight);
    entries.push_back(std::move(row));
  }
  Json out;
  out["entries"] = std::move(entries);
  out["total"] = number(report.total);
  return out;
}

Json sieve_json(const SieveResult& result) {
  Json out;
  out["anchor"] = result.anchor.key;
  out["cves"] = ids_json(result.cve_ids);
  out["witnesses"] = witness_map(result.witnesses);
  return out;
}

Json cosieve_json(const CosieveResult& result) {
  Json out;
  out["anchor"] = result.anchor.key;
  out["level"] = std::string(to_string(result.level));
  out["targets"] = ids_json(result.target_ids);
  out["witnesses"] = witness_map(result.witnesses);
  return out;
}

Json threat_json(const ThreatSurface& surface) {
  Json targets = Json::array();
  for (const auto& [t, cves] : surface.supporting) {
    Json row;
    row["id"] = t.key;
    row["cve_count"] = cves.size();
    row["cves"] = ids_json(cves);
    targets.push_back(std::move(row));
  }
  Json out;
  out["level"] = std::string(to_string(surface.level));
  out["targets"] = std::move(targets);
  out["total"] = surface.total;
  return out;
}

Json validation_json(const ValidationReport& report) {
  Json facts = Json::array();
  for (const auto& v : report.fact_violations) {
    Json row;
    row["fact"] = v.rule.to_string();
    row["witness"] = v.witness.to_string();
    if (v.counterpart) row["counterpart"] = v.counterpart->to_string();
    row["detail"] = v.detail;
    facts.push_back(std::move(row));
  }
  Json integrity = Json::array();
  for (const auto& v : report.integrity_violations) {
    Json row;
    row["arrow"] = v.arrow.to_string();
    row["dangling"] = v.dangling.to_string();
    row["pair"] = Json::array({v.pair.first.to_string(), v.pair.second.to_string()});
    integrity.push_back(std::move(row));
  }
  Json functional = Json::array();
  for (const auto& v : report.functional_violations) {
    Json row;
    row["arrow"] = v.arrow.to_string();
    row["source"] = v.source.to_string();
    row["image_size"] = v.image_size;
    functional.push_back(std::move(row));
  }
  Json normal = Json::array();
  for (const auto& f : report.normal_form_findings) {
    Json row;
    row["condition"] = f.condition;
    row["detail"] = f.detail;
    normal.push_back(std::move(row));
  }
  Json out;
  out["finding_count"] = report.finding_count();
  out["fact_violation_count"] = report.fact_violation_count;
  out["fact_violations"] = std::move(facts);
  out["integrity_violation_count"] = report.integrity_violation_count;
  out["integrity_violations"] = std::move(integrity);
  out["functional_violation_count"] = report.functional_violation_count;
  out["functional_violations"] = std::move(functional);
  out["normal_form_pass"] = Json::array({report.normal_form_pass[0],
                                         report.normal_form_pass[1],
                                         report.normal_form_pass[2]});
  out["normal_form_findings"] = std::move(normal);
  return out;
}

Json merge_json(const MergeResult& merge) {
  auto assets = [](const std::vector<AssetRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(r.asset_id);
    return out;
  };
  Json out;
  out["schema"] = merge.instance.schema().name();
  out["assets"] = merge.instance.table(vertex::kAssets).size();
  out["unmatched"] = assets(merge.unmatched);
  out["without_cpe"] = assets(merge.without_cpe);
  return out;
}

Json diagnostics_json(const std::vector<FeedDiagnostics>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    Json row;
    row["feed"] = d.feed;
    row["source"] = d.source;
    row["records"] = d.records;
    row["malformed"] = d.malformed;
    row["skipped"] = d.skipped;
    row["file_error"] = d.file_error;
    row["messages"] = d.messages;
    out.push_back(std::move(row));
  }
  return out;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_pretty(const Json& report) {
  std::ostringstream os;
  if (report.contains("query")) os << "query " << scalar_text(report["query"]) << '\n';
  if (report.contains("parameters"))
    for (const auto& [k, v] : report["parameters"].items())
      os << "  " << k << " = " << scalar_text(v) << '\n';
  if (report.contains("result")) {
    const Json& result = report["result"];
    if (result.is_object()) {
      for (const auto& [k, v] : result.items()) render(os, k, v, "");
    } else {
      render(os, "result", result, "");
    }
  }
  return os.str();
}

}  // namespace icar
