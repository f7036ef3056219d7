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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "icar/cmdb.hpp"
#include "icar/errors.hpp"
#include "icar/feeds.hpp"
#include "icar/migration.hpp"
#include "icar/normalize.hpp"
#include "icar/queries.hpp"
#include "icar/report.hpp"
#include "icar/snapshot.hpp"
#include "icar/validation.hpp"

namespace icar::cli {
namespace {

struct Options {
  std::string snapshot;
  std::string cmdb;
  std::string out;
  bool pretty = false;
  bool strict = false;
  bool closure = false;
  bool weighted = false;
  bool permissive = false;
  std::string route = "union";
  std::optional<std::string> min;
  std::optional<std::string> max;
  std::optional<std::string> asset;
  std::optional<std::string> cve;
  std::optional<std::string> technique;
  std::optional<std::string> tactic;
  std::string level = "technique";
  std::string query;
  FeedPaths feeds;
  std::string cve_feed, cwe_feed, capec_feed, attack_feed, cpe_feed;
};

std::string snapshot_path(const Options& o) {
  if (!o.snapshot.empty()) return o.snapshot;
  if (const char* env = std::getenv("ICAR_SNAPSHOT"); env && *env) return env;
  throw InputError("no snapshot given; pass --snapshot or set ICAR_SNAPSHOT");
}

Instance load(const Options& o) {
  Instance inst = load_snapshot(snapshot_path(o), LoadOptions{o.permissive}).instance;
  if (o.cmdb.empty()) return inst;
  return merge_cmdb(inst, import_cmdb(o.cmdb)).instance;
}

void emit(const Options& o, const Json& report, std::ostream& out) {
  const std::string text = o.pretty ? render_pretty(report) : render_json(report);
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write '" + o.out + "'");
  file << text;
}

std::string require(const std::optional<std::string>& value, const char* flag,
                    const std::string& query) {
  if (!value) throw InputError(query + " needs " + flag);
  return *value;
}

Decimal bound(const std::optional<std::string>& text, const char* flag) {
  try {
    return Decimal::parse(*text);
  } catch (const Error&) {
    throw InputError(std::string(flag) + " expects a decimal, got '" + *text + "'");
  }
}

int run_query(const Options& o, std::ostream& out) {
  const Instance inst = load(o);
  const QueryOptions qo{o.closure};
  const std::string& q = o.query;
  Json params = Json::object();
  Json result;
  if (q == "q2") {
    result = ids_json(affected_assets(inst));
  } else if (q == "q3") {
    result = ids_json(is_vulnerabilities(inst));
  } else if (q == "q4") {
    const std::string x = require(o.asset, "--asset", q);
    params["asset"] = x;
    result = ids_json(asset_vulnerabilities(inst, x));
  } else if (q == "q5") {
    const std::string y = normalize_id(vertex::kCve, require(o.cve, "--cve", q));
    params["cve"] = y;
    result = ids_json(vuln_assets(inst, y));
  } else if (q == "q6") {
    const Decimal lo = o.min ? bound(o.min, "--min") : Decimal();
    const Decimal hi = o.max ? bound(o.max, "--max") : Decimal::from_int(10);
    params["min"] = Json::parse(lo.to_string());
    params["max"] = Json::parse(hi.to_string());
    result = ids_json(vulns_by_score(inst, lo, hi));
  } else if (q == "q7") {
    params["weighted"] = o.weighted;
    result = surface_json(attack_surface(inst, o.weighted));
  } else if (q == "q8") {
    if (o.technique.has_value() == o.tactic.has_value())
      throw InputError("q8 needs exactly one of --technique or --tactic");
    const Level kind = o.tactic ? Level::kTactic : Level::kTechnique;
    const std::string anchor = o.tactic ? normalize_id(vertex::kTactic, *o.tactic)
                                        : normalize_id(vertex::kTechnique, *o.technique);
    params[std::string(to_string(kind))] = anchor;
    params["closure"] = o.closure;
    result = sieve_json(differential_sieve(inst, anchor, kind, qo));
  } else if (q == "q9") {
    const std::string c = normalize_id(vertex::kCve, require(o.cve, "--cve", q));
    const Level level = parse_level(o.level);
    params["cve"] = c;
    params["level"] = std::string(to_string(level));
    params["closure"] = o.closure;
    result = cosieve_json(differential_cosieve(inst, c, level, qo));
  } else if (q == "q10") {
    const Level level = parse_level(o.level);
    params["level"] = std::string(to_string(level));
    params["closure"] = o.closure;
    result = threat_json(threat_surface(inst, level, qo));
  } else {
    throw InputError("unknown query '" + q + "'; expected q2 to q10");
  }
  emit(o, make_report(q, std::move(params), std::move(result)), out);
  return kExitOk;
}

int run_validate(const Options& o, std::ostream& out) {
  const Instance inst = load(o);
  const ValidationReport report = validate_instance(inst);
  emit(o, make_report("validate", Json::object(), validation_json(report)), out);
  return o.strict && !report.empty() ? kExitFindings : kExitOk;
}

int run_ingest(Options o, std::ostream& out, std::ostream& err) {
  auto path = [](const std::string& p) {
    return p.empty() ? std::nullopt : std::optional<std::filesystem::path>(p);
  };
  o.feeds = FeedPaths{path(o.cve_feed), path(o.cwe_feed), path(o.capec_feed),
                      path(o.attack_feed), path(o.cpe_feed)};
  if (o.out.empty()) throw InputError("ingest needs --out for the snapshot file");
  const FeedImport imported = import_feeds(o.feeds);
  for (const auto& d : imported.diagnostics)
    for (const auto& m : d.messages) err << "icar: " << d.feed << ": " << m << '\n';
  if (imported.has_file_errors()) return kExitUsage;
  const LoadResult loaded = snapshot_to_instance(imported.snapshot);
  write_snapshot(loaded.instance, o.out);
  o.out.clear();

  Json result;
  result["feeds"] = diagnostics_json(imported.diagnostics);
  result["closure_rows"] = imported.closure_rows;
  result["rows"] = loaded.instance.row_count();
  emit(o, make_report("ingest", Json::object(), std::move(result)), out);
  std::size_t malformed = 0;
  for (const auto& d : imported.diagnostics) malformed += d.malformed;
  return o.strict && malformed > 0 ? kExitFindings : kExitOk;
}

int run_merge(Options o, std::ostream& out) {
  if (o.cmdb.empty()) throw InputError("merge-cmdb needs --cmdb");
  if (o.out.empty()) throw InputError("merge-cmdb needs --out for the merged snapshot");
  const Instance inst =
      load_snapshot(snapshot_path(o), LoadOptions{o.permissive}).instance;
  const MergeRoute route =
      o.route == "join" ? MergeRoute::kJoin : MergeRoute::kUnion;
  const MergeResult merged = merge_cmdb(inst, import_cmdb(o.cmdb), route);
  write_snapshot(merged.instance, o.out);
  Json params;
  params["route"] = o.route;
  o.out.clear();
  emit(o, make_report("merge-cmdb", std::move(params), merge_json(merged)), out);
  return o.strict && !merged.unmatched.empty() ? kExitFindings : kExitOk;
}

int run_report(const Options& o, std::ostream& out) {
  const Instance inst = load(o);
  const QueryOptions qo{o.closure};
  Json result;
  result["affected_assets"] = ids_json(affected_assets(inst));
  result["vulnerabilities"] = ids_json(is_vulnerabilities(inst));
  result["attack_surface"] = surface_json(attack_surface(inst, o.weighted));
  result["threat_surface"] = threat_json(threat_surface(inst, parse_level(o.level), qo));
  Json params;
  params["weighted"] = o.weighted;
  params["level"] = o.level;
  params["closure"] = o.closure;
  emit(o, make_report("report", std::move(params), std::move(result)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Knowledge graph queries over CVE, CWE, CAPEC and ATT&CK data", "icar"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--snapshot", o.snapshot, "Snapshot file (default: $ICAR_SNAPSHOT)");
    sub->add_flag("--pretty", o.pretty, "Human-readable tables instead of JSON");
    sub->add_flag("--strict", o.strict, "Exit 1 when findings are reported");
    sub->add_flag("--permissive", o.permissive, "Drop dangling references on load");
  };

  auto* ingest = app.add_subcommand("ingest", "Build a snapshot from feed files");
  common(ingest);
  ingest->add_option("--cve", o.cve_feed, "NVD CVE JSON feed");
  ingest->add_option("--cwe", o.cwe_feed, "CWE XML catalog");
  ingest->add_option("--capec", o.capec_feed, "CAPEC XML catalog");
  ingest->add_option("--attack", o.attack_feed, "ATT&CK STIX bundle");
  ingest->add_option("--cpe", o.cpe_feed, "CPE dictionary XML");
  ingest->add_option("--out", o.out, "Snapshot path to write");

  auto* validate = app.add_subcommand("validate", "Check facts, references and normal form");
  common(validate);
  validate->add_option("--cmdb", o.cmdb, "Merge this CMDB before validating");
  validate->add_option("--out", o.out, "Write the report here");

  auto* merge = app.add_subcommand("merge-cmdb", "Attach a CMDB inventory to a snapshot");
  common(merge);
  merge->add_option("--cmdb", o.cmdb, "CMDB CSV (ID,CPE[,Importance])");
  merge->add_option("--out", o.out, "Merged snapshot path");
  merge->add_option("--route", o.route, "Pushforward: union or join")
      ->check(CLI::IsMember({"union", "join"}));

  auto* query = app.add_subcommand("query", "Run one of the queries q2 to q10");
  common(query);
  query->add_option("name", o.query, "q2 .. q10")->required();
  query->add_option("--cmdb", o.cmdb, "Merge this CMDB before querying");
  query->add_option("--out", o.out, "Write the report here");
  query->add_flag("--closure", o.closure, "Allow parent/child hops in CWE and CAPEC");
  query->add_flag("--weighted", o.weighted, "Weight scores by asset importance");
  query->add_option("--min", o.min, "Lowest score (q6)");
  query->add_option("--max", o.max, "Highest score (q6)");
  query->add_option("--asset", o.asset, "Asset id (q4)");
  query->add_option("--cve", o.cve, "CVE id (q5, q9)");
  query->add_option("--technique", o.technique, "Technique id (q8)");
  query->add_option("--tactic", o.tactic, "Tactic id (q8)");
  query->add_option("--level", o.level, "technique or tactic (q9, q10)");

  auto* report = app.add_subcommand("report", "Assets, vulnerabilities, attack and threat surface");
  common(report);
  report->add_option("--cmdb", o.cmdb, "Merge this CMDB first");
  report->add_option("--out", o.out, "Write the report here");
  report->add_flag("--closure", o.closure, "Allow parent/child hops in CWE and CAPEC");
  report->add_flag("--weighted", o.weighted, "Weight scores by asset importance");
  report->add_option("--level", o.level, "technique or tactic");

  std::vector<std::string> argv_store{"icar"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return run_ingest(o, out, err);
    if (*validate) return run_validate(o, out);
    if (*merge) return run_merge(o, out);
    if (*query) return run_query(o, out);
    return run_report(o, out);
  } catch (const std::exception& e) {
    err << "icar: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace icar::cli
