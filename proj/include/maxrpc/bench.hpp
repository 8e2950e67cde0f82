// Copyright 2026 The maxrpc Authors
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
//
// Benchmark harness: manifests, per-instance runs, per-class aggregates,
// CSV and markdown reports.

#ifndef MAXRPC_BENCH_HPP_
#define MAXRPC_BENCH_HPP_

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "maxrpc/generators.hpp"
#include "maxrpc/instance.hpp"
#include "maxrpc/io.hpp"
#include "maxrpc/oracle.hpp"
#include "maxrpc/propagator.hpp"
#include "maxrpc/search.hpp"
#include "maxrpc/session.hpp"

namespace maxrpc {

// ---- algorithm ids ---------------------------------------------------------

struct AlgorithmSpec {
  std::string id;  // canonical, e.g. "lmaxrpc3rm+H"
  PropagatorConfig config;
};

/// Parses ac3rm, [l]maxrpc3, [l]maxrpc3rm, [l]maxrpc2, [l]maxrpcrm with an
/// optional "+H" suffix (dom/wdeg for the list and Case 1).
inline AlgorithmSpec parse_algorithm(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  bool plus_h = false;
  if (s.size() > 2 && s.ends_with("+h")) {
    plus_h = true;
    s.resize(s.size() - 2);
  }
  bool light = false;
  std::string base = s;
  if (base.starts_with("lmaxrpc")) {
    light = true;
    base.erase(0, 1);
  }
  static const std::map<std::string, Algorithm> names = {
      {"ac3rm", Algorithm::ac3rm},         {"maxrpc3", Algorithm::maxrpc3},
      {"maxrpc3rm", Algorithm::maxrpc3rm}, {"maxrpc2", Algorithm::maxrpc2_emu},
      {"maxrpcrm", Algorithm::maxrpcrm_emu},
  };
  auto it = names.find(base);
  if (it == names.end() || (light && it->second == Algorithm::ac3rm))
    throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
  AlgorithmSpec spec;
  spec.config = PropagatorConfig::make(it->second, light, plus_h);
  spec.id = (light ? "l" : "") + it->first + (plus_h ? "+H" : "");
  return spec;
}

inline bool is_emulation(Algorithm a) {
  return a == Algorithm::maxrpc2_emu || a == Algorithm::maxrpcrm_emu;
}

// ---- class tags ------------------------------------------------------------

/// Benchmark family from generator provenance or the instance/file name.
inline std::string infer_class(const InstanceDoc& doc) {
  if (auto it = doc.provenance.find("generator"); it != doc.provenance.end()) {
    if (it->second == "modelb") return "modelB";
    if (it->second == "modelb-forced") return "modelB-forced";
    if (it->second == "geometric") return "geometric";
    if (it->second == "queens") return "queens";
  }
  std::string name = doc.name;
  if (auto it = doc.provenance.find("file"); it != doc.provenance.end()) {
    const auto slash = it->second.find_last_of('/');
    name = it->second.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  auto starts = [&](std::string_view p) { return low.starts_with(p); };
  auto has = [&](std::string_view p) { return low.find(p) != std::string::npos; };
  if (starts("scen") || starts("graph")) return "RLFAP";
  if (starts("qcp") || starts("qwh") || starts("bqwh")) return "quasigroup";
  if (has("queensknights") || has("queens-knights") || starts("qk")) return "queens-knights";
  if (has("blackhole")) return "blackHole";
  if (has("driver")) return "driver";
  if (has("haystack")) return "haystacks";
  if (starts("js-") || starts("e0ddr") || starts("enddr") || starts("os-") || has("taillard"))
    return "job-shop";
  if (starts("rand-2-") || starts("modelb")) return "modelB";
  if (starts("geo")) return "geometric";
  if (starts("queens")) return "queens";
  return "other";
}

// ---- manifest --------------------------------------------------------------

enum class BenchMode : std::uint8_t { preprocess, search };
enum class ReportFormat : std::uint8_t { csv, markdown };

inline ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

/// One entry of the instance list: a file, a glob, or a generator call.
struct InstanceSource {
  enum class Kind : std::uint8_t { file, glob, generator } kind = Kind::file;
  std::string path;      // file or glob pattern
  nlohmann::json params;  // generator parameters
};

struct BenchManifest {
  BenchMode mode = BenchMode::search;
  std::vector<InstanceSource> instances;
  std::vector<AlgorithmSpec> algorithms;
  Branching branching = Branching::binary;
  VarOrder var_order = VarOrder::dom_wdeg;
  std::uint64_t node_limit = 0;
  double time_limit = 0.0;
  int repetitions = 1;
  bool oracle_check = false;
  ReportFormat format = ReportFormat::csv;
  std::string output = "-";
};

namespace bench_detail {

inline std::optional<HeuristicId> opt_heuristic(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const std::string s = j.at(key).get<std::string>();
  if (s == "none") return std::nullopt;
  return parse_heuristic(s);
}

inline AlgorithmSpec algorithm_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_algorithm(j.get<std::string>());
  AlgorithmSpec spec = parse_algorithm(j.at("id").get<std::string>());
  PropagatorConfig& c = spec.config;
  bool custom = false;
  if (j.contains("queue_heuristic")) {
    c.queue_heuristic = parse_heuristic(j.at("queue_heuristic").get<std::string>());
    custom = true;
  }
  for (auto [key, slot] : {std::pair{"case1", &c.case1}, std::pair{"case2", &c.case2},
                           std::pair{"case3", &c.case3}, std::pair{"case4", &c.case4}}) {
    if (j.contains(key)) {
      *slot = opt_heuristic(j, key);
      custom = true;
    }
  }
  if (j.contains("shortcuts")) {
    c.use_last_ac_shortcuts = j.at("shortcuts").get<bool>();
    custom = true;
  }
  if (j.contains("label"))
    spec.id = j.at("label").get<std::string>();
  else if (custom)
    spec.id += "*";
  c.validate();
  return spec;
}

}  // namespace bench_detail

/// Reads a JSON manifest:
/// {"mode": "search"|"preprocess",
///  "instances": [{"file": p} | {"glob": pattern} |
///                {"generator": "modelb"|"geometric"|"queens", ...}],
///  "algorithms": ["lmaxrpc3rm", {"id": "maxrpc3", "queue_heuristic": "dom"}],
///  "branching", "var_order", "node_limit", "time_limit", "repetitions",
///  "oracle_check", "format", "output"}
inline BenchManifest parse_manifest(const nlohmann::json& j) {
  try {
    BenchManifest m;
    const std::string mode = j.value("mode", "search");
    if (mode == "preprocess")
      m.mode = BenchMode::preprocess;
    else if (mode == "search")
      m.mode = BenchMode::search;
    else
      throw std::invalid_argument("unknown mode '" + mode + "'");
    for (const auto& ji : j.at("instances")) {
      InstanceSource src;
      if (ji.is_string()) {
        src.path = ji.get<std::string>();
        src.kind = src.path.find_first_of("*?[") != std::string::npos ? InstanceSource::Kind::glob
                                                                       : InstanceSource::Kind::file;
      } else if (ji.contains("file")) {
        src.path = ji.at("file").get<std::string>();
      } else if (ji.contains("glob")) {
        src.kind = InstanceSource::Kind::glob;
        src.path = ji.at("glob").get<std::string>();
      } else if (ji.contains("generator")) {
        src.kind = InstanceSource::Kind::generator;
        src.params = ji;
      } else {
        throw std::invalid_argument("instance entry needs 'file', 'glob' or 'generator'");
      }
      m.instances.push_back(std::move(src));
    }
    for (const auto& ja : j.at("algorithms")) m.algorithms.push_back(bench_detail::algorithm_from_json(ja));
    if (m.algorithms.empty()) throw std::invalid_argument("manifest lists no algorithms");
    if (j.contains("branching")) m.branching = parse_branching(j.at("branching").get<std::string>());
    if (j.contains("var_order")) m.var_order = parse_var_order(j.at("var_order").get<std::string>());
    m.node_limit = j.value("node_limit", std::uint64_t{0});
    m.time_limit = j.value("time_limit", 0.0);
    m.repetitions = j.value("repetitions", 1);
    if (m.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    m.oracle_check = j.value("oracle_check", false);
    if (j.contains("format")) m.format = parse_format(j.at("format").get<std::string>());
    m.output = j.value("output", std::string("-"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
}

/// Instances produced by one generator entry. "count" repeats the call
/// with seeds seed, seed+1, ...
inline std::vector<InstanceDoc> generate_from_json(const nlohmann::json& p) {
  const std::string g = p.at("generator").get<std::string>();
  std::vector<InstanceDoc> out;
  if (g == "queens") {
    out.push_back(gen_queens(p.at("n").get<int>()));
    return out;
  }
  const int count = p.value("count", 1);
  const std::uint64_t seed = p.value("seed", std::uint64_t{0});
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    if (g == "modelb")
      out.push_back(gen_model_b(p.at("n").get<int>(), p.at("d").get<int>(), p.at("p1").get<double>(),
                                p.at("p2").get<double>(), s, p.value("forced", false)));
    else if (g == "geometric")
      out.push_back(gen_geometric(p.at("n").get<int>(), p.at("d").get<int>(),
                                  p.at("dist").get<double>(), p.at("p2").get<double>(), s));
    else
      throw std::invalid_argument("unknown generator '" + g + "'");
  }
  return out;
}

/// Files matching a glob whose wildcards are in the last path component.
inline std::vector<std::string> expand_glob(const std::string& pattern) {
  namespace fs = std::filesystem;
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string leaf = p.filename().string();
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file() && fnmatch(leaf.c_str(), e.path().filename().c_str(), 0) == 0)
      out.push_back((p.has_parent_path() ? dir / e.path().filename() : e.path().filename()).string());
  std::sort(out.begin(), out.end());
  return out;
}

// ---- report ----------------------------------------------------------------

struct ReportRow {
  bool aggregate = false;
  std::string instance;
  std::string class_tag;
  std::string algorithm;
  std::string verdict;  // SAT UNSAT LIMIT | FIXPOINT WIPEOUT | ERROR | #k for aggregates
  double t = 0.0;
  std::uint64_t n = 0;
  std::uint64_t cc = 0;
  std::uint64_t bumps = 0;
  std::uint64_t deletions = 0;
  std::string check;  // oracle / cross-algorithm check
  std::string note;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::vector<ReportRow> rows;
};

/// Report note for the emulated baselines.
inline std::string emulation_note(Algorithm a) {
  if (a == Algorithm::maxrpc2_emu) return "emulated baseline; maxRPC2's own support lists not modelled";
  return "emulated baseline; special maxRPCrm residues not modelled";
}

namespace bench_detail {

struct Measurement {
  std::string verdict;
  double t = 0.0;
  SolverStats stats;
  std::vector<std::vector<int>> domains;  // preprocessing fixpoint
  bool wipeout = false;
};

inline bool included(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int v : a[i])
      if (!std::binary_search(b[i].begin(), b[i].end(), v)) return false;
  return true;
}

inline Measurement measure_preprocess(const Network& net, const PropagatorConfig& cfg) {
  Session s(net, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const bool ok = s.preprocess();
  Measurement m;
  m.t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m.stats = s.stats();
  m.wipeout = !ok;
  m.verdict = ok ? "FIXPOINT" : "WIPEOUT";
  if (ok) m.domains = s.domain_values();
  return m;
}

inline Measurement measure_search(const Network& net, const BenchManifest& man,
                                  const PropagatorConfig& cfg) {
  SearchConfig sc;
  sc.propagator = cfg;
  sc.branching = man.branching;
  sc.var_order = man.var_order;
  sc.node_limit = man.node_limit;
  sc.time_limit = man.time_limit;
  const SearchResult r = solve(net, sc);
  Measurement m;
  m.t = r.stats.elapsed;
  m.stats = r.stats;
  m.verdict = std::string(to_string(r.verdict));
  return m;
}

// Oracle check of a preprocessing fixpoint.
inline std::string preprocess_check(const AlgorithmSpec& alg, const Measurement& m,
                                    const ClosureResult& mrpc, const ClosureResult& ac) {
  const auto& c = alg.config;
  if (c.variant == Algorithm::ac3rm) {
    const bool ok = m.wipeout == ac.wipeout && (m.wipeout || m.domains == ac.domains);
    return ok ? "OK" : "MISMATCH";
  }
  if (!c.light) {
    const bool ok = m.wipeout == mrpc.wipeout && (m.wipeout || m.domains == mrpc.domains);
    return ok ? "OK" : "MISMATCH";
  }
  // light: maxRPC closure is at least as strong, AC closure at most.
  if (m.wipeout) return mrpc.wipeout ? "OK" : "MISMATCH";
  const bool ok = !ac.wipeout && included(m.domains, ac.domains) &&
                  (mrpc.wipeout || included(mrpc.domains, m.domains));
  return ok ? "OK" : "MISMATCH";
}

struct Loaded {
  std::string label;
  std::optional<InstanceDoc> doc;
  std::string error;
};

inline std::vector<Loaded> load_all(const BenchManifest& man) {
  std::vector<Loaded> out;
  auto load_file = [&](const std::string& path) {
    Loaded l;
    l.label = path;
    try {
      l.doc = read_instance_file(path);
      l.label = l.doc->name;
    } catch (const std::exception& e) {
      l.error = e.what();
    }
    out.push_back(std::move(l));
  };
  for (const InstanceSource& src : man.instances) {
    switch (src.kind) {
      case InstanceSource::Kind::file: load_file(src.path); break;
      case InstanceSource::Kind::glob: {
        const auto files = expand_glob(src.path);
        if (files.empty()) out.push_back({src.path, std::nullopt, "glob matched no files"});
        for (const auto& f : files) load_file(f);
        break;
      }
      case InstanceSource::Kind::generator:
        try {
          for (auto& d : generate_from_json(src.params)) out.push_back({d.name, std::move(d), {}});
        } catch (const std::exception& e) {
          out.push_back({src.params.dump(), std::nullopt, e.what()});
        }
        break;
    }
  }
  return out;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace bench_detail

/// Per-class aggregates appended after the instance rows: mean t, total
/// n, cc, bumps and deletions over the rows that did not error.
inline void append_aggregates(Report& report) {
  struct Acc {
    std::uint64_t k = 0, n = 0, cc = 0, bumps = 0, del = 0;
    double t = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  std::vector<std::pair<std::string, std::string>> order;
  for (const ReportRow& r : report.rows) {
    if (r.aggregate || r.verdict == "ERROR") continue;
    const auto key = std::make_pair(r.class_tag, r.algorithm);
    if (!acc.contains(key)) order.push_back(key);
    Acc& a = acc[key];
    ++a.k;
    a.t += r.t;
    a.n += r.n;
    a.cc += r.cc;
    a.bumps += r.bumps;
    a.del += r.deletions;
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& key : order) {
    const Acc& a = acc[key];
    ReportRow row;
    row.aggregate = true;
    row.instance = "all";
    row.class_tag = key.first;
    row.algorithm = key.second;
    row.verdict = "#" + std::to_string(a.k);
    row.t = a.t / static_cast<double>(a.k);
    row.n = a.n;
    row.cc = a.cc;
    row.bumps = a.bumps;
    row.deletions = a.del;
    report.rows.push_back(std::move(row));
  }
}

/// Runs every instance against every algorithm. Per-instance failures
/// become ERROR rows; a cc or n change across repetitions throws
/// std::logic_error.
inline Report run_bench(const BenchManifest& man) {
  using namespace bench_detail;
  Report report;
  for (Loaded& l : load_all(man)) {
    if (!l.doc) {
      ReportRow row;
      row.instance = l.label;
      row.class_tag = "other";
      row.algorithm = "-";
      row.verdict = "ERROR";
      row.note = l.error;
      report.rows.push_back(std::move(row));
      continue;
    }
    const InstanceDoc& doc = *l.doc;
    const std::string cls = infer_class(doc);
    std::optional<Network> net;
    std::string build_error;
    try {
      net.emplace(build_network(doc));
    } catch (const std::exception& e) {
      build_error = e.what();
    }
    std::optional<ClosureResult> mrpc, ac;
    if (net && man.oracle_check && man.mode == BenchMode::preprocess) {
      mrpc = brute_maxrpc(doc);
      ac = brute_ac(doc);
    }
    const std::size_t first_row = report.rows.size();
    for (const AlgorithmSpec& alg : man.algorithms) {
      ReportRow row;
      row.instance = doc.name;
      row.class_tag = cls;
      row.algorithm = alg.id;
      if (is_emulation(alg.config.variant)) row.note = emulation_note(alg.config.variant);
      if (!net) {
        row.verdict = "ERROR";
        row.note = build_error;
        report.rows.push_back(std::move(row));
        continue;
      }
      try {
        std::vector<double> times;
        Measurement m;
        for (int rep = 0; rep < man.repetitions; ++rep) {
          Measurement cur = man.mode == BenchMode::preprocess ? measure_preprocess(*net, alg.config)
                                                              : measure_search(*net, man, alg.config);
          if (rep > 0 && (cur.stats.cc != m.stats.cc || cur.stats.nodes != m.stats.nodes))
            throw std::logic_error("non-deterministic cc/n for " + doc.name + " / " + alg.id);
          times.push_back(cur.t);
          m = std::move(cur);
        }
        row.verdict = m.verdict;
        row.t = median(times);
        row.n = m.stats.nodes;
        row.cc = m.stats.cc;
        row.bumps = m.stats.bumps.size();
        row.deletions = m.stats.deletions;
        if (mrpc) row.check = preprocess_check(alg, m, *mrpc, *ac);
      } catch (const std::logic_error&) {
        throw;
      } catch (const std::exception& e) {
        row.verdict = "ERROR";
        row.note = e.what();
      }
      report.rows.push_back(std::move(row));
    }
    // Search mode: verdicts must agree across algorithms that finished.
    if (man.oracle_check && man.mode == BenchMode::search) {
      std::string seen;
      bool agree = true;
      for (std::size_t i = first_row; i < report.rows.size(); ++i) {
        const std::string& v = report.rows[i].verdict;
        if (v != "SAT" && v != "UNSAT") continue;
        if (seen.empty()) seen = v;
        agree = agree && v == seen;
      }
      for (std::size_t i = first_row; i < report.rows.size(); ++i)
        report.rows[i].check = agree ? "OK" : "DISAGREE";
    }
  }
  append_aggregates(report);
  return report;
}

inline Report run_preprocess(BenchManifest man) {
  man.mode = BenchMode::preprocess;
  return run_bench(man);
}

inline Report run_search(BenchManifest man) {
  man.mode = BenchMode::search;
  return run_bench(man);
}

// ---- output ----------------------------------------------------------------

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"instance", "algorithm", "verdict", "t",
                                                "n",        "cc",        "bumps",   "class",
                                                "deletions", "check",    "note",    "kind"};
  return cols;
}

namespace bench_detail {

inline std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

inline std::vector<std::string> fields(const ReportRow& r) {
  return {r.instance,           r.algorithm,    r.verdict,
          fmt_time(r.t),        std::to_string(r.n),  std::to_string(r.cc),
          std::to_string(r.bumps), r.class_tag, std::to_string(r.deletions),
          r.check,              r.note,         r.aggregate ? "aggregate" : "instance"};
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

}  // namespace bench_detail

/// Deterministic rendering; rows keep their order, aggregates come last.
inline std::string emit(const Report& report, ReportFormat format) {
  using namespace bench_detail;
  std::ostringstream out;
  const auto& cols = report_columns();
  if (format == ReportFormat::csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\r\n";
    for (const ReportRow& r : report.rows) {
      const auto f = fields(r);
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_quote(f[i]);
      out << "\r\n";
    }
    return out.str();
  }
  out << "|";
  for (const auto& c : cols) out << " " << c << " |";
  out << "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i >= 3 && i <= 6 ? " ---: |" : " --- |");
  out << "\n";
  for (const ReportRow& r : report.rows) {
    out << "|";
    for (const auto& f : fields(r)) out << " " << md_escape(f) << " |";
    out << "\n";
  }
  return out.str();
}

/// RFC-4180 records. Throws std::invalid_argument on unterminated quotes.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

/// Inverse of emit(report, csv); t keeps microsecond precision.
inline Report parse_report_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty() || records[0] != report_columns())
    throw std::invalid_argument("csv: unexpected header");
  Report report;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != report_columns().size())
      throw std::invalid_argument("csv: record " + std::to_string(i) + " has " +
                                  std::to_string(f.size()) + " fields");
    ReportRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.verdict = f[2];
    r.t = std::stod(f[3]);
    r.n = std::stoull(f[4]);
    r.cc = std::stoull(f[5]);
    r.bumps = std::stoull(f[6]);
    r.class_tag = f[7];
    r.deletions = std::stoull(f[8]);
    r.check = f[9];
    r.note = f[10];
    r.aggregate = f[11] == "aggregate";
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace maxrpc

#endif  // MAXRPC_BENCH_HPP_
