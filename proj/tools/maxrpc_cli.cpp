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
// maxrpc command-line front end. Exit codes: 0 batch completed (whatever
// the verdicts), 1 usage or harness error, 3 oracle-check mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxrpc/maxrpc.hpp"

namespace {

using namespace maxrpc;

struct RunOptions {
  std::vector<std::string> instances;
  std::string manifest;
  std::vector<std::string> algorithms{"lmaxrpc3rm"};
  bool light = false;
  bool no_shortcuts = false;
  std::string queue_heuristic;
  std::string case1, case2, case3, case4;
  std::string branching = "binary";
  std::string var_order = "dom_wdeg";
  std::uint64_t node_limit = 0;
  double time_limit = 0.0;
  int repetitions = 1;
  bool oracle_check = false;
  std::string format = "csv";
  std::string out = "-";
  bool show_solution = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool search) {
  cmd->add_option("instances", o.instances, "Instance files (XCSP 2.1, native text or JSON)");
  cmd->add_option("--manifest", o.manifest, "JSON bench manifest; replaces instances and flags");
  cmd->add_option("-a,--algorithm", o.algorithms,
                  "ac3rm | [l]maxrpc3 | [l]maxrpc3rm | [l]maxrpc2 | [l]maxrpcrm, optional +H; "
                  "repeatable or comma-separated")
      ->delimiter(',');
  cmd->add_flag("--light", o.light, "Use the light variant of every listed algorithm");
  cmd->add_flag("--no-shortcuts", o.no_shortcuts, "Disable the LastAC shortcut tests");
  const std::string hs = "fifo | dom | del_ratio | wdeg | dom_wdeg";
  cmd->add_option("--queue-heuristic", o.queue_heuristic, "Propagation list order: " + hs);
  cmd->add_option("--case1", o.case1, "Neighbor order after extraction: none | " + hs);
  cmd->add_option("--case2", o.case2, "Witness search order: none | " + hs);
  cmd->add_option("--case3", o.case3, "checkPCwit variable order: none | " + hs);
  cmd->add_option("--case4", o.case4, "Replacement-support witness order: none | " + hs);
  if (search) {
    cmd->add_option("--branching", o.branching, "binary | d_way")->capture_default_str();
    cmd->add_option("--var-order", o.var_order, "dom_wdeg | dom | lex")->capture_default_str();
    cmd->add_option("--node-limit", o.node_limit, "Stop after this many nodes (0: none)");
    cmd->add_option("--time-limit", o.time_limit, "Stop after this many seconds (0: none)");
  }
  cmd->add_option("--repetitions", o.repetitions, "Runs per row; t is the median")->capture_default_str();
  cmd->add_flag("--oracle-check", o.oracle_check,
                search ? "Flag rows whose verdicts disagree" : "Compare fixpoints with the brute-force oracle");
  cmd->add_option("--format", o.format, "csv | markdown")->capture_default_str();
  cmd->add_option("--out", o.out, "Output file, '-' for stdout")->capture_default_str();
}

std::optional<HeuristicId> opt_heuristic(const std::string& s) {
  if (s.empty() || s == "none") return std::nullopt;
  return parse_heuristic(s);
}

BenchManifest manifest_from(const RunOptions& o, BenchMode mode) {
  if (!o.manifest.empty()) {
    BenchManifest m = parse_manifest(nlohmann::json::parse(read_file(o.manifest)));
    m.mode = mode;
    return m;
  }
  if (o.instances.empty()) throw std::invalid_argument("no instances given (or use --manifest)");
  BenchManifest m;
  m.mode = mode;
  for (const auto& f : o.instances) {
    InstanceSource src;
    src.path = f;
    if (f.find_first_of("*?[") != std::string::npos) src.kind = InstanceSource::Kind::glob;
    m.instances.push_back(src);
  }
  for (const auto& id : o.algorithms) {
    AlgorithmSpec spec = parse_algorithm(id);
    PropagatorConfig& c = spec.config;
    bool custom = false;
    if (o.light && !c.light && c.variant != Algorithm::ac3rm) {
      c.light = true;
      spec.id = "l" + spec.id;
    }
    if (o.no_shortcuts && c.use_last_ac_shortcuts) {
      c.use_last_ac_shortcuts = false;
      custom = true;
    }
    if (!o.queue_heuristic.empty()) {
      c.queue_heuristic = parse_heuristic(o.queue_heuristic);
      custom = true;
    }
    for (auto [text, slot] : {std::pair{&o.case1, &c.case1}, std::pair{&o.case2, &c.case2},
                              std::pair{&o.case3, &c.case3}, std::pair{&o.case4, &c.case4}}) {
      if (text->empty()) continue;
      *slot = opt_heuristic(*text);
      custom = true;
    }
    if (custom) spec.id += "*";
    c.validate();
    m.algorithms.push_back(std::move(spec));
  }
  m.branching = parse_branching(o.branching);
  m.var_order = parse_var_order(o.var_order);
  m.node_limit = o.node_limit;
  m.time_limit = o.time_limit;
  m.repetitions = o.repetitions;
  m.oracle_check = o.oracle_check;
  m.format = parse_format(o.format);
  m.output = o.out;
  return m;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

int run_report(const RunOptions& o, BenchMode mode) {
  const BenchManifest m = manifest_from(o, mode);
  const Report r = run_bench(m);
  std::string text = emit(r, m.format);
  if (m.format == ReportFormat::markdown) {
    for (const auto& a : m.algorithms)
      if (is_emulation(a.config.variant))
        text += "\nNote: " + a.id + " is an " + emulation_note(a.config.variant) + ".\n";
  }
  write_output(m.output, text);
  return 0;
}

int run_solve_single(const RunOptions& o) {
  const BenchManifest m = manifest_from(o, BenchMode::search);
  if (m.instances.size() != 1 || m.algorithms.size() != 1)
    throw std::invalid_argument("--show-solution needs one instance and one algorithm");
  const InstanceDoc doc = read_instance_file(m.instances[0].path);
  const Network net = build_network(doc);
  SearchConfig sc;
  sc.propagator = m.algorithms[0].config;
  sc.branching = m.branching;
  sc.var_order = m.var_order;
  sc.node_limit = m.node_limit;
  sc.time_limit = m.time_limit;
  const SearchResult r = solve(net, sc);
  std::ostringstream out;
  out << doc.name << " " << m.algorithms[0].id << " " << to_string(r.verdict) << " n=" << r.stats.nodes
      << " cc=" << r.stats.cc << " t=" << r.stats.elapsed << "\n";
  if (!r.solutions.empty()) {
    for (Var x = 0; x < net.num_vars(); ++x)
      out << (x ? " " : "") << net.var_name(x) << "=" << r.solutions[0][x];
    out << "\n";
  }
  write_output(m.output, out.str());
  return 0;
}

int run_count(const RunOptions& o) {
  BenchManifest m = manifest_from(o, BenchMode::search);
  std::ostringstream out;
  for (const auto& src : m.instances) {
    const InstanceDoc doc = read_instance_file(src.path);
    const Network net = build_network(doc);
    for (const auto& alg : m.algorithms) {
      SearchConfig sc;
      sc.propagator = alg.config;
      sc.branching = m.branching;
      sc.var_order = m.var_order;
      sc.node_limit = m.node_limit;
      sc.time_limit = m.time_limit;
      sc.mode = SearchMode::count_all;
      sc.keep_solutions = 0;
      const SearchResult r = solve(net, sc);
      out << doc.name << " " << alg.id << " ";
      if (r.verdict == Verdict::limit)
        out << "LIMIT (>= " << r.solution_count << ")";
      else
        out << r.solution_count;
      out << " n=" << r.stats.nodes << " cc=" << r.stats.cc << "\n";
    }
  }
  write_output(m.output, out.str());
  return 0;
}

int run_oracle_check(const std::vector<std::string>& files, bool all_variants) {
  int mismatches = 0;
  const std::vector<std::string> ids =
      all_variants ? std::vector<std::string>{"ac3rm", "maxrpc3", "maxrpc3rm", "maxrpc2", "maxrpcrm",
                                              "lmaxrpc3", "lmaxrpc3rm", "lmaxrpc2", "lmaxrpcrm"}
                   : std::vector<std::string>{"maxrpc3", "maxrpc3rm"};
  for (const auto& f : files) {
    const InstanceDoc doc = read_instance_file(f);
    const Network net = build_network(doc);
    const ClosureResult mrpc = brute_maxrpc(doc);
    const ClosureResult ac = brute_ac(doc);
    std::cout << doc.name << ": oracle maxRPC " << (mrpc.wipeout ? "wipeout" : "fixpoint") << ", AC "
              << (ac.wipeout ? "wipeout" : "fixpoint") << "\n";
    for (const auto& id : ids) {
      const AlgorithmSpec spec = parse_algorithm(id);
      const auto m = bench_detail::measure_preprocess(net, spec.config);
      const std::string check = bench_detail::preprocess_check(spec, m, mrpc, ac);
      if (check != "OK") ++mismatches;
      std::cout << "  " << spec.id << " " << m.verdict << " deletions=" << m.stats.deletions
                << " cc=" << m.stats.cc << " " << check << "\n";
    }
  }
  return mismatches ? 3 : 0;
}

struct GenOptions {
  std::string kind;
  int n = 10, d = 5;
  double p1 = 0.5, p2 = 0.4, dist = 0.5;
  std::uint64_t seed = 0;
  bool forced = false;
  std::string format = "native";
  std::string out = "-";
};

int run_gen(const GenOptions& g) {
  InstanceDoc doc;
  if (g.kind == "modelb")
    doc = gen_model_b(g.n, g.d, g.p1, g.p2, g.seed, g.forced);
  else if (g.kind == "geometric")
    doc = gen_geometric(g.n, g.d, g.dist, g.p2, g.seed);
  else if (g.kind == "queens")
    doc = gen_queens(g.n);
  else
    throw std::invalid_argument("unknown generator '" + g.kind + "'");
  if (g.format == "native")
    write_output(g.out, write_native(doc));
  else if (g.format == "json")
    write_output(g.out, to_json(doc).dump(2) + "\n");
  else
    throw std::invalid_argument("gen --format must be native or json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxrpc: maxRPC / lmaxRPC propagation, search and benchmarking for binary CSPs"};
  app.require_subcommand(1);

  RunOptions pre, sol, cnt;
  auto* c_pre = app.add_subcommand("preprocess", "Stand-alone propagation to a fixpoint, one row per algorithm");
  add_run_options(c_pre, pre, false);
  auto* c_sol = app.add_subcommand("solve", "Search for a first solution, one row per algorithm");
  add_run_options(c_sol, sol, true);
  c_sol->add_flag("--show-solution", sol.show_solution, "Print the solution (one instance, one algorithm)");
  auto* c_cnt = app.add_subcommand("count", "Count all solutions (node guard 1e6 unless --node-limit)");
  add_run_options(c_cnt, cnt, true);

  std::vector<std::string> oc_files;
  bool oc_all = false;
  auto* c_oc = app.add_subcommand("oracle-check", "Compare propagator fixpoints with brute-force closures");
  c_oc->add_option("instances", oc_files, "Instance files")->required();
  c_oc->add_flag("--all", oc_all, "Check every variant, not only maxrpc3 and maxrpc3rm");

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen", "Write a generated instance");
  c_gen->add_option("kind", gen.kind, "modelb | geometric | queens")->required();
  c_gen->add_option("--n", gen.n, "Variables (queens: board size)")->capture_default_str();
  c_gen->add_option("--d", gen.d, "Domain size")->capture_default_str();
  c_gen->add_option("--p1", gen.p1, "Density (modelb)")->capture_default_str();
  c_gen->add_option("--p2", gen.p2, "Tightness")->capture_default_str();
  c_gen->add_option("--dist", gen.dist, "Distance threshold (geometric)")->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_flag("--forced", gen.forced, "Plant a solution (modelb)");
  c_gen->add_option("--format", gen.format, "native | json")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Output file, '-' for stdout")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c_pre) return run_report(pre, BenchMode::preprocess);
    if (*c_sol) return sol.show_solution ? run_solve_single(sol) : run_report(sol, BenchMode::search);
    if (*c_cnt) return run_count(cnt);
    if (*c_oc) return run_oracle_check(oc_files, oc_all);
    if (*c_gen) return run_gen(gen);
  } catch (const std::exception& e) {
    std::cerr << "maxrpc: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
