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
// Depth-first search maintaining the configured consistency at every node.
// Variables are chosen by dom/wdeg (by default), values lexicographically.
// A node is one attempted assignment x = a.

#ifndef MAXRPC_SEARCH_HPP_
#define MAXRPC_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxrpc/heuristics.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/propagator.hpp"
#include "maxrpc/session.hpp"

namespace maxrpc {

enum class Branching : std::uint8_t { binary, d_way };
enum class VarOrder : std::uint8_t { dom_wdeg, dom, lex };
enum class SearchMode : std::uint8_t { first_solution, count_all, unsat_check };
enum class Verdict : std::uint8_t { sat, unsat, limit };

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::sat: return "SAT";
    case Verdict::unsat: return "UNSAT";
    case Verdict::limit: return "LIMIT";
  }
  return "?";
}

inline Branching parse_branching(std::string_view s) {
  if (s == "binary") return Branching::binary;
  if (s == "d_way" || s == "d-way") return Branching::d_way;
  throw std::invalid_argument("unknown branching '" + std::string(s) + "'");
}

inline VarOrder parse_var_order(std::string_view s) {
  if (s == "dom_wdeg" || s == "dom/wdeg") return VarOrder::dom_wdeg;
  if (s == "dom") return VarOrder::dom;
  if (s == "lex") return VarOrder::lex;
  throw std::invalid_argument("unknown variable ordering '" + std::string(s) + "'");
}

/// Node budget applied to count_all runs when no limit is given.
inline constexpr std::uint64_t kCountAllNodeGuard = 1'000'000;

struct SearchConfig {
  PropagatorConfig propagator;
  Branching branching = Branching::binary;
  VarOrder var_order = VarOrder::dom_wdeg;
  SearchMode mode = SearchMode::first_solution;
  std::uint64_t node_limit = 0;  // 0: none (count_all falls back to the guard)
  double time_limit = 0.0;       // seconds, 0: none
  std::size_t keep_solutions = 1;
};

struct SearchResult {
  Verdict verdict = Verdict::limit;
  std::vector<std::vector<int>> solutions;  // values, one vector per solution
  std::uint64_t solution_count = 0;
  SolverStats stats;
  std::uint64_t scan_audit_violations = 0;
};

/// Hooks around every branch, for state-restoration checks.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  /// Called right before a new level is pushed.
  virtual void before_branch(const Session&) {}
  /// Called right after the level of an abandoned branch is undone.
  virtual void after_restore(const Session&) {}
};

/// True iff `assignment` (one value per variable) satisfies every
/// constraint. Uncounted. Throws std::invalid_argument on a partial
/// assignment.
inline bool verify_solution(const Network& net, std::span<const int> assignment) {
  if (assignment.size() != static_cast<std::size_t>(net.num_vars()))
    throw std::invalid_argument("verify_solution needs a total assignment: got " +
                                std::to_string(assignment.size()) + " of " +
                                std::to_string(net.num_vars()) + " values");
  std::vector<ValueIndex> idx(assignment.size());
  for (Var x = 0; x < net.num_vars(); ++x) {
    idx[x] = net.index_of(x, assignment[x]);
    if (idx[x] == kNil) return false;
  }
  for (ConstraintId c = 0; c < net.num_constraints(); ++c) {
    const Constraint& con = net.constraint(c);
    if (!con.relation.allows(idx[con.x], idx[con.y])) return false;
  }
  return true;
}

namespace detail {

class Searcher {
 public:
  Searcher(const Network& net, const SearchConfig& cfg, SearchObserver* observer)
      : net_(net), cfg_(cfg), observer_(observer), session_(net, cfg.propagator) {
    node_limit_ = cfg.node_limit;
    if (node_limit_ == 0 && cfg.mode == SearchMode::count_all) node_limit_ = kCountAllNodeGuard;
  }

  SearchResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    start_ = t0;
    SearchResult result;
    if (session_.preprocess()) dfs(result);
    SolverStats& st = session_.stats();
    st.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (stopped_by_limit_)
      result.verdict = Verdict::limit;
    else
      result.verdict = result.solution_count > 0 ? Verdict::sat : Verdict::unsat;
    result.stats = st;
    result.scan_audit_violations = session_.supports().scan_audit_violations();
    return result;
  }

  Session& session() { return session_; }

 private:
  bool limit_reached() {
    if (node_limit_ != 0 && session_.stats().nodes >= node_limit_) return true;
    if (cfg_.time_limit > 0.0 && (session_.stats().nodes & 255) == 0) {
      const double t =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (t > cfg_.time_limit) return true;
    }
    return false;
  }

  Var select_variable() {
    const DomainStore& d = session_.domains();
    HeuristicContext ctx{net_, d, session_.weights(), session_.assigned()};
    Var best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (Var x = 0; x < net_.num_vars(); ++x) {
      if (d.size(x) <= 1) continue;
      double s = 0.0;
      switch (cfg_.var_order) {
        case VarOrder::dom_wdeg: s = ctx.dom_wdeg(x); break;
        case VarOrder::dom: s = d.size(x); break;
        case VarOrder::lex: s = 0.0; break;
      }
      if (best < 0 || s < best_score) {
        best = x;
        best_score = s;
      }
    }
    return best;
  }

  // Returns true when the search must stop.
  bool record_solution(SearchResult& result) {
    std::vector<int> sol(net_.num_vars());
    const DomainStore& d = session_.domains();
    for (Var x = 0; x < net_.num_vars(); ++x) sol[x] = net_.values(x)[d.first(x)];
    if (!verify_solution(net_, sol))
      throw std::logic_error("search produced an assignment that violates a constraint");
    ++result.solution_count;
    if (result.solutions.size() < cfg_.keep_solutions) result.solutions.push_back(std::move(sol));
    return cfg_.mode != SearchMode::count_all;
  }

  bool try_assign(Var x, ValueIndex a, SearchResult& result) {
    ++session_.stats().nodes;
    if (observer_) observer_->before_branch(session_);
    const int level = session_.trail().level();
    session_.trail().push_level();
    session_.assigned()[x] = 1;
    session_.domains().reduce_to(x, a);
    bool stop = false;
    if (session_.propagate_from(x)) stop = dfs(result);
    if (stop) return true;
    session_.trail().restore(level);
    session_.assigned()[x] = 0;
    if (observer_) observer_->after_restore(session_);
    return false;
  }

  bool dfs(SearchResult& result) {
    for (;;) {
      const Var x = select_variable();
      if (x < 0) return record_solution(result);
      if (limit_reached()) {
        stopped_by_limit_ = true;
        return true;
      }
      DomainStore& d = session_.domains();
      if (cfg_.branching == Branching::d_way) {
        for (ValueIndex a : d.indices(x)) {
          if (try_assign(x, a, result)) return true;
          if (limit_reached()) {
            stopped_by_limit_ = true;
            return true;
          }
        }
        return false;
      }
      const ValueIndex a = d.first(x);
      if (try_assign(x, a, result)) return true;
      // Refutation x != a, recorded at the current level.
      if (d.remove(x, a)) return false;
      if (!session_.propagate_from(x)) return false;
    }
  }

  const Network& net_;
  const SearchConfig& cfg_;
  SearchObserver* observer_;
  Session session_;
  std::uint64_t node_limit_ = 0;
  bool stopped_by_limit_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Complete search under cfg. A LIMIT verdict may still carry solutions
/// found before the limit in count_all mode.
inline SearchResult solve(const Network& net, const SearchConfig& cfg,
                          SearchObserver* observer = nullptr) {
  detail::Searcher s(net, cfg, observer);
  return s.run();
}

/// Exact number of solutions, or nullopt when the node budget ran out.
inline std::optional<std::uint64_t> count_solutions(const Network& net, SearchConfig cfg) {
  cfg.mode = SearchMode::count_all;
  cfg.keep_solutions = 0;
  const SearchResult r = solve(net, cfg);
  if (r.verdict == Verdict::limit) return std::nullopt;
  return r.solution_count;
}

}  // namespace maxrpc

#endif  // MAXRPC_SEARCH_HPP_
