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
// Fail-first orderings used inside propagation: extraction from the
// propagation list, the order in which the neighbors of an extracted
// variable are revised, and the order of third variables when looking for
// PC-witnesses. All ties break on ascending variable id.

#ifndef MAXRPC_HEURISTICS_HPP_
#define MAXRPC_HEURISTICS_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxrpc/domains.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/stats.hpp"

namespace maxrpc {

enum class HeuristicId : std::uint8_t { fifo, dom, del_ratio, wdeg, dom_wdeg };

inline constexpr std::string_view to_string(HeuristicId h) {
  switch (h) {
    case HeuristicId::fifo: return "fifo";
    case HeuristicId::dom: return "dom";
    case HeuristicId::del_ratio: return "del_ratio";
    case HeuristicId::wdeg: return "wdeg";
    case HeuristicId::dom_wdeg: return "dom_wdeg";
  }
  return "?";
}

inline HeuristicId parse_heuristic(std::string_view s) {
  if (s == "fifo") return HeuristicId::fifo;
  if (s == "dom") return HeuristicId::dom;
  if (s == "del_ratio") return HeuristicId::del_ratio;
  if (s == "wdeg") return HeuristicId::wdeg;
  if (s == "dom_wdeg" || s == "dom/wdeg") return HeuristicId::dom_wdeg;
  throw std::invalid_argument("unknown heuristic '" + std::string(s) + "'");
}

/// Failure weights, one per constraint, starting at 1.
class WeightTable {
 public:
  explicit WeightTable(int num_constraints = 0) : w_(num_constraints, 1) {}

  std::uint64_t weight(ConstraintId c) const { return w_[c]; }
  void bump(ConstraintId c) { ++w_[c]; }
  void reset() { std::fill(w_.begin(), w_.end(), 1); }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<std::uint64_t> w_;
};

/// Read-only view over everything a heuristic may look at. `assigned` is
/// empty outside search.
struct HeuristicContext {
  const Network& net;
  const DomainStore& domains;
  const WeightTable& weights;
  std::span<const std::uint8_t> assigned;

  bool is_assigned(Var x) const { return !assigned.empty() && assigned[x]; }

  /// Sum of weights of constraints whose other endpoint is unassigned.
  double wdeg(Var x) const {
    std::uint64_t sum = 0;
    for (const Neighbor& nb : net.neighbors(x))
      if (!is_assigned(nb.var)) sum += weights.weight(constraint_of(nb.arc));
    return static_cast<double>(sum);
  }

  double dom_wdeg(Var x) const {
    const double w = wdeg(x);
    if (w == 0.0) return std::numeric_limits<double>::infinity();
    return domains.size(x) / w;
  }

  double del_ratio(Var x) const {
    return static_cast<double>(domains.size(x)) / domains.initial_size(x);
  }

  /// Ascending-is-better score of x for heuristic h (fifo scores 0).
  double score(HeuristicId h, Var x) const {
    switch (h) {
      case HeuristicId::fifo: return 0.0;
      case HeuristicId::dom: return domains.size(x);
      case HeuristicId::del_ratio: return del_ratio(x);
      case HeuristicId::wdeg: return -wdeg(x);
      case HeuristicId::dom_wdeg: return dom_wdeg(x);
    }
    return 0.0;
  }
};

/// Pending variables without duplicates.
class PropagationList {
 public:
  explicit PropagationList(int num_vars = 0) : in_(num_vars, 0) {}

  void resize(int num_vars) {
    in_.assign(num_vars, 0);
    items_.clear();
  }

  /// Idempotent.
  void push(Var x) {
    if (in_[x]) return;
    in_[x] = 1;
    items_.push_back(x);
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool contains(Var x) const { return in_[x] != 0; }

  void clear() {
    for (Var x : items_) in_[x] = 0;
    items_.clear();
  }

  /// Extracts the next variable: the oldest for fifo, otherwise the
  /// smallest score, ties on ascending id.
  Var pick(HeuristicId h, const HeuristicContext& ctx) {
    std::size_t best = 0;
    if (h != HeuristicId::fifo) {
      double best_score = ctx.score(h, items_[0]);
      for (std::size_t i = 1; i < items_.size(); ++i) {
        const double s = ctx.score(h, items_[i]);
        if (s < best_score || (s == best_score && items_[i] < items_[best])) {
          best = i;
          best_score = s;
        }
      }
    }
    const Var x = items_[best];
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(best));
    in_[x] = 0;
    return x;
  }

  std::vector<Var> pending() const { return {items_.begin(), items_.end()}; }

 private:
  std::deque<Var> items_;
  std::vector<std::uint8_t> in_;
};

inline Var pick_from_list(PropagationList& list, HeuristicId h, const HeuristicContext& ctx) {
  return list.pick(h, ctx);
}

/// Case 1: order in which the neighbors of an extracted variable are
/// revised. wdeg ranks by descending weight of the connecting constraint.
inline void order_neighbors_case1(const HeuristicContext& ctx, Var xj,
                                  std::optional<HeuristicId> h, std::vector<Neighbor>& out) {
  // Neighbors of xj come with arcs (xj -> xi); revisions use (xi -> xj).
  out.clear();
  for (const Neighbor& nb : ctx.net.neighbors(xj)) out.push_back({nb.var, reverse_arc(nb.arc)});
  if (!h || *h == HeuristicId::fifo) return;
  auto key = [&](const Neighbor& nb) {
    if (*h == HeuristicId::wdeg)
      return -static_cast<double>(ctx.weights.weight(constraint_of(nb.arc)));
    return ctx.score(*h, nb.var);
  };
  std::stable_sort(out.begin(), out.end(), [&](const Neighbor& a, const Neighbor& b) {
    const double ka = key(a), kb = key(b);
    return ka < kb || (ka == kb && a.var < b.var);
  });
}

/// Cases 2-4: order of the third variables of arc's 3-cliques. wdeg ranks
/// by descending average weight of the two constraints reaching x_k.
inline void order_triangle_vars(const HeuristicContext& ctx, ArcId arc,
                                std::optional<HeuristicId> h, std::vector<TriangleEntry>& out) {
  const auto tri = ctx.net.triangles(arc);
  out.assign(tri.begin(), tri.end());
  if (!h || *h == HeuristicId::fifo) return;
  auto key = [&](const TriangleEntry& t) {
    if (*h == HeuristicId::wdeg)
      return -0.5 * static_cast<double>(ctx.weights.weight(constraint_of(t.src_arc)) +
                                        ctx.weights.weight(constraint_of(t.dst_arc)));
    return ctx.score(*h, t.third);
  };
  std::stable_sort(out.begin(), out.end(), [&](const TriangleEntry& a, const TriangleEntry& b) {
    const double ka = key(a), kb = key(b);
    return ka < kb || (ka == kb && a.third < b.third);
  });
}

inline void bump_weight(WeightTable& weights, SolverStats& stats, ConstraintId c) {
  weights.bump(c);
  stats.bumps.push_back({c, stats.nodes});
}

}  // namespace maxrpc

#endif  // MAXRPC_HEURISTICS_HPP_
