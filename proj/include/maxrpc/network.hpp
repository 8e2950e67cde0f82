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
// Immutable binary constraint network. Values are addressed by their index
// in the ascending initial domain. Every constraint c_ij yields two arcs:
// 2c is (x -> y) and 2c+1 is (y -> x), so `arc ^ 1` reverses an arc.

#ifndef MAXRPC_NETWORK_HPP_
#define MAXRPC_NETWORK_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxrpc/relation.hpp"

namespace maxrpc {

using Var = int;
using ValueIndex = int;
using ArcId = int;
using ConstraintId = int;

/// Sentinel preceding every value index.
inline constexpr ValueIndex kNil = -1;

inline constexpr ArcId reverse_arc(ArcId arc) { return arc ^ 1; }
inline constexpr ConstraintId constraint_of(ArcId arc) { return arc >> 1; }

struct Constraint {
  Var x = 0;
  Var y = 0;
  Relation relation;
};

/// Neighbor of a variable together with the arc leaving the variable.
struct Neighbor {
  Var var = 0;
  ArcId arc = 0;
};

/// Third variable k of a 3-clique around arc (i -> j), with the arcs
/// (i -> k) and (j -> k).
struct TriangleEntry {
  Var third = 0;
  ArcId src_arc = 0;
  ArcId dst_arc = 0;
};

/// For every edge (in input order), the ascending list of variables adjacent
/// to both endpoints.
inline std::vector<std::vector<Var>> build_triangles(
    int num_vars, std::span<const std::pair<Var, Var>> edges) {
  std::vector<std::vector<Var>> adj(num_vars);
  for (auto [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<std::vector<Var>> out(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ax = adj[edges[e].first];
    const auto& ay = adj[edges[e].second];
    std::set_intersection(ax.begin(), ax.end(), ay.begin(), ay.end(),
                          std::back_inserter(out[e]));
  }
  return out;
}

class NetworkBuilder;

class Network {
 public:
  int num_vars() const { return static_cast<int>(values_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_arcs() const { return 2 * num_constraints(); }
  int max_domain_size() const { return max_domain_size_; }

  const std::string& name() const { return name_; }
  const std::string& var_name(Var x) const { return var_names_[x]; }
  std::span<const int> values(Var x) const { return values_[x]; }
  int initial_size(Var x) const { return static_cast<int>(values_[x].size()); }

  /// Index of `value` in the initial domain of x, or kNil.
  ValueIndex index_of(Var x, int value) const {
    const auto& v = values_[x];
    auto it = std::lower_bound(v.begin(), v.end(), value);
    if (it == v.end() || *it != value) return kNil;
    return static_cast<ValueIndex>(it - v.begin());
  }

  const Constraint& constraint(ConstraintId c) const { return constraints_[c]; }
  Var arc_source(ArcId arc) const {
    const Constraint& c = constraints_[constraint_of(arc)];
    return (arc & 1) ? c.y : c.x;
  }
  Var arc_target(ArcId arc) const {
    const Constraint& c = constraints_[constraint_of(arc)];
    return (arc & 1) ? c.x : c.y;
  }

  /// Uncounted relation evaluation: `a` belongs to the arc source, `b` to
  /// the arc target.
  bool allows(ArcId arc, ValueIndex a, ValueIndex b) const {
    const Relation& r = constraints_[constraint_of(arc)].relation;
    return (arc & 1) ? r.allows(b, a) : r.allows(a, b);
  }

  /// Neighbors in ascending variable id.
  std::span<const Neighbor> neighbors(Var x) const { return neighbors_[x]; }
  /// Third variables of arc's 3-cliques in ascending variable id.
  std::span<const TriangleEntry> triangles(ArcId arc) const { return triangles_[arc]; }

  /// Arc (x -> y), or -1 when x and y are not constrained.
  ArcId find_arc(Var x, Var y) const {
    auto it = arc_index_.find(pair_key(x, y));
    return it == arc_index_.end() ? -1 : it->second;
  }

 private:
  friend class NetworkBuilder;
  static std::uint64_t pair_key(Var x, Var y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }

  std::string name_;
  std::vector<std::string> var_names_;
  std::vector<std::vector<int>> values_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<std::vector<TriangleEntry>> triangles_;
  std::unordered_map<std::uint64_t, ArcId> arc_index_;
  int max_domain_size_ = 0;
};

/// Accumulates variables and constraints; `build` validates and freezes.
class NetworkBuilder {
 public:
  explicit NetworkBuilder(std::string name = {}) { net_.name_ = std::move(name); }

  /// Values must be strictly increasing.
  Var add_variable(std::string name, std::vector<int> values) {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i - 1] >= values[i])
        throw std::invalid_argument("domain of '" + name + "' is not strictly increasing");
    net_.var_names_.push_back(std::move(name));
    net_.values_.push_back(std::move(values));
    return static_cast<Var>(net_.values_.size() - 1);
  }

  /// Relation rows index x's values, columns y's values.
  ConstraintId add_constraint(Var x, Var y, Relation relation) {
    const int n = static_cast<int>(net_.values_.size());
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw std::out_of_range("constraint references an unknown variable");
    if (x == y)
      throw std::invalid_argument("self-loop constraint on '" + net_.var_names_[x] + "'");
    if (relation.rows() != static_cast<int>(net_.values_[x].size()) ||
        relation.cols() != static_cast<int>(net_.values_[y].size()))
      throw std::invalid_argument("relation shape does not match the domains");
    const auto key = Network::pair_key(std::min(x, y), std::max(x, y));
    if (!seen_.emplace(key, true).second)
      throw std::invalid_argument("duplicate constraint between '" + net_.var_names_[x] +
                                  "' and '" + net_.var_names_[y] + "'");
    net_.constraints_.push_back(Constraint{x, y, std::move(relation)});
    return static_cast<ConstraintId>(net_.constraints_.size() - 1);
  }

  Network build() && {
    Network& net = net_;
    const int n = net.num_vars();
    net.max_domain_size_ = 0;
    for (const auto& v : net.values_)
      net.max_domain_size_ = std::max(net.max_domain_size_, static_cast<int>(v.size()));
    net.neighbors_.assign(n, {});
    std::vector<std::pair<Var, Var>> edges;
    edges.reserve(net.constraints_.size());
    for (ConstraintId c = 0; c < net.num_constraints(); ++c) {
      const Constraint& con = net.constraints_[c];
      net.neighbors_[con.x].push_back({con.y, 2 * c});
      net.neighbors_[con.y].push_back({con.x, 2 * c + 1});
      net.arc_index_[Network::pair_key(con.x, con.y)] = 2 * c;
      net.arc_index_[Network::pair_key(con.y, con.x)] = 2 * c + 1;
      edges.emplace_back(con.x, con.y);
    }
    for (auto& nb : net.neighbors_)
      std::sort(nb.begin(), nb.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.var < b.var; });
    const auto thirds = build_triangles(n, edges);
    net.triangles_.assign(net.num_arcs(), {});
    for (ConstraintId c = 0; c < net.num_constraints(); ++c) {
      const Var x = net.constraints_[c].x;
      const Var y = net.constraints_[c].y;
      for (Var k : thirds[c]) {
        const ArcId xk = net.find_arc(x, k);
        const ArcId yk = net.find_arc(y, k);
        net.triangles_[2 * c].push_back({k, xk, yk});
        net.triangles_[2 * c + 1].push_back({k, yk, xk});
      }
    }
    return std::move(net_);
  }

 private:
  Network net_;
  std::unordered_map<std::uint64_t, bool> seen_;
};

}  // namespace maxrpc

#endif  // MAXRPC_NETWORK_HPP_
