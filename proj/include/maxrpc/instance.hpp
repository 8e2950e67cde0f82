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
// Value-level instance description shared by the parsers, the generators,
// the oracle and the network compiler.

#ifndef MAXRPC_INSTANCE_HPP_
#define MAXRPC_INSTANCE_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxrpc/network.hpp"
#include "maxrpc/relation.hpp"

namespace maxrpc {

struct VariableDoc {
  std::string name;
  std::vector<int> values;  // strictly increasing

  friend bool operator==(const VariableDoc&, const VariableDoc&) = default;
};

/// Pairs of (first var value, second var value).
struct ExtensionalSpec {
  bool supports = true;  // false: the tuples are conflicts
  std::vector<std::pair<int, int>> tuples;

  friend bool operator==(const ExtensionalSpec&, const ExtensionalSpec&) = default;
};

/// Conjunction of atoms over (first var value, second var value).
struct IntensionalSpec {
  std::vector<Atom> atoms;

  friend bool operator==(const IntensionalSpec&, const IntensionalSpec&) = default;
};

struct ConstraintDoc {
  int x = 0;
  int y = 0;
  std::variant<ExtensionalSpec, IntensionalSpec> relation;

  friend bool operator==(const ConstraintDoc&, const ConstraintDoc&) = default;
};

struct InstanceDoc {
  std::string name;
  std::vector<VariableDoc> variables;
  std::vector<ConstraintDoc> constraints;
  std::map<std::string, std::string> provenance;  // format, generator, seed, ...

  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == name) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const InstanceDoc&, const InstanceDoc&) = default;
};

/// Compiles a document into a network. Throws std::invalid_argument on
/// unknown variables, non-increasing domains, self-loops, duplicate pairs,
/// and tuples outside the domains.
inline Network build_network(const InstanceDoc& doc) {
  NetworkBuilder b(doc.name);
  for (const VariableDoc& v : doc.variables) b.add_variable(v.name, v.values);
  const int n = static_cast<int>(doc.variables.size());
  for (const ConstraintDoc& c : doc.constraints) {
    if (c.x < 0 || c.y < 0 || c.x >= n || c.y >= n)
      throw std::invalid_argument("constraint references an unknown variable");
    const auto& vx = doc.variables[c.x].values;
    const auto& vy = doc.variables[c.y].values;
    if (const auto* ext = std::get_if<ExtensionalSpec>(&c.relation)) {
      std::vector<std::pair<int, int>> idx;
      idx.reserve(ext->tuples.size());
      for (auto [a, bv] : ext->tuples) {
        auto ia = std::lower_bound(vx.begin(), vx.end(), a);
        auto ib = std::lower_bound(vy.begin(), vy.end(), bv);
        if (ia == vx.end() || *ia != a || ib == vy.end() || *ib != bv)
          throw std::invalid_argument("tuple (" + std::to_string(a) + "," + std::to_string(bv) +
                                      ") outside the domains of '" + doc.variables[c.x].name +
                                      "' and '" + doc.variables[c.y].name + "'");
        idx.emplace_back(static_cast<int>(ia - vx.begin()), static_cast<int>(ib - vy.begin()));
      }
      b.add_constraint(c.x, c.y,
                       Relation::table(static_cast<int>(vx.size()), static_cast<int>(vy.size()),
                                       ext->supports, idx));
    } else {
      const auto& in = std::get<IntensionalSpec>(c.relation);
      b.add_constraint(c.x, c.y, Relation::predicate(in.atoms, vx, vy));
    }
  }
  return std::move(b).build();
}

}  // namespace maxrpc

#endif  // MAXRPC_INSTANCE_HPP_
