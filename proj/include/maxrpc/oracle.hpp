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
// Brute-force definitional closures and exhaustive enumeration, used as
// ground truth. Works on InstanceDoc values directly and evaluates
// relations itself: nothing here goes through Network or Relation.

#ifndef MAXRPC_ORACLE_HPP_
#define MAXRPC_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxrpc/instance.hpp"

namespace maxrpc {

struct ClosureResult {
  std::vector<std::vector<int>> domains;  // surviving values per variable
  bool wipeout = false;
  int passes = 0;
};

namespace oracle_detail {

inline bool cmp(long long l, Cmp op, long long r) {
  switch (op) {
    case Cmp::eq: return l == r;
    case Cmp::ne: return l != r;
    case Cmp::lt: return l < r;
    case Cmp::le: return l <= r;
    case Cmp::gt: return l > r;
    case Cmp::ge: return l >= r;
  }
  return false;
}

/// Pairwise compatibility over values, in either orientation.
class Checker {
 public:
  explicit Checker(const InstanceDoc& doc) : n_(static_cast<int>(doc.variables.size())) {
    index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (std::size_t c = 0; c < doc.constraints.size(); ++c) {
      const ConstraintDoc& con = doc.constraints[c];
      index_[con.x * n_ + con.y] = static_cast<int>(c);
      index_[con.y * n_ + con.x] = static_cast<int>(c);
      Entry e;
      e.x = con.x;
      if (const auto* ext = std::get_if<ExtensionalSpec>(&con.relation)) {
        e.extensional = true;
        e.supports = ext->supports;
        e.tuples.insert(ext->tuples.begin(), ext->tuples.end());
      } else {
        e.atoms = std::get<IntensionalSpec>(con.relation).atoms;
      }
      entries_.push_back(std::move(e));
    }
  }

  bool constrained(int i, int j) const { return index_[i * n_ + j] >= 0; }

  /// Is (xi = a, xj = b) allowed? True when no constraint links them.
  bool ok(int i, long long a, int j, long long b) const {
    const int c = index_[i * n_ + j];
    if (c < 0) return true;
    const Entry& e = entries_[c];
    if (e.x != i) std::swap(a, b);
    if (e.extensional) {
      const bool listed = e.tuples.contains({static_cast<int>(a), static_cast<int>(b)});
      return listed == e.supports;
    }
    for (const Atom& t : e.atoms) {
      const long long v = t.term == Term::diff ? a - b : std::llabs(a - b);
      if (!cmp(v, t.op, t.k)) return false;
    }
    return true;
  }

 private:
  struct Entry {
    int x = 0;
    bool extensional = false;
    bool supports = true;
    std::set<std::pair<int, int>> tuples;
    std::vector<Atom> atoms;
  };
  int n_;
  std::vector<int> index_;
  std::vector<Entry> entries_;
};

using Rule = bool (*)(const Checker&, const std::vector<std::vector<int>>&, int, int);

// Value a of x_i has an AC-support on every constraint of x_i.
inline bool ac_viable(const Checker& ck, const std::vector<std::vector<int>>& dom, int i, int a) {
  const int n = static_cast<int>(dom.size());
  for (int j = 0; j < n; ++j) {
    if (j == i || !ck.constrained(i, j)) continue;
    bool found = false;
    for (int b : dom[j])
      if (ck.ok(i, a, j, b)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Value a of x_i has a PC-support on every constraint of x_i.
inline bool maxrpc_viable(const Checker& ck, const std::vector<std::vector<int>>& dom, int i,
                          int a) {
  const int n = static_cast<int>(dom.size());
  for (int j = 0; j < n; ++j) {
    if (j == i || !ck.constrained(i, j)) continue;
    bool found = false;
    for (int b : dom[j]) {
      if (!ck.ok(i, a, j, b)) continue;
      bool pc = true;
      for (int k = 0; k < n && pc; ++k) {
        if (k == i || k == j || !ck.constrained(i, k) || !ck.constrained(j, k)) continue;
        bool witness = false;
        for (int c : dom[k])
          if (ck.ok(i, a, k, c) && ck.ok(j, b, k, c)) {
            witness = true;
            break;
          }
        pc = witness;
      }
      if (pc) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline ClosureResult closure(const InstanceDoc& doc, std::vector<std::vector<int>> dom, Rule rule) {
  const Checker ck(doc);
  ClosureResult r;
  const int n = static_cast<int>(doc.variables.size());
  for (auto& d : dom)
    if (d.empty()) r.wipeout = true;
  bool changed = !r.wipeout;
  while (changed) {
    changed = false;
    ++r.passes;
    for (int i = 0; i < n && !r.wipeout; ++i) {
      std::vector<int> keep;
      for (int a : dom[i])
        if (rule(ck, dom, i, a)) keep.push_back(a);
      if (keep.size() != dom[i].size()) {
        changed = true;
        dom[i] = std::move(keep);
        if (dom[i].empty()) r.wipeout = true;
      }
    }
    if (r.wipeout) break;
  }
  r.domains = std::move(dom);
  return r;
}

inline std::vector<std::vector<int>> initial_domains(const InstanceDoc& doc) {
  std::vector<std::vector<int>> d;
  for (const auto& v : doc.variables) d.push_back(v.values);
  return d;
}

}  // namespace oracle_detail

/// Arc consistency closure of `domains` (the document's domains if empty).
inline ClosureResult brute_ac(const InstanceDoc& doc, std::vector<std::vector<int>> domains = {}) {
  if (domains.empty()) domains = oracle_detail::initial_domains(doc);
  return oracle_detail::closure(doc, std::move(domains), &oracle_detail::ac_viable);
}

/// maxRPC closure of `domains` (the document's domains if empty).
inline ClosureResult brute_maxrpc(const InstanceDoc& doc,
                                  std::vector<std::vector<int>> domains = {}) {
  if (domains.empty()) domains = oracle_detail::initial_domains(doc);
  return oracle_detail::closure(doc, std::move(domains), &oracle_detail::maxrpc_viable);
}

/// Default guard on the product of domain sizes.
inline constexpr double kEnumerationGuard = 1e7;

/// All solutions, lexicographic in variable order. Throws
/// std::length_error when the search space exceeds `guard`.
inline std::vector<std::vector<int>> enumerate_solutions(const InstanceDoc& doc,
                                                         double guard = kEnumerationGuard) {
  double space = 1.0;
  for (const auto& v : doc.variables) space *= static_cast<double>(v.values.size());
  if (space > guard)
    throw std::length_error("enumeration space " + std::to_string(space) + " exceeds guard " +
                            std::to_string(guard));
  const oracle_detail::Checker ck(doc);
  const int n = static_cast<int>(doc.variables.size());
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int a : doc.variables[i].values) {
      bool good = true;
      for (int j = 0; j < i && good; ++j) good = ck.ok(i, a, j, cur[j]);
      if (!good) continue;
      cur[i] = a;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace maxrpc

#endif  // MAXRPC_ORACLE_HPP_
