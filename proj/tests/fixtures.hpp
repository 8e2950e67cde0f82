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
// Small instances and seeded suites shared by the unit and acceptance tests.

#ifndef MAXRPC_TESTS_FIXTURES_HPP_
#define MAXRPC_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "maxrpc/maxrpc.hpp"

namespace maxrpc::testing {

inline std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

/// Fluent construction of documents in tests.
class Doc {
 public:
  explicit Doc(std::string name = "t") { doc_.name = std::move(name); }

  Doc& var(std::string name, std::vector<int> values) {
    doc_.variables.push_back({std::move(name), std::move(values)});
    return *this;
  }
  Doc& vars(int n, std::vector<int> values) {
    for (int i = 0; i < n; ++i) var("x" + std::to_string(i), values);
    return *this;
  }
  Doc& pred(int x, int y, std::vector<Atom> atoms) {
    doc_.constraints.push_back({x, y, IntensionalSpec{std::move(atoms)}});
    return *this;
  }
  Doc& ne(int x, int y) { return pred(x, y, {{Term::diff, Cmp::ne, 0}}); }
  Doc& eq(int x, int y) { return pred(x, y, {{Term::diff, Cmp::eq, 0}}); }
  Doc& lt(int x, int y) { return pred(x, y, {{Term::diff, Cmp::lt, 0}}); }
  Doc& table(int x, int y, bool supports, std::vector<std::pair<int, int>> tuples) {
    doc_.constraints.push_back({x, y, ExtensionalSpec{supports, std::move(tuples)}});
    return *this;
  }

  const InstanceDoc& doc() const { return doc_; }
  operator const InstanceDoc&() const { return doc_; }

 private:
  InstanceDoc doc_;
};

inline InstanceDoc ne_triangle(int d = 2) {
  return Doc("ne-triangle").vars(3, range(0, d - 1)).ne(0, 1).ne(1, 2).ne(0, 2).doc();
}

inline InstanceDoc eq_triangle(int d = 2) {
  return Doc("eq-triangle").vars(3, range(0, d - 1)).eq(0, 1).eq(1, 2).eq(0, 2).doc();
}

inline InstanceDoc lt_chain() {
  return Doc("lt-chain").vars(3, range(0, 2)).lt(0, 1).lt(1, 2).doc();
}

struct RandomParams {
  int n = 0, d = 0;
  double p1 = 0, p2 = 0;
  std::uint64_t seed = 0;
};

/// The seeded random suite: n in [3,8], d in [2,5], p1 in [0.3,1],
/// p2 in [0.1,0.7]; instance i uses generator seed i.
inline std::vector<RandomParams> random_suite_params(int count) {
  Rng r(7);
  std::vector<RandomParams> out;
  for (int i = 0; i < count; ++i) {
    RandomParams p;
    p.n = 3 + static_cast<int>(r.below(6));
    p.d = 2 + static_cast<int>(r.below(4));
    p.p1 = 0.3 + 0.7 * r.unit();
    p.p2 = 0.1 + 0.6 * r.unit();
    p.seed = static_cast<std::uint64_t>(i);
    out.push_back(p);
  }
  return out;
}

inline std::vector<InstanceDoc> random_suite(int count) {
  std::vector<InstanceDoc> out;
  for (const RandomParams& p : random_suite_params(count))
    out.push_back(gen_model_b(p.n, p.d, p.p1, p.p2, p.seed));
  return out;
}

/// Search suite: 12 model B instances at the critical tightness of
/// (n=50, d=15, p1=0.2), 13 geometric instances at their SAT/UNSAT
/// boundary, queens 8..12.
inline std::vector<InstanceDoc> search_suite() {
  std::vector<InstanceDoc> out;
  const double mb[] = {0.40, 0.41, 0.42};
  for (int i = 0; i < 12; ++i) out.push_back(gen_model_b(50, 15, 0.2, mb[i % 3], 100 + i));
  const double geo[] = {0.34, 0.35, 0.36};
  for (int i = 0; i < 13; ++i) out.push_back(gen_geometric(50, 12, 0.3, geo[i % 3], 200 + i));
  for (int n = 8; n <= 12; ++n) out.push_back(gen_queens(n));
  return out;
}

/// Domains of a session as value lists, or empty vectors after a wipeout.
inline std::vector<std::vector<int>> fixpoint(const Network& net, const PropagatorConfig& cfg,
                                              bool* ok = nullptr) {
  Session s(net, cfg);
  const bool r = s.preprocess();
  if (ok) *ok = r;
  return r ? s.domain_values() : std::vector<std::vector<int>>{};
}

inline bool included(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
  return bench_detail::included(a, b);
}

inline std::vector<Algorithm> all_variants() {
  return {Algorithm::maxrpc3, Algorithm::maxrpc3rm, Algorithm::maxrpc2_emu, Algorithm::maxrpcrm_emu,
          Algorithm::ac3rm};
}

inline std::vector<Algorithm> maxrpc_variants() {
  return {Algorithm::maxrpc3, Algorithm::maxrpc3rm, Algorithm::maxrpc2_emu, Algorithm::maxrpcrm_emu};
}

}  // namespace maxrpc::testing

#endif  // MAXRPC_TESTS_FIXTURES_HPP_
