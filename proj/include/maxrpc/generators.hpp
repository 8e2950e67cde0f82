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
// Instance generators. All of them are pure functions of their arguments;
// the random ones draw from mt19937_64 through a fixed bounded draw, so the
// output does not depend on the standard library's distributions.

#ifndef MAXRPC_GENERATORS_HPP_
#define MAXRPC_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxrpc/instance.hpp"

namespace maxrpc {

/// Deterministic random source.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, bound). Rejection sampling on the top of the range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = eng_();
    while (r >= limit);
    return r % bound;
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// First k entries of a uniformly shuffled copy of v.
  template <typename T>
  std::vector<T> sample(std::vector<T> v, std::size_t k) {
    if (k > v.size()) k = v.size();
    for (std::size_t i = 0; i < k; ++i)
      std::swap(v[i], v[i + below(v.size() - i)]);
    v.resize(k);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

namespace gen_detail {

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline void check_unit(const char* what, double v, bool allow_zero) {
  if (!(v <= 1.0) || !(allow_zero ? v >= 0.0 : v > 0.0))
    throw std::invalid_argument(std::string(what) + " must be in " + (allow_zero ? "[0,1]" : "(0,1]") +
                                ", got " + fmt_double(v));
}

inline std::vector<VariableDoc> plain_vars(int n, int d) {
  std::vector<VariableDoc> vars(n);
  for (int i = 0; i < n; ++i) {
    vars[i].name = "x" + std::to_string(i);
    for (int v = 0; v < d; ++v) vars[i].values.push_back(v);
  }
  return vars;
}

// Exactly `count` distinct conflicts on a d x d table, avoiding `planted`
// when given.
inline ExtensionalSpec random_conflicts(Rng& rng, int d, long long count,
                                        const std::pair<int, int>* planted) {
  std::vector<std::pair<int, int>> all;
  all.reserve(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (!planted || planted->first != a || planted->second != b) all.emplace_back(a, b);
  ExtensionalSpec ext;
  ext.supports = false;
  ext.tuples = rng.sample(std::move(all), static_cast<std::size_t>(count));
  std::sort(ext.tuples.begin(), ext.tuples.end());
  return ext;
}

}  // namespace gen_detail

/// Number of items model B draws: p * total rounded half to even.
inline long long model_b_count(double p, long long total) {
  return static_cast<long long>(std::nearbyint(p * static_cast<double>(total)));
}

/// Model B: exactly model_b_count(p1, n(n-1)/2) distinct pairs, each with
/// exactly model_b_count(p2, d*d) distinct conflicts. With `forced`, a
/// random solution is planted and never forbidden (at most d*d-1
/// conflicts per constraint).
inline InstanceDoc gen_model_b(int n, int d, double p1, double p2, std::uint64_t seed,
                               bool forced = false) {
  if (n < 2) throw std::invalid_argument("model B needs n >= 2, got " + std::to_string(n));
  if (d < 1) throw std::invalid_argument("model B needs d >= 1, got " + std::to_string(d));
  gen_detail::check_unit("p1", p1, false);
  gen_detail::check_unit("p2", p2, true);
  Rng rng(seed);
  InstanceDoc doc;
  doc.name = std::string(forced ? "modelb-forced-" : "modelb-") + std::to_string(n) + "-" +
             std::to_string(d) + "-" + gen_detail::fmt_double(p1) + "-" +
             gen_detail::fmt_double(p2) + "-s" + std::to_string(seed);
  doc.variables = gen_detail::plain_vars(n, d);

  std::vector<int> planted;
  if (forced)
    for (int i = 0; i < n; ++i) planted.push_back(static_cast<int>(rng.below(d)));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const long long m = model_b_count(p1, static_cast<long long>(pairs.size()));
  pairs = rng.sample(std::move(pairs), static_cast<std::size_t>(m));
  std::sort(pairs.begin(), pairs.end());

  long long t = model_b_count(p2, static_cast<long long>(d) * d);
  if (forced && t > static_cast<long long>(d) * d - 1) t = static_cast<long long>(d) * d - 1;
  for (auto [i, j] : pairs) {
    const std::pair<int, int> sol{forced ? planted[i] : 0, forced ? planted[j] : 0};
    doc.constraints.push_back({i, j, gen_detail::random_conflicts(rng, d, t, forced ? &sol : nullptr)});
  }

  doc.provenance = {{"generator", forced ? "modelb-forced" : "modelb"},
                    {"n", std::to_string(n)},
                    {"d", std::to_string(d)},
                    {"p1", gen_detail::fmt_double(p1)},
                    {"p2", gen_detail::fmt_double(p2)},
                    {"seed", std::to_string(seed)}};
  return doc;
}

/// Random geometric instance: n points in the unit square, a constraint
/// between every pair at distance <= dist, model_b_count(p2, d*d)
/// conflicts per constraint.
inline InstanceDoc gen_geometric(int n, int d, double dist, double p2, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("geometric needs n >= 1, got " + std::to_string(n));
  if (d < 1) throw std::invalid_argument("geometric needs d >= 1, got " + std::to_string(d));
  if (!(dist > 0.0)) throw std::invalid_argument("dist must be > 0, got " + gen_detail::fmt_double(dist));
  gen_detail::check_unit("p2", p2, true);
  const double bound = std::min(dist, std::sqrt(2.0));
  Rng rng(seed);
  InstanceDoc doc;
  doc.name = "geom-" + std::to_string(n) + "-" + std::to_string(d) + "-" +
             gen_detail::fmt_double(dist) + "-" + gen_detail::fmt_double(p2) + "-s" +
             std::to_string(seed);
  doc.variables = gen_detail::plain_vars(n, d);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) {
    p.first = rng.unit();
    p.second = rng.unit();
  }
  const long long t = model_b_count(p2, static_cast<long long>(d) * d);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second) <= bound)
        doc.constraints.push_back({i, j, gen_detail::random_conflicts(rng, d, t, nullptr)});
  doc.provenance = {{"generator", "geometric"},
                    {"n", std::to_string(n)},
                    {"d", std::to_string(d)},
                    {"dist", gen_detail::fmt_double(dist)},
                    {"p2", gen_detail::fmt_double(p2)},
                    {"seed", std::to_string(seed)}};
  return doc;
}

/// n-queens, one variable per column, intensional constraints.
inline InstanceDoc gen_queens(int n) {
  if (n < 1) throw std::invalid_argument("queens needs n >= 1, got " + std::to_string(n));
  InstanceDoc doc;
  doc.name = "queens-" + std::to_string(n);
  doc.variables.resize(n);
  for (int i = 0; i < n; ++i) {
    doc.variables[i].name = "q" + std::to_string(i);
    for (int v = 0; v < n; ++v) doc.variables[i].values.push_back(v);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      doc.constraints.push_back(
          {i, j,
           IntensionalSpec{{{Term::diff, Cmp::ne, 0}, {Term::absdiff, Cmp::ne, j - i}}}});
  doc.provenance = {{"generator", "queens"}, {"n", std::to_string(n)}};
  return doc;
}

}  // namespace maxrpc

#endif  // MAXRPC_GENERATORS_HPP_
