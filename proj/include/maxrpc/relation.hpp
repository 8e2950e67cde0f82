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
// Binary relations over value indices: dense bit tables, hashed pair sets
// and small arithmetic predicates over the two variable values.

#ifndef MAXRPC_RELATION_HPP_
#define MAXRPC_RELATION_HPP_

#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace maxrpc {

enum class Cmp : std::uint8_t { eq, ne, lt, le, gt, ge };
enum class Term : std::uint8_t { diff, absdiff };

inline constexpr std::string_view to_string(Cmp op) {
  switch (op) {
    case Cmp::eq: return "eq";
    case Cmp::ne: return "ne";
    case Cmp::lt: return "lt";
    case Cmp::le: return "le";
    case Cmp::gt: return "gt";
    case Cmp::ge: return "ge";
  }
  return "?";
}

inline constexpr std::string_view to_string(Term t) {
  return t == Term::diff ? "diff" : "absdiff";
}

inline Cmp parse_cmp(std::string_view s) {
  if (s == "eq") return Cmp::eq;
  if (s == "ne") return Cmp::ne;
  if (s == "lt") return Cmp::lt;
  if (s == "le") return Cmp::le;
  if (s == "gt") return Cmp::gt;
  if (s == "ge") return Cmp::ge;
  throw std::invalid_argument("unknown comparison '" + std::string(s) + "'");
}

inline Term parse_term(std::string_view s) {
  if (s == "diff") return Term::diff;
  if (s == "absdiff") return Term::absdiff;
  throw std::invalid_argument("unknown term '" + std::string(s) + "'");
}

/// Mirror of a comparison when its operands are swapped (a op b <=> b op' a).
inline constexpr Cmp swap_operands(Cmp op) {
  switch (op) {
    case Cmp::lt: return Cmp::gt;
    case Cmp::le: return Cmp::ge;
    case Cmp::gt: return Cmp::lt;
    case Cmp::ge: return Cmp::le;
    default: return op;
  }
}

/// One arithmetic condition `term(x, y) op k` where term is x-y or |x-y|.
struct Atom {
  Term term = Term::diff;
  Cmp op = Cmp::ne;
  long long k = 0;

  bool holds(long long x, long long y) const {
    long long t = x - y;
    if (term == Term::absdiff) t = t < 0 ? -t : t;
    switch (op) {
      case Cmp::eq: return t == k;
      case Cmp::ne: return t != k;
      case Cmp::lt: return t < k;
      case Cmp::le: return t <= k;
      case Cmp::gt: return t > k;
      case Cmp::ge: return t >= k;
    }
    return false;
  }

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Relation between the values of a first ("row") and second ("column")
/// variable, evaluated on value indices. Evaluation is pure.
class Relation {
 public:
  enum class Kind : std::uint8_t { dense, sparse, predicate };

  /// Builds a table relation from index pairs. `allowed` tells whether the
  /// pairs are the supports or the conflicts. Tables with at least half of
  /// all pairs allowed become bit matrices, the others hashed pair sets.
  static Relation table(int rows, int cols, bool allowed,
                        std::span<const std::pair<int, int>> pairs) {
    Relation r;
    r.rows_ = rows;
    r.cols_ = cols;
    std::unordered_set<std::uint64_t> listed;
    listed.reserve(pairs.size() * 2);
    for (auto [a, b] : pairs) {
      if (a < 0 || a >= rows || b < 0 || b >= cols)
        throw std::out_of_range("relation tuple outside the domains");
      listed.insert(key(a, b));
    }
    const std::uint64_t total = static_cast<std::uint64_t>(rows) * cols;
    const std::uint64_t n_allowed = allowed ? listed.size() : total - listed.size();
    if (2 * n_allowed >= total) {
      r.kind_ = Kind::dense;
      r.bits_.assign((total + 63) / 64, allowed ? 0 : ~std::uint64_t{0});
      for (std::uint64_t idx : listed) {
        const int a = static_cast<int>(idx >> 32);
        const int b = static_cast<int>(idx & 0xffffffffu);
        const std::uint64_t bit = static_cast<std::uint64_t>(a) * cols + b;
        if (allowed)
          r.bits_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        else
          r.bits_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
      }
    } else {
      r.kind_ = Kind::sparse;
      if (allowed) {
        r.pairs_ = std::move(listed);
      } else {
        for (int a = 0; a < rows; ++a)
          for (int b = 0; b < cols; ++b)
            if (!listed.contains(key(a, b))) r.pairs_.insert(key(a, b));
      }
    }
    return r;
  }

  /// Conjunction of atoms over the actual values of both variables.
  static Relation predicate(std::vector<Atom> atoms, std::vector<int> row_values,
                            std::vector<int> col_values) {
    Relation r;
    r.kind_ = Kind::predicate;
    r.rows_ = static_cast<int>(row_values.size());
    r.cols_ = static_cast<int>(col_values.size());
    r.atoms_ = std::move(atoms);
    r.row_values_ = std::move(row_values);
    r.col_values_ = std::move(col_values);
    return r;
  }

  bool allows(int a, int b) const {
    switch (kind_) {
      case Kind::dense: {
        const std::uint64_t bit = static_cast<std::uint64_t>(a) * cols_ + b;
        return (bits_[bit >> 6] >> (bit & 63)) & 1;
      }
      case Kind::sparse:
        return pairs_.contains(key(a, b));
      case Kind::predicate: {
        const long long x = row_values_[a];
        const long long y = col_values_[b];
        for (const Atom& atom : atoms_)
          if (!atom.holds(x, y)) return false;
        return true;
      }
    }
    return false;
  }

  Kind kind() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  Kind kind_ = Kind::dense;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> pairs_;
  std::vector<Atom> atoms_;
  std::vector<int> row_values_;
  std::vector<int> col_values_;
};

}  // namespace maxrpc

#endif  // MAXRPC_RELATION_HPP_
