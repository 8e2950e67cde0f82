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

#ifndef MAXRPC_DOMAINS_HPP_
#define MAXRPC_DOMAINS_HPP_

#include <cassert>
#include <cstdint>
#include <vector>

#include "maxrpc/network.hpp"
#include "maxrpc/stats.hpp"
#include "maxrpc/trail.hpp"

namespace maxrpc {

/// Trailed current domains. Membership is a flag per initial value index;
/// iteration walks the flags, so it is always in ascending value order.
class DomainStore final : public UndoSink {
 public:
  DomainStore(const Network& net, Trail& trail, SolverStats& stats)
      : trail_(trail), stats_(stats) {
    const int n = net.num_vars();
    offset_.resize(n + 1, 0);
    size_.resize(n);
    for (Var x = 0; x < n; ++x) {
      offset_[x + 1] = offset_[x] + net.initial_size(x);
      size_[x] = net.initial_size(x);
    }
    present_.assign(offset_[n], 1);
    trail_.attach(TrailTag::domain, this);
  }

  DomainStore(const DomainStore&) = delete;
  DomainStore& operator=(const DomainStore&) = delete;

  int num_vars() const { return static_cast<int>(size_.size()); }
  int size(Var x) const { return size_[x]; }
  int initial_size(Var x) const { return offset_[x + 1] - offset_[x]; }
  bool empty(Var x) const { return size_[x] == 0; }

  bool contains(Var x, ValueIndex a) const {
    return a >= 0 && a < initial_size(x) && present_[offset_[x] + a];
  }

  /// First present index >= from, or initial_size(x) when there is none.
  ValueIndex first_from(Var x, ValueIndex from) const {
    const int end = initial_size(x);
    const std::uint8_t* p = present_.data() + offset_[x];
    for (ValueIndex a = from < 0 ? 0 : from; a < end; ++a)
      if (p[a]) return a;
    return end;
  }
  ValueIndex first(Var x) const { return first_from(x, 0); }

  /// Removes a present value at the current trail level. Returns true iff
  /// the domain became empty.
  bool remove(Var x, ValueIndex a) {
    assert(contains(x, a) && "removing an absent value");
    present_[offset_[x] + a] = 0;
    --size_[x];
    ++stats_.deletions;
    trail_.record(TrailTag::domain, x, a);
    return size_[x] == 0;
  }

  /// Reduces D(x) to {a}; `a` must be present.
  void reduce_to(Var x, ValueIndex a) {
    assert(contains(x, a));
    for (ValueIndex b = first(x); b < initial_size(x); b = first_from(x, b + 1))
      if (b != a) remove(x, b);
  }

  std::vector<ValueIndex> indices(Var x) const {
    std::vector<ValueIndex> out;
    out.reserve(size_[x]);
    for (ValueIndex a = first(x); a < initial_size(x); a = first_from(x, a + 1)) out.push_back(a);
    return out;
  }

  const std::vector<std::uint8_t>& raw_flags() const { return present_; }

  void undo(TrailTag, std::int32_t slot, std::int32_t old) override {
    present_[offset_[slot] + old] = 1;
    ++size_[slot];
  }

 private:
  Trail& trail_;
  SolverStats& stats_;
  std::vector<int> offset_;
  std::vector<int> size_;
  std::vector<std::uint8_t> present_;
};

}  // namespace maxrpc

#endif  // MAXRPC_DOMAINS_HPP_
