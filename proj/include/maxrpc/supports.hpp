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
// LastPC / LastAC tables: one entry per (directed arc, source value).
//
// In incremental mode both tables are maintained exactly along a branch:
// every overwrite is trailed and undone on backtrack, so an entry divides
// the target domain into "already refuted" and "not yet examined" values.
// In residual mode entries are plain hints that survive backtracking and
// must be revalidated before use.

#ifndef MAXRPC_SUPPORTS_HPP_
#define MAXRPC_SUPPORTS_HPP_

#include <cstdint>
#include <vector>

#include "maxrpc/domains.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/trail.hpp"

namespace maxrpc {

enum class SupportMode : std::uint8_t { incremental, residual };
enum class SupportTable : std::uint8_t { pc, ac };

class SupportStore final : public UndoSink {
 public:
  SupportStore(const Network& net, Trail& trail, SupportMode mode, bool scan_audit = false)
      : trail_(trail), mode_(mode) {
    offset_.resize(net.num_arcs() + 1, 0);
    for (ArcId arc = 0; arc < net.num_arcs(); ++arc)
      offset_[arc + 1] = offset_[arc] + net.initial_size(net.arc_source(arc));
    last_pc_.assign(offset_.back(), kNil);
    last_ac_.assign(offset_.back(), kNil);
    trail_.attach(TrailTag::last_pc, this);
    trail_.attach(TrailTag::last_ac, this);
    trail_.attach(TrailTag::scan_mark, this);
    if (scan_audit) enable_scan_audit();
  }

  SupportStore(const SupportStore&) = delete;
  SupportStore& operator=(const SupportStore&) = delete;

  SupportMode mode() const { return mode_; }
  bool incremental() const { return mode_ == SupportMode::incremental; }
  std::size_t entries_per_table() const { return last_pc_.size(); }

  ValueIndex get(SupportTable t, ArcId arc, ValueIndex a) const {
    return table(t)[offset_[arc] + a];
  }

  void set(SupportTable t, ArcId arc, ValueIndex a, ValueIndex v) {
    const std::int32_t slot = offset_[arc] + a;
    auto& tab = table(t);
    if (tab[slot] == v) return;
    if (incremental())
      trail_.record(t == SupportTable::pc ? TrailTag::last_pc : TrailTag::last_ac, slot, tab[slot]);
    tab[slot] = v;
  }

  /// True iff `entry` is a value index currently in D(x).
  static bool is_valid(ValueIndex entry, Var x, const DomainStore& domains) {
    return entry != kNil && domains.contains(x, entry);
  }

  /// Turns on the per-(arc, value) high-water audit of PC-support scans.
  /// The marks are trailed, so they describe the current branch only.
  void enable_scan_audit() {
    scan_mark_.assign(last_pc_.size(), kNil);
    audit_ = true;
  }
  bool scan_audit_enabled() const { return audit_; }

  /// Records that value `v` of arc's target is examined as a PC-support
  /// candidate for `a`. Counts a violation if it does not exceed every
  /// previously examined candidate on this branch.
  void note_pc_scan(ArcId arc, ValueIndex a, ValueIndex v) {
    const std::int32_t slot = offset_[arc] + a;
    if (v <= scan_mark_[slot]) {
      ++audit_violations_;
      return;
    }
    trail_.record(TrailTag::scan_mark, slot, scan_mark_[slot]);
    scan_mark_[slot] = v;
  }
  std::uint64_t scan_audit_violations() const { return audit_violations_; }

  const std::vector<ValueIndex>& raw(SupportTable t) const { return table(t); }

  void undo(TrailTag tag, std::int32_t slot, std::int32_t old) override {
    switch (tag) {
      case TrailTag::last_pc: last_pc_[slot] = old; break;
      case TrailTag::last_ac: last_ac_[slot] = old; break;
      case TrailTag::scan_mark: scan_mark_[slot] = old; break;
      default: break;
    }
  }

 private:
  std::vector<ValueIndex>& table(SupportTable t) { return t == SupportTable::pc ? last_pc_ : last_ac_; }
  const std::vector<ValueIndex>& table(SupportTable t) const {
    return t == SupportTable::pc ? last_pc_ : last_ac_;
  }

  Trail& trail_;
  SupportMode mode_;
  std::vector<std::int32_t> offset_;
  std::vector<ValueIndex> last_pc_;
  std::vector<ValueIndex> last_ac_;
  std::vector<ValueIndex> scan_mark_;
  bool audit_ = false;
  std::uint64_t audit_violations_ = 0;
};

}  // namespace maxrpc

#endif  // MAXRPC_SUPPORTS_HPP_
