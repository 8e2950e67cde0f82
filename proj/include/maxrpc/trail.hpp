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

#ifndef MAXRPC_TRAIL_HPP_
#define MAXRPC_TRAIL_HPP_

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace maxrpc {

enum class TrailTag : std::uint8_t { domain, last_pc, last_ac, scan_mark };
inline constexpr std::size_t kTrailTags = 4;

struct TrailRecord {
  TrailTag tag;
  std::int32_t slot;
  std::int32_t old;
};

/// Receives undo callbacks for the records it tagged.
class UndoSink {
 public:
  virtual void undo(TrailTag tag, std::int32_t slot, std::int32_t old) = 0;

 protected:
  ~UndoSink() = default;
};

/// Single undo stack shared by domains and support tables. Records pushed
/// at level L are undone, newest first, by restore(L') for any L' < L.
class Trail {
 public:
  int level() const { return static_cast<int>(marks_.size()); }

  void push_level() { marks_.push_back(records_.size()); }

  void restore(int level) {
    assert(level >= 0 && level <= this->level());
    if (level == this->level()) return;
    const std::size_t keep = marks_[level];
    while (records_.size() > keep) {
      const TrailRecord r = records_.back();
      records_.pop_back();
      sinks_[static_cast<std::size_t>(r.tag)]->undo(r.tag, r.slot, r.old);
    }
    marks_.resize(level);
  }

  void record(TrailTag tag, std::int32_t slot, std::int32_t old) {
    records_.push_back({tag, slot, old});
  }

  void attach(TrailTag tag, UndoSink* sink) { sinks_[static_cast<std::size_t>(tag)] = sink; }

  std::size_t size() const { return records_.size(); }

 private:
  std::vector<TrailRecord> records_;
  std::vector<std::size_t> marks_;
  std::array<UndoSink*, kTrailTags> sinks_{};
};

}  // namespace maxrpc

#endif  // MAXRPC_TRAIL_HPP_
