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

#ifndef MAXRPC_STATS_HPP_
#define MAXRPC_STATS_HPP_

#include <cstdint>
#include <vector>

namespace maxrpc {

struct BumpEvent {
  int constraint = 0;
  std::uint64_t node = 0;

  friend bool operator==(const BumpEvent&, const BumpEvent&) = default;
};

struct SolverStats {
  std::uint64_t cc = 0;         // relation evaluations
  std::uint64_t nodes = 0;      // attempted decisions
  std::uint64_t deletions = 0;  // value removals
  std::uint64_t witness_skips = 0;  // checkPCwit went straight to a new PC-support
  double elapsed = 0.0;         // wall seconds
  std::vector<BumpEvent> bumps;
};

}  // namespace maxrpc

#endif  // MAXRPC_STATS_HPP_
