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

#ifndef MAXRPC_SESSION_HPP_
#define MAXRPC_SESSION_HPP_

#include <cstdint>
#include <vector>

#include "maxrpc/domains.hpp"
#include "maxrpc/heuristics.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/propagator.hpp"
#include "maxrpc/stats.hpp"
#include "maxrpc/supports.hpp"
#include "maxrpc/trail.hpp"

namespace maxrpc {

/// Copy of the backtrackable state, for restoration checks.
struct StateSnapshot {
  int level = 0;
  std::vector<std::uint8_t> domains;
  std::vector<ValueIndex> last_pc;
  std::vector<ValueIndex> last_ac;

  friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
};

/// Private solver state over a shared immutable network. Pinned in memory:
/// the stores register themselves with the trail.
class Session {
 public:
  Session(const Network& net, const PropagatorConfig& config)
      : net_(net),
        domains_(net, trail_, stats_),
        supports_(net, trail_, config.support_mode(), config.audit_scans),
        weights_(net.num_constraints()),
        assigned_(net.num_vars(), 0),
        list_(net.num_vars()),
        propagator_(net, domains_, supports_, weights_, stats_, config, assigned_) {}

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const Network& network() const { return net_; }
  Trail& trail() { return trail_; }
  DomainStore& domains() { return domains_; }
  const DomainStore& domains() const { return domains_; }
  SupportStore& supports() { return supports_; }
  const SupportStore& supports() const { return supports_; }
  WeightTable& weights() { return weights_; }
  SolverStats& stats() { return stats_; }
  const SolverStats& stats() const { return stats_; }
  PropagationList& list() { return list_; }
  Propagator& propagator() { return propagator_; }
  std::vector<std::uint8_t>& assigned() { return assigned_; }

  /// Stand-alone enforcement from the current state: initialization plus
  /// propagation (all variables queued for AC3rm). False on wipeout.
  bool preprocess() {
    list_.clear();
    if (propagator_.config().variant == Algorithm::ac3rm) {
      for (Var x = 0; x < net_.num_vars(); ++x) list_.push(x);
    } else if (!propagator_.initialize(list_)) {
      list_.clear();
      return false;
    }
    return propagator_.propagate(list_);
  }

  /// Propagates the effect of a change to D(x).
  bool propagate_from(Var x) {
    list_.clear();
    list_.push(x);
    return propagator_.propagate(list_);
  }

  /// Re-runs propagation with every variable queued; used for idempotence
  /// checks.
  bool propagate_all() {
    list_.clear();
    for (Var x = 0; x < net_.num_vars(); ++x) list_.push(x);
    return propagator_.propagate(list_);
  }

  StateSnapshot snapshot() const {
    return {trail_.level(), domains_.raw_flags(), supports_.raw(SupportTable::pc),
            supports_.raw(SupportTable::ac)};
  }

  /// Current domains as value lists.
  std::vector<std::vector<int>> domain_values() const {
    std::vector<std::vector<int>> out(net_.num_vars());
    for (Var x = 0; x < net_.num_vars(); ++x)
      for (ValueIndex a : domains_.indices(x)) out[x].push_back(net_.values(x)[a]);
    return out;
  }

 private:
  const Network& net_;
  Trail trail_;
  SolverStats stats_;
  DomainStore domains_;
  SupportStore supports_;
  WeightTable weights_;
  std::vector<std::uint8_t> assigned_;
  PropagationList list_;
  Propagator propagator_;
};

}  // namespace maxrpc

#endif  // MAXRPC_SESSION_HPP_
