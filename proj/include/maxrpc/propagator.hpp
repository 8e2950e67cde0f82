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
// Coarse-grained max restricted path consistency.
//
// One engine covers maxRPC3 (incremental LastPC/LastAC), maxRPC3rm
// (residues plus bidirectional writes), their light versions (no PC-witness
// loss propagation), flag-level emulations of maxRPC2 and maxRPCrm, and
// AC3rm as a baseline.
//
// A value a_i of x_i is revised against an extracted variable x_j in two
// steps: search_pc_sup looks for a PC-support of a_i in D(x_j) (PC-support
// loss); check_pc_wit then makes sure that, for every x_k forming a
// 3-clique with x_i and x_j, the current PC-support of a_i in D(x_k) still
// has a PC-witness in D(x_j), looking for a replacement support if not
// (PC-witness loss). Deletions happen only in the revision loop.

#ifndef MAXRPC_PROPAGATOR_HPP_
#define MAXRPC_PROPAGATOR_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxrpc/domains.hpp"
#include "maxrpc/heuristics.hpp"
#include "maxrpc/network.hpp"
#include "maxrpc/stats.hpp"
#include "maxrpc/supports.hpp"

namespace maxrpc {

enum class Algorithm : std::uint8_t { maxrpc3, maxrpc3rm, maxrpc2_emu, maxrpcrm_emu, ac3rm };

inline constexpr std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::maxrpc3: return "maxrpc3";
    case Algorithm::maxrpc3rm: return "maxrpc3rm";
    case Algorithm::maxrpc2_emu: return "maxrpc2";
    case Algorithm::maxrpcrm_emu: return "maxrpcrm";
    case Algorithm::ac3rm: return "ac3rm";
  }
  return "?";
}

struct PropagatorConfig {
  Algorithm variant = Algorithm::maxrpc3rm;
  bool light = false;
  bool use_last_ac_shortcuts = true;
  // Residual mode only: a PC-support a_j found for a_i also becomes
  // LastPC of a_j towards x_i.
  bool use_bidirectionality = true;
  HeuristicId queue_heuristic = HeuristicId::fifo;
  std::optional<HeuristicId> case1;
  std::optional<HeuristicId> case2;
  std::optional<HeuristicId> case3;
  std::optional<HeuristicId> case4;
  bool audit_scans = false;

  /// Canonical configuration of a variant. `plus_h` selects dom/wdeg for
  /// the propagation list and for Case 1.
  static PropagatorConfig make(Algorithm variant, bool light = false, bool plus_h = false) {
    PropagatorConfig c;
    c.variant = variant;
    c.light = light;
    c.use_last_ac_shortcuts =
        variant == Algorithm::maxrpc3 || variant == Algorithm::maxrpc3rm;
    if (plus_h) {
      c.queue_heuristic = HeuristicId::dom_wdeg;
      c.case1 = HeuristicId::dom_wdeg;
    }
    return c;
  }

  SupportMode support_mode() const {
    return variant == Algorithm::maxrpc3 || variant == Algorithm::maxrpc2_emu
               ? SupportMode::incremental
               : SupportMode::residual;
  }

  /// Incremental LastAC-based scan windows and seekACsupport.
  bool ac_windows() const { return variant == Algorithm::maxrpc3; }

  void validate() const {
    if ((variant == Algorithm::maxrpc2_emu || variant == Algorithm::maxrpcrm_emu) &&
        use_last_ac_shortcuts)
      throw std::invalid_argument("emulated " + std::string(to_string(variant)) +
                                  " does not use LastAC shortcuts");
    for (const auto& c : {case1, case2, case3, case4})
      if (c == HeuristicId::fifo)
        throw std::invalid_argument("fifo only orders the propagation list");
  }
};

class Propagator {
 public:
  Propagator(const Network& net, DomainStore& domains, SupportStore& supports,
             WeightTable& weights, SolverStats& stats, const PropagatorConfig& config,
             std::span<const std::uint8_t> assigned = {})
      : net_(net),
        domains_(domains),
        supports_(supports),
        weights_(weights),
        stats_(stats),
        cfg_(config),
        ctx_{net, domains, weights, assigned},
        incremental_(supports.incremental()),
        windows_(config.ac_windows() && supports.incremental()),
        audit_(supports.incremental() && supports.scan_audit_enabled()) {
    cfg_.validate();
    if (supports.mode() != cfg_.support_mode())
      throw std::invalid_argument("support store mode does not match the variant");
  }

  const PropagatorConfig& config() const { return cfg_; }

  /// Counted constraint check.
  bool is_consistent(ArcId arc, ValueIndex a, ValueIndex b) {
    ++stats_.cc;
    return net_.allows(arc, a, b);
  }

  /// Preprocessing pass: every value is checked for a PC-support on every
  /// incident constraint, ignoring any stored LastPC. Pruned variables go to
  /// `list`. Returns false on a wipeout.
  bool initialize(PropagationList& list) {
    for (Var xi = 0; xi < net_.num_vars(); ++xi) {
      const auto nbs = net_.neighbors(xi);
      for (ValueIndex ai = domains_.first(xi); ai < domains_.initial_size(xi);
           ai = domains_.first_from(xi, ai + 1)) {
        for (const Neighbor& nb : nbs) {
          if (!search_pc_sup(ai, nb.arc, /*force=*/true)) {
            domains_.remove(xi, ai);
            list.push(xi);
            break;
          }
        }
      }
      if (domains_.empty(xi)) return false;
    }
    return true;
  }

  /// Runs the propagation list to a fixpoint. On a wipeout of x_i while
  /// revising against x_j, bumps the weight of c_ij and returns false.
  bool propagate(PropagationList& list) {
    if (cfg_.variant == Algorithm::ac3rm) return ac3rm_propagate(list);
    while (!list.empty()) {
      const Var xj = list.pick(cfg_.queue_heuristic, ctx_);
      order_neighbors_case1(ctx_, xj, cfg_.case1, revise_buf_);
      for (const Neighbor& nb : revise_buf_) {
        const Var xi = nb.var;
        const ArcId arc = nb.arc;
        for (ValueIndex ai = domains_.first(xi); ai < domains_.initial_size(xi);
             ai = domains_.first_from(xi, ai + 1)) {
          if (!search_pc_sup(ai, arc) || (!cfg_.light && !check_pc_wit(ai, arc))) {
            domains_.remove(xi, ai);
            list.push(xi);
          }
        }
        if (domains_.empty(xi)) {
          bump_weight(weights_, stats_, constraint_of(arc));
          list.clear();
          return false;
        }
      }
    }
    return true;
  }

  /// Coarse-grained AC with one residue per (arc, value) and bidirectional
  /// residue writes.
  bool ac3rm_propagate(PropagationList& list) {
    while (!list.empty()) {
      const Var xj = list.pick(cfg_.queue_heuristic, ctx_);
      order_neighbors_case1(ctx_, xj, cfg_.case1, revise_buf_);
      for (const Neighbor& nb : revise_buf_) {
        const Var xi = nb.var;
        const ArcId arc = nb.arc;
        for (ValueIndex ai = domains_.first(xi); ai < domains_.initial_size(xi);
             ai = domains_.first_from(xi, ai + 1)) {
          if (!seek_residual_ac(arc, xj, ai)) {
            domains_.remove(xi, ai);
            list.push(xi);
          }
        }
        if (domains_.empty(xi)) {
          bump_weight(weights_, stats_, constraint_of(arc));
          list.clear();
          return false;
        }
      }
    }
    return true;
  }

  /// True iff a_i (a value of arc's source) has a PC-support in D(x_j).
  /// `force` ignores a valid LastPC and rescans.
  bool search_pc_sup(ValueIndex ai, ArcId arc, bool force = false) {
    const Var xj = net_.arc_target(arc);
    const ValueIndex lp = supports_.get(SupportTable::pc, arc, ai);
    if (!force && valid(lp, xj)) return true;

    ValueIndex start = 0;
    if (incremental_) start = window_start(arc, ai, lp, xj);
    const int end = domains_.initial_size(xj);
    for (ValueIndex aj = domains_.first_from(xj, start); aj < end;
         aj = domains_.first_from(xj, aj + 1)) {
      if (audit_) supports_.note_pc_scan(arc, ai, aj);
      if (!is_consistent(arc, ai, aj)) continue;
      if (windows_) {
        const ValueIndex la = supports_.get(SupportTable::ac, arc, ai);
        if (!valid(la, xj) && la > lp) supports_.set(SupportTable::ac, arc, ai, aj);
      }
      if (search_pc_wit(ai, aj, arc, cfg_.case2)) {
        record_pc_support(arc, ai, aj);
        return true;
      }
    }
    return false;
  }

  /// True iff (a_i, a_j) is path consistent: every third variable of arc's
  /// 3-cliques holds a value compatible with both.
  bool search_pc_wit(ValueIndex ai, ValueIndex aj, ArcId arc, std::optional<HeuristicId> order) {
    std::span<const TriangleEntry> tri = net_.triangles(arc);
    if (order && tri.size() > 1) {
      order_triangle_vars(ctx_, arc, order, wit_buf_);
      tri = wit_buf_;
    }
    for (const TriangleEntry& t : tri) {
      const Var xk = t.third;
      if (cfg_.use_last_ac_shortcuts) {
        const ValueIndex wi = supports_.get(SupportTable::ac, t.src_arc, ai);
        if (valid(wi, xk) && is_consistent(t.dst_arc, aj, wi)) continue;
        const ValueIndex wj = supports_.get(SupportTable::ac, t.dst_arc, aj);
        if (valid(wj, xk) && is_consistent(t.src_arc, ai, wj)) continue;
      }
      ValueIndex start = 0;
      if (windows_) {
        if (!seek_ac_support(t.src_arc, ai) || !seek_ac_support(t.dst_arc, aj)) return false;
        start = std::max(supports_.get(SupportTable::ac, t.src_arc, ai),
                         supports_.get(SupportTable::ac, t.dst_arc, aj));
      }
      if (!find_witness(t.src_arc, ai, t.dst_arc, aj, xk, start)) return false;
    }
    return true;
  }

  /// PC-witness loss check for a_i against extracted x_j (arc is x_i -> x_j).
  bool check_pc_wit(ValueIndex ai, ArcId arc) {
    std::span<const TriangleEntry> tri = net_.triangles(arc);
    if (cfg_.case3 && tri.size() > 1) {
      order_triangle_vars(ctx_, arc, cfg_.case3, chk_buf_);
      tri = chk_buf_;
    }
    const Var xj = net_.arc_target(arc);
    for (const TriangleEntry& t : tri) {
      const Var xk = t.third;
      const ArcId arc_ik = t.src_arc;
      const ArcId arc_kj = reverse_arc(t.dst_arc);
      bool witness = false;
      const ValueIndex lp = supports_.get(SupportTable::pc, arc_ik, ai);
      if (valid(lp, xk)) {
        const ValueIndex ak = lp;
        if (cfg_.use_last_ac_shortcuts) {
          const ValueIndex wi = supports_.get(SupportTable::ac, arc, ai);
          const ValueIndex wk = supports_.get(SupportTable::ac, arc_kj, ak);
          witness = (valid(wi, xj) && is_consistent(arc_kj, ak, wi)) ||
                    (valid(wk, xj) && is_consistent(arc, ai, wk));
        }
        if (!witness) {
          bool find_pc_support = false;
          ValueIndex start = 0;
          if (windows_) {
            if (seek_ac_support(arc, ai) && seek_ac_support(arc_kj, ak))
              start = std::max(supports_.get(SupportTable::ac, arc, ai),
                               supports_.get(SupportTable::ac, arc_kj, ak));
            else
              find_pc_support = true;
          }
          if (find_pc_support) ++stats_.witness_skips;
          if (!find_pc_support) witness = find_witness(arc, ai, arc_kj, ak, xj, start);
        }
      }
      if (!witness) witness = find_replacement_support(ai, arc_ik, lp, xk);
      if (!witness) return false;
    }
    return true;
  }

  /// Incremental mode: makes LastAC(arc, a) the smallest AC-support of a in
  /// the arc target's domain. False if there is none.
  bool seek_ac_support(ArcId arc, ValueIndex a) {
    const Var y = net_.arc_target(arc);
    const ValueIndex la = supports_.get(SupportTable::ac, arc, a);
    if (valid(la, y)) return true;
    const int end = domains_.initial_size(y);
    for (ValueIndex b = domains_.first_from(y, la + 1); b < end; b = domains_.first_from(y, b + 1)) {
      if (is_consistent(arc, a, b)) {
        supports_.set(SupportTable::ac, arc, a, b);
        return true;
      }
    }
    return false;
  }

 private:
  bool valid(ValueIndex entry, Var x) const { return SupportStore::is_valid(entry, x, domains_); }

  // Start of a PC-support scan in incremental mode: nothing before
  // LastPC+1 is a PC-support, and with windows nothing before LastAC is an
  // AC-support (nothing up to LastAC when LastAC has been deleted).
  ValueIndex window_start(ArcId arc, ValueIndex ai, ValueIndex lp, Var xj) const {
    if (!windows_) return lp + 1;
    const ValueIndex la = supports_.get(SupportTable::ac, arc, ai);
    return valid(la, xj) ? std::max(lp + 1, la) : std::max(lp + 1, la + 1);
  }

  void record_pc_support(ArcId arc, ValueIndex ai, ValueIndex aj) {
    supports_.set(SupportTable::pc, arc, ai, aj);
    if (!incremental_) {
      supports_.set(SupportTable::ac, arc, ai, aj);
      if (cfg_.use_bidirectionality) supports_.set(SupportTable::pc, reverse_arc(arc), aj, ai);
    }
  }

  // Scans D(x) from `start` for a value compatible with a (over arc_a) and
  // with b (over arc_b). Residual mode stores the witness as LastAC of both.
  bool find_witness(ArcId arc_a, ValueIndex a, ArcId arc_b, ValueIndex b, Var x, ValueIndex start) {
    const int end = domains_.initial_size(x);
    for (ValueIndex w = domains_.first_from(x, start); w < end; w = domains_.first_from(x, w + 1)) {
      if (is_consistent(arc_a, a, w) && is_consistent(arc_b, b, w)) {
        if (!incremental_) {
          supports_.set(SupportTable::ac, arc_a, a, w);
          supports_.set(SupportTable::ac, arc_b, b, w);
        }
        return true;
      }
    }
    return false;
  }

  // Second phase of the PC-witness loss check: a new PC-support for a_i in
  // D(x_k). Incremental mode resumes after LastPC; residual mode rescans,
  // since a residue says nothing about the values before it.
  bool find_replacement_support(ValueIndex ai, ArcId arc_ik, ValueIndex lp, Var xk) {
    ValueIndex start = 0;
    if (incremental_) start = window_start(arc_ik, ai, lp, xk);
    const int end = domains_.initial_size(xk);
    for (ValueIndex ak = domains_.first_from(xk, start); ak < end;
         ak = domains_.first_from(xk, ak + 1)) {
      if (audit_) supports_.note_pc_scan(arc_ik, ai, ak);
      if (!is_consistent(arc_ik, ai, ak)) continue;
      if (windows_) {
        const ValueIndex la = supports_.get(SupportTable::ac, arc_ik, ai);
        if (!valid(la, xk) && la > lp) supports_.set(SupportTable::ac, arc_ik, ai, ak);
      }
      if (search_pc_wit(ai, ak, arc_ik, cfg_.case4)) {
        record_pc_support(arc_ik, ai, ak);
        return true;
      }
    }
    return false;
  }

  bool seek_residual_ac(ArcId arc, Var xj, ValueIndex ai) {
    if (valid(supports_.get(SupportTable::ac, arc, ai), xj)) return true;
    const int end = domains_.initial_size(xj);
    for (ValueIndex aj = domains_.first(xj); aj < end; aj = domains_.first_from(xj, aj + 1)) {
      if (is_consistent(arc, ai, aj)) {
        supports_.set(SupportTable::ac, arc, ai, aj);
        if (cfg_.use_bidirectionality) supports_.set(SupportTable::ac, reverse_arc(arc), aj, ai);
        return true;
      }
    }
    return false;
  }

  const Network& net_;
  DomainStore& domains_;
  SupportStore& supports_;
  WeightTable& weights_;
  SolverStats& stats_;
  PropagatorConfig cfg_;
  HeuristicContext ctx_;
  bool incremental_;
  bool windows_;
  bool audit_;
  std::vector<Neighbor> revise_buf_;
  std::vector<TriangleEntry> wit_buf_;
  std::vector<TriangleEntry> chk_buf_;
};

}  // namespace maxrpc

#endif  // MAXRPC_PROPAGATOR_HPP_
