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

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace maxrpc {
namespace {

using testing::Doc;
using testing::range;

std::vector<std::vector<int>> domains_of(const InstanceDoc& doc, const PropagatorConfig& cfg,
                                         bool* ok) {
  const Network net = build_network(doc);
  return testing::fixpoint(net, cfg, ok);
}

// Does a_i have a PC-support in D(x_k)? Evaluated with the oracle checker.
bool has_pc_support(const InstanceDoc& doc, const std::vector<std::vector<int>>& dom, int i, int a,
                    int k) {
  const oracle_detail::Checker ck(doc);
  const int n = static_cast<int>(dom.size());
  for (int b : dom[k]) {
    if (!ck.ok(i, a, k, b)) continue;
    bool pc = true;
    for (int m = 0; m < n && pc; ++m) {
      if (m == i || m == k || !ck.constrained(i, m) || !ck.constrained(k, m)) continue;
      bool w = false;
      for (int c : dom[m]) w = w || (ck.ok(i, a, m, c) && ck.ok(k, b, m, c));
      pc = w;
    }
    if (pc) return true;
  }
  return false;
}

TEST(Initialize, NeTriangleWipesOut) {
  for (Algorithm a : testing::maxrpc_variants())
    for (bool light : {false, true}) {
      bool ok = true;
      domains_of(testing::ne_triangle(), PropagatorConfig::make(a, light), &ok);
      EXPECT_FALSE(ok) << to_string(a) << " light=" << light;
    }
}

TEST(Initialize, EqTriangleKeepsEverything) {
  for (Algorithm a : testing::maxrpc_variants()) {
    const Network net = build_network(testing::eq_triangle());
    Session s(net, PropagatorConfig::make(a));
    ASSERT_TRUE(s.preprocess());
    EXPECT_EQ(s.stats().deletions, 0u);
  }
}

TEST(Initialize, SingleLessThanIsPureAc) {
  const InstanceDoc doc = Doc().vars(2, range(0, 2)).lt(0, 1);
  for (Algorithm a : testing::all_variants()) {
    bool ok = false;
    const auto d = domains_of(doc, PropagatorConfig::make(a), &ok);
    ASSERT_TRUE(ok);
    EXPECT_EQ(d[0], (std::vector<int>{0, 1})) << to_string(a);
    EXPECT_EQ(d[1], (std::vector<int>{1, 2})) << to_string(a);
  }
}

TEST(Propagate, EmptyListIsFree) {
  const Network net = build_network(testing::ne_triangle(3));
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
  PropagationList list(net.num_vars());
  EXPECT_TRUE(s.propagator().propagate(list));
  EXPECT_EQ(s.stats().cc, 0u);
}

TEST(Propagate, AssignmentKeepingSupportsDeletesNothing) {
  // x = 0 is compatible with every value of y.
  const InstanceDoc doc = Doc().vars(2, {0, 1}).table(0, 1, true, {{0, 0}, {0, 1}, {1, 1}});
  const Network net = build_network(doc);
  for (Algorithm a : testing::all_variants()) {
    Session s(net, PropagatorConfig::make(a));
    ASSERT_TRUE(s.preprocess());
    ASSERT_EQ(s.stats().deletions, 0u);
    s.trail().push_level();
    s.domains().reduce_to(0, 0);
    const auto before = s.stats().deletions;
    EXPECT_TRUE(s.propagate_from(0));
    EXPECT_EQ(s.stats().deletions, before) << to_string(a);
  }
}

TEST(SearchPcSup, ValidLastPcCostsNothing) {
  const Network net = build_network(Doc().vars(2, range(0, 3)).ne(0, 1));
  for (Algorithm a : {Algorithm::maxrpc3, Algorithm::maxrpc3rm}) {
    Session s(net, PropagatorConfig::make(a));
    ASSERT_TRUE(s.propagator().search_pc_sup(2, 0));
    const auto cc = s.stats().cc;
    EXPECT_TRUE(s.propagator().search_pc_sup(2, 0));
    EXPECT_EQ(s.stats().cc, cc);
  }
}

TEST(SearchPcSup, NoAcSupport) {
  const Network net = build_network(Doc().var("x", {0, 1}).var("y", {1}).ne(0, 1));
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
  EXPECT_FALSE(s.propagator().search_pc_sup(1, net.find_arc(0, 1)));
  EXPECT_TRUE(s.propagator().search_pc_sup(0, net.find_arc(0, 1)));
}

TEST(SearchPcSup, IncrementalResumesAfterLastPc) {
  // x=0 is supported by y in {2, 3} only.
  const Network net = build_network(Doc().var("x", {0}).var("y", range(0, 3)).table(0, 1, true, {{0, 2}, {0, 3}}));
  const ArcId arc = net.find_arc(0, 1);
  std::uint64_t cost[2];
  int k = 0;
  for (Algorithm a : {Algorithm::maxrpc3, Algorithm::maxrpc3rm}) {
    Session s(net, PropagatorConfig::make(a));
    ASSERT_TRUE(s.propagator().search_pc_sup(0, arc));
    ASSERT_EQ(s.supports().get(SupportTable::pc, arc, 0), 2);
    s.domains().remove(1, 2);
    const auto cc = s.stats().cc;
    ASSERT_TRUE(s.propagator().search_pc_sup(0, arc));
    EXPECT_EQ(s.supports().get(SupportTable::pc, arc, 0), 3);
    cost[k++] = s.stats().cc - cc;
  }
  EXPECT_EQ(cost[0], 1u);  // only value 3
  EXPECT_EQ(cost[1], 3u);  // 0, 1, 3 from scratch
}

TEST(SearchPcWit, NoTrianglesIsFree) {
  const Network net = build_network(Doc().vars(2, range(0, 2)).ne(0, 1));
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
  EXPECT_TRUE(s.propagator().search_pc_wit(0, 1, 0, std::nullopt));
  EXPECT_EQ(s.stats().cc, 0u);
}

TEST(SearchPcWit, NeTriangleHasNoWitness) {
  const Network net = build_network(testing::ne_triangle());
  for (Algorithm a : testing::maxrpc_variants()) {
    Session s(net, PropagatorConfig::make(a));
    EXPECT_FALSE(s.propagator().search_pc_wit(0, 1, net.find_arc(0, 1), std::nullopt));
  }
}

TEST(SearchPcWit, EqTriangleResidualWritesBothResidues) {
  const Network net = build_network(testing::eq_triangle());
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3rm));
  const ArcId xy = net.find_arc(0, 1);
  ASSERT_TRUE(s.propagator().search_pc_wit(0, 0, xy, std::nullopt));
  EXPECT_EQ(s.supports().get(SupportTable::ac, net.find_arc(0, 2), 0), 0);
  EXPECT_EQ(s.supports().get(SupportTable::ac, net.find_arc(1, 2), 0), 0);
}

TEST(CheckPcWit, VacuousWithoutTriangles) {
  const Network net = build_network(Doc().vars(2, range(0, 2)).ne(0, 1));
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
  EXPECT_TRUE(s.propagator().check_pc_wit(0, 0));
  EXPECT_EQ(s.stats().cc, 0u);
}

// Scans seeded random 4-cliques for a maxRPC-closed state in which deleting
// one value of y makes check_pc_wit reject a_w although search_pc_sup
// accepts it. Every verdict is cross-checked against brute-force PC-support
// existence, and the rejected value must also be deleted by brute_maxrpc.
TEST(CheckPcWit, FourCliqueWitnessLoss) {
  int found = 0, skips = 0;
  for (std::uint64_t seed = 0; seed < 400 && (found < 3 || skips == 0); ++seed) {
    const InstanceDoc doc = gen_model_b(4, 3, 1.0, 0.35, seed);
    const Network net = build_network(doc);
    Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
    if (!s.preprocess()) continue;
    for (Var y = 0; y < 4; ++y) {
      for (ValueIndex b : s.domains().indices(y)) {
        if (s.domains().size(y) < 2) continue;
        for (Var w = 0; w < 4; ++w) {
          if (w == y) continue;
          for (ValueIndex aw : s.domains().indices(w)) {
            const int level = s.trail().level();
            s.trail().push_level();
            s.domains().remove(y, b);
            const ArcId arc = net.find_arc(w, y);
            const auto dom = s.domain_values();
            const auto skip0 = s.stats().witness_skips;
            if (s.propagator().search_pc_sup(aw, arc)) {
              const bool kept = s.propagator().check_pc_wit(aw, arc);
              bool want = true;
              for (const TriangleEntry& t : net.triangles(arc))
                want = want && has_pc_support(doc, dom, w, net.values(w)[aw], t.third);
              EXPECT_EQ(kept, want) << "seed " << seed;
              if (s.stats().witness_skips > skip0) ++skips;
              if (!kept) {
                ++found;
                const ClosureResult r = brute_maxrpc(doc, dom);
                const auto& dw = r.domains[w];
                EXPECT_TRUE(r.wipeout ||
                            !std::binary_search(dw.begin(), dw.end(), net.values(w)[aw]));
              }
            }
            s.trail().restore(level);
          }
        }
      }
    }
  }
  EXPECT_GT(found, 0);
  // the findPCsupport short-circuit was exercised along the way
  EXPECT_GT(skips, 0);
}

TEST(SeekAcSupport, Examples) {
  const Network net = build_network(Doc().vars(2, range(0, 2)).lt(0, 1));
  Session s(net, PropagatorConfig::make(Algorithm::maxrpc3));
  Propagator& p = s.propagator();
  const ArcId arc = net.find_arc(0, 1);
  EXPECT_TRUE(p.seek_ac_support(arc, 1));
  EXPECT_EQ(s.supports().get(SupportTable::ac, arc, 1), 2);
  EXPECT_FALSE(p.seek_ac_support(arc, 2));
  s.supports().set(SupportTable::ac, arc, 0, 1);
  const auto cc = s.stats().cc;
  EXPECT_TRUE(p.seek_ac_support(arc, 0));
  EXPECT_EQ(s.stats().cc, cc);
}

TEST(Ac3rm, Examples) {
  bool ok = false;
  auto d = domains_of(Doc().vars(2, {0, 1}).ne(0, 1), PropagatorConfig::make(Algorithm::ac3rm), &ok);
  ASSERT_TRUE(ok);
  EXPECT_EQ(d, (std::vector<std::vector<int>>{{0, 1}, {0, 1}}));
  d = domains_of(testing::lt_chain(), PropagatorConfig::make(Algorithm::ac3rm), &ok);
  ASSERT_TRUE(ok);
  EXPECT_EQ(d, (std::vector<std::vector<int>>{{0}, {1}, {2}}));
}

TEST(Ac3rm, ValidResidueCostsNothing) {
  const Network net = build_network(Doc().vars(2, {0, 1}).ne(0, 1));
  Session s(net, PropagatorConfig::make(Algorithm::ac3rm));
  ASSERT_TRUE(s.preprocess());
  const auto cc = s.stats().cc;
  // every residue is still valid: a second pass checks nothing
  EXPECT_TRUE(s.propagate_all());
  EXPECT_EQ(s.stats().cc, cc);
}

TEST(Config, Invariants) {
  EXPECT_EQ(PropagatorConfig::make(Algorithm::maxrpc3).support_mode(), SupportMode::incremental);
  EXPECT_EQ(PropagatorConfig::make(Algorithm::maxrpc2_emu).support_mode(), SupportMode::incremental);
  EXPECT_EQ(PropagatorConfig::make(Algorithm::maxrpc3rm).support_mode(), SupportMode::residual);
  EXPECT_EQ(PropagatorConfig::make(Algorithm::maxrpcrm_emu).support_mode(), SupportMode::residual);
  EXPECT_FALSE(PropagatorConfig::make(Algorithm::maxrpc2_emu).use_last_ac_shortcuts);
  EXPECT_FALSE(PropagatorConfig::make(Algorithm::maxrpcrm_emu).use_last_ac_shortcuts);
  PropagatorConfig bad = PropagatorConfig::make(Algorithm::maxrpcrm_emu);
  bad.use_last_ac_shortcuts = true;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  const PropagatorConfig h = PropagatorConfig::make(Algorithm::maxrpc3rm, true, true);
  EXPECT_EQ(h.queue_heuristic, HeuristicId::dom_wdeg);
  EXPECT_EQ(h.case1, HeuristicId::dom_wdeg);
}

// ---- properties on the seeded random suite --------------------------------

class RandomSuite : public ::testing::Test {
 protected:
  static const std::vector<InstanceDoc>& docs() {
    static const std::vector<InstanceDoc> d = testing::random_suite(300);
    return d;
  }
};

TEST_F(RandomSuite, FullVariantsMatchOracle) {
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    const ClosureResult o = brute_maxrpc(doc);
    for (Algorithm a : testing::maxrpc_variants()) {
      bool ok = false;
      const auto d = testing::fixpoint(net, PropagatorConfig::make(a), &ok);
      ASSERT_EQ(ok, !o.wipeout) << doc.name << " " << to_string(a);
      if (ok) EXPECT_EQ(d, o.domains) << doc.name << " " << to_string(a);
    }
    bool ok = false;
    const auto d = testing::fixpoint(net, PropagatorConfig::make(Algorithm::ac3rm), &ok);
    const ClosureResult ac = brute_ac(doc);
    ASSERT_EQ(ok, !ac.wipeout) << doc.name;
    if (ok) EXPECT_EQ(d, ac.domains) << doc.name;
  }
}

TEST_F(RandomSuite, LightBetweenMaxRpcAndAc) {
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    const ClosureResult o = brute_maxrpc(doc), ac = brute_ac(doc);
    for (Algorithm a : testing::maxrpc_variants()) {
      bool ok = false;
      const auto d = testing::fixpoint(net, PropagatorConfig::make(a, true), &ok);
      if (!ok) {
        EXPECT_TRUE(o.wipeout) << doc.name;
        continue;
      }
      EXPECT_FALSE(ac.wipeout);
      EXPECT_TRUE(testing::included(d, ac.domains)) << doc.name << " " << to_string(a);
      if (!o.wipeout) EXPECT_TRUE(testing::included(o.domains, d)) << doc.name << " " << to_string(a);
    }
  }
}

TEST_F(RandomSuite, Idempotent) {
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    for (Algorithm a : testing::all_variants())
      for (bool light : {false, true}) {
        if (a == Algorithm::ac3rm && light) continue;
        Session s(net, PropagatorConfig::make(a, light));
        if (!s.preprocess()) continue;
        const auto del = s.stats().deletions;
        ASSERT_TRUE(s.propagate_all());
        EXPECT_EQ(s.stats().deletions, del) << doc.name << " " << to_string(a);
      }
  }
}

TEST_F(RandomSuite, ShortcutsOnlyChangeChecks) {
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    for (Algorithm a : {Algorithm::maxrpc3, Algorithm::maxrpc3rm})
      for (bool light : {false, true}) {
        PropagatorConfig on = PropagatorConfig::make(a, light), off = on;
        off.use_last_ac_shortcuts = false;
        bool ok_on = false, ok_off = false;
        const auto d_on = testing::fixpoint(net, on, &ok_on);
        const auto d_off = testing::fixpoint(net, off, &ok_off);
        EXPECT_EQ(ok_on, ok_off) << doc.name;
        EXPECT_EQ(d_on, d_off) << doc.name << " " << to_string(a) << " light=" << light;
      }
  }
}

TEST_F(RandomSuite, FullVariantsAgreeAfterEveryAssignment) {
  // Same state, same call: MaxRPC3 and MaxRPC3rm delete the same values.
  int compared = 0;
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    Session a(net, PropagatorConfig::make(Algorithm::maxrpc3));
    Session b(net, PropagatorConfig::make(Algorithm::maxrpc3rm));
    if (!a.preprocess()) continue;
    ASSERT_TRUE(b.preprocess());
    for (Var x = 0; x < net.num_vars(); ++x) {
      if (a.domains().size(x) < 2) continue;
      const ValueIndex v = a.domains().first(x);
      a.trail().push_level();
      b.trail().push_level();
      a.domains().reduce_to(x, v);
      b.domains().reduce_to(x, v);
      const bool ra = a.propagate_from(x), rb = b.propagate_from(x);
      ASSERT_EQ(ra, rb) << doc.name;
      if (ra) EXPECT_EQ(a.domain_values(), b.domain_values()) << doc.name;
      a.trail().restore(0);
      b.trail().restore(0);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST_F(RandomSuite, EmulationsMatchOracle) {
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    const auto o = brute_maxrpc(doc);
    for (Algorithm a : {Algorithm::maxrpc2_emu, Algorithm::maxrpcrm_emu}) {
      bool ok = false;
      const auto d = testing::fixpoint(net, PropagatorConfig::make(a), &ok);
      ASSERT_EQ(ok, !o.wipeout);
      if (ok) EXPECT_EQ(d, o.domains);
    }
  }
}

TEST_F(RandomSuite, MaxRpc3UsesNoMoreChecksThanMaxRpc2InAggregate) {
  std::uint64_t cc3 = 0, cc2 = 0;
  for (const InstanceDoc& doc : docs()) {
    const Network net = build_network(doc);
    Session a(net, PropagatorConfig::make(Algorithm::maxrpc3));
    Session b(net, PropagatorConfig::make(Algorithm::maxrpc2_emu));
    a.preprocess();
    b.preprocess();
    cc3 += a.stats().cc;
    cc2 += b.stats().cc;
  }
  EXPECT_LE(cc3, cc2);
}

}  // namespace
}  // namespace maxrpc
