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

#include <cmath>
#include <set>

#include "fixtures.hpp"

namespace maxrpc {
namespace {

using testing::Doc;
using testing::range;

constexpr const char* kTwoVars = R"(<?xml version="1.0" encoding="UTF-8"?>
<instance>
<presentation name="pair" format="XCSP 2.1"/>
<domains nbDomains="1">
  <domain name="D0" nbValues="3">0..2</domain>
</domains>
<variables nbVariables="3">
  <variable name="V0" domain="D0"/>
  <variable name="V1" domain="D0"/>
  <variable name="V2" domain="D0"/>
</variables>
<relations nbRelations="1">
  <relation name="R0" arity="2" nbTuples="1" semantics="conflicts">0 0</relation>
</relations>
<predicates nbPredicates="1">
  <predicate name="P0">
    <parameters>int X0 int X1 int X2</parameters>
    <expression><functional>gt(abs(sub(X0,X1)),X2)</functional></expression>
  </predicate>
</predicates>
<constraints nbConstraints="2">
  <constraint name="C0" arity="2" scope="V0 V1" reference="R0"/>
  <constraint name="C1" arity="2" scope="V1 V2" reference="P0">
    <parameters>V1 V2 1</parameters>
  </constraint>
</constraints>
</instance>
)";

std::string xcsp_with(const std::string& body) {
  return R"(<instance><presentation name="x" format="XCSP 2.1"/>
<domains><domain name="D" nbValues="5">0..4</domain></domains>
<variables><variable name="A" domain="D"/><variable name="B" domain="D"/><variable name="C" domain="D"/></variables>
)" + body + "</instance>";
}

TEST(ParseXcsp, ConflictsAndPredicate) {
  const InstanceDoc doc = parse_xcsp(kTwoVars);
  EXPECT_EQ(doc.name, "pair");
  ASSERT_EQ(doc.variables.size(), 3u);
  EXPECT_EQ(doc.variables[0].values, range(0, 2));
  ASSERT_EQ(doc.constraints.size(), 2u);
  const Network net = build_network(doc);
  // conflicts {(0,0)}: only that pair is forbidden
  EXPECT_FALSE(net.allows(net.find_arc(0, 1), 0, 0));
  EXPECT_TRUE(net.allows(net.find_arc(0, 1), 1, 1));
  EXPECT_TRUE(net.allows(net.find_arc(0, 1), 0, 2));
  // |V1 - V2| > 1
  const ArcId a = net.find_arc(1, 2);
  EXPECT_TRUE(net.allows(a, 0, 2));
  EXPECT_FALSE(net.allows(a, 1, 2));
  EXPECT_EQ(doc.provenance.at("format"), "xcsp2.1");
}

TEST(ParseXcsp, RlfapStylePredicate) {
  const InstanceDoc doc = parse_xcsp(R"(<instance><presentation name="r" format="XCSP 2.1"/>
<domains><domain name="F" nbValues="10">0..9</domain></domains>
<variables><variable name="X" domain="F"/><variable name="Y" domain="F"/></variables>
<predicates><predicate name="P"><parameters>int a int b int k</parameters>
<expression><functional>gt(abs(sub(a,b)),k)</functional></expression></predicate></predicates>
<constraints><constraint name="C" arity="2" scope="X Y" reference="P"><parameters>X Y 3</parameters></constraint></constraints>
</instance>)");
  const oracle_detail::Checker ck(doc);
  EXPECT_TRUE(ck.ok(0, 0, 1, 4));
  EXPECT_FALSE(ck.ok(0, 0, 1, 3));
  const Network net = build_network(doc);
  EXPECT_TRUE(net.allows(net.find_arc(0, 1), 0, 4));
  EXPECT_FALSE(net.allows(net.find_arc(0, 1), 0, 3));
}

TEST(ParseXcsp, EquivalentPredicateForms) {
  // Each expression must agree with a direct evaluation on every pair.
  struct Case {
    const char* expr;
    bool (*eval)(int, int);
  };
  const Case cases[] = {
      {"ne(X,Y)", [](int x, int y) { return x != y; }},
      {"eq(X,add(Y,1))", [](int x, int y) { return x == y + 1; }},
      {"le(sub(X,Y),-2)", [](int x, int y) { return x - y <= -2; }},
      {"ge(abs(sub(Y,X)),2)", [](int x, int y) { return std::abs(y - x) >= 2; }},
      {"lt(X,Y)", [](int x, int y) { return x < y; }},
      {"and(ne(X,Y),ne(abs(sub(X,Y)),3))", [](int x, int y) { return x != y && std::abs(x - y) != 3; }},
      {"eq(abs(sub(X,Y)),1)", [](int x, int y) { return std::abs(x - y) == 1; }},
      {"gt(add(X,neg(Y)),0)", [](int x, int y) { return x > y; }},
  };
  for (const Case& c : cases) {
    const InstanceDoc doc = parse_xcsp(xcsp_with(
        std::string("<predicates><predicate name=\"P\"><parameters>int X int Y</parameters>"
                    "<expression><functional>") +
        c.expr +
        "</functional></expression></predicate></predicates><constraints>"
        "<constraint name=\"K\" arity=\"2\" scope=\"A B\" reference=\"P\"><parameters>A B</parameters>"
        "</constraint></constraints>"));
    const Network net = build_network(doc);
    for (int x = 0; x <= 4; ++x)
      for (int y = 0; y <= 4; ++y) EXPECT_EQ(net.allows(0, x, y), c.eval(x, y)) << c.expr;
  }
}

TEST(ParseXcsp, TernaryRejected) {
  try {
    parse_xcsp(xcsp_with(R"(<relations><relation name="R3" arity="3" nbTuples="1" semantics="supports">0 0 0</relation></relations>)"));
    FAIL();
  } catch (const UnsupportedFeature& e) {
    EXPECT_NE(std::string(e.what()).find("R3"), std::string::npos);
  }
  try {
    parse_xcsp(xcsp_with(R"(<constraints><constraint name="T" arity="3" scope="A B C" reference="R"/></constraints>)"));
    FAIL();
  } catch (const UnsupportedFeature& e) {
    EXPECT_NE(std::string(e.what()).find("'T'"), std::string::npos);
  }
}

TEST(ParseXcsp, OtherUnsupportedFeatures) {
  EXPECT_THROW(parse_xcsp(xcsp_with(R"(<constraints><constraint name="G" arity="2" scope="A B" reference="global:allDifferent"/></constraints>)")),
               UnsupportedFeature);
  EXPECT_THROW(parse_xcsp(xcsp_with(R"(<relations><relation name="S" arity="2" nbTuples="1" semantics="soft">0 0</relation></relations>)")),
               UnsupportedFeature);
  EXPECT_THROW(parse_xcsp(xcsp_with("<objective/>")), UnsupportedFeature);
  EXPECT_THROW(parse_xcsp(xcsp_with(
                   R"(<predicates><predicate name="P"><parameters>int X int Y</parameters><expression><infix>X != Y</infix></expression></predicate></predicates>
<constraints><constraint name="K" arity="2" scope="A B" reference="P"><parameters>A B</parameters></constraint></constraints>)")),
               UnsupportedFeature);
  // non-linear terms
  EXPECT_THROW(parse_xcsp(xcsp_with(
                   R"(<predicates><predicate name="P"><parameters>int X int Y</parameters><expression><functional>eq(mul(X,Y),2)</functional></expression></predicate></predicates>
<constraints><constraint name="K" arity="2" scope="A B" reference="P"><parameters>A B</parameters></constraint></constraints>)")),
               UnsupportedFeature);
}

TEST(ParseXcsp, ParseErrorsCarryLocation) {
  try {
    parse_xcsp("<instance>\n<domains>\n</instance>");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("xcsp line 3", 0), 0u) << e.what();
  }
  try {
    parse_xcsp(xcsp_with(R"(<constraints>
<constraint name="K" arity="2" scope="A Z" reference="R"/></constraints>)"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'Z'"), std::string::npos);
  }
  EXPECT_THROW(parse_xcsp(xcsp_with(R"(<constraints><constraint name="K" arity="2" scope="A B" reference="nope"/></constraints>)")),
               ParseError);
}

TEST(ParseXcsp, TuplesOutsideDomainsDropped) {
  const InstanceDoc doc = parse_xcsp(xcsp_with(
      R"(<relations><relation name="R" arity="2" nbTuples="2" semantics="supports">0 1|7 7</relation></relations>
<constraints><constraint name="K" arity="2" scope="A B" reference="R"/></constraints>)"));
  const auto& ext = std::get<ExtensionalSpec>(doc.constraints[0].relation);
  EXPECT_EQ(ext.tuples, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(Native, RoundTrip) {
  std::vector<InstanceDoc> docs{gen_queens(5), gen_model_b(8, 4, 0.5, 0.3, 3),
                                gen_geometric(10, 3, 0.5, 0.2, 1), parse_xcsp(kTwoVars),
                                Doc("odd").var("a", {-3, -1, 0, 4, 5, 6}).var("b", {2})
                                    .table(0, 1, true, {}).doc()};
  for (const InstanceDoc& doc : docs) {
    const std::string text = write_native(doc);
    EXPECT_EQ(read_native(text), doc) << text;
    EXPECT_EQ(from_json(to_json(doc)), doc);
    EXPECT_EQ(read_instance_text(text), doc);
    EXPECT_EQ(read_instance_text(to_json(doc).dump()), doc);
  }
}

TEST(Native, Grammar) {
  const InstanceDoc doc = read_native(
      "# comment\nmaxrpc-csp 1\nname t\nmeta note two words\nvar x 0..2 5\nvar y 1\n"
      "con x y pred absdiff gt 1 and diff ne -4\nend\ntrailing junk ignored\n");
  EXPECT_EQ(doc.variables[0].values, (std::vector<int>{0, 1, 2, 5}));
  EXPECT_EQ(doc.provenance.at("note"), "two words");
  const auto& atoms = std::get<IntensionalSpec>(doc.constraints[0].relation).atoms;
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms[1].k, -4);
}

TEST(Native, Errors) {
  EXPECT_THROW(read_native("var x 0\nend\n"), ParseError);
  EXPECT_THROW(read_native("maxrpc-csp 1\nvar x 0\n"), ParseError);
  EXPECT_THROW(read_native("maxrpc-csp 1\nvar x 2 1\nend\n"), ParseError);
  EXPECT_THROW(read_native("maxrpc-csp 1\nvar x 0\ncon x z pred diff ne 0\nend\n"), ParseError);
  EXPECT_THROW(read_native("maxrpc-csp 1\nvar x 0\nvar y 0\ncon x y conflicts 0-0\nend\n"), ParseError);
  try {
    read_native("maxrpc-csp 1\nvar x 0\nbogus\nend\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 3", 0), 0u);
  }
}

TEST(ModelB, ExactCounts) {
  const InstanceDoc doc = gen_model_b(10, 5, 0.5, 0.4, 1);
  EXPECT_EQ(doc.constraints.size(), 22u);  // round(0.5 * 45)
  std::set<std::pair<int, int>> pairs;
  for (const ConstraintDoc& c : doc.constraints) {
    const auto& ext = std::get<ExtensionalSpec>(c.relation);
    EXPECT_FALSE(ext.supports);
    const std::set<std::pair<int, int>> t(ext.tuples.begin(), ext.tuples.end());
    EXPECT_EQ(t.size(), 10u);  // round(0.4 * 25)
    EXPECT_EQ(ext.tuples.size(), 10u);
    EXPECT_LT(c.x, c.y);
    pairs.insert({c.x, c.y});
  }
  EXPECT_EQ(pairs.size(), 22u);
  EXPECT_NO_THROW(build_network(doc));
  EXPECT_EQ(doc.provenance.at("seed"), "1");
}

TEST(ModelB, ZeroTightnessAndDeterminism) {
  const InstanceDoc doc = gen_model_b(6, 3, 0.6, 0.0, 4);
  for (const ConstraintDoc& c : doc.constraints)
    EXPECT_TRUE(std::get<ExtensionalSpec>(c.relation).tuples.empty());
  EXPECT_EQ(gen_model_b(12, 6, 0.4, 0.3, 99), gen_model_b(12, 6, 0.4, 0.3, 99));
  EXPECT_NE(gen_model_b(12, 6, 0.4, 0.3, 99), gen_model_b(12, 6, 0.4, 0.3, 98));
  EXPECT_THROW(gen_model_b(5, 3, 0.0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(gen_model_b(5, 3, 0.5, 1.5, 1), std::invalid_argument);
}

TEST(ModelB, ForcedIsSatisfiable) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const InstanceDoc doc = gen_model_b(8, 3, 0.8, 0.9, seed, true);
    EXPECT_FALSE(enumerate_solutions(doc).empty()) << seed;
  }
}

TEST(Geometric, DistanceBounds) {
  const InstanceDoc full = gen_geometric(12, 3, 2.0, 0.2, 5);
  EXPECT_EQ(full.constraints.size(), 66u);
  EXPECT_TRUE(gen_geometric(12, 3, 1e-9, 0.2, 5).constraints.empty());
  EXPECT_EQ(gen_geometric(30, 4, 0.3, 0.2, 8), gen_geometric(30, 4, 0.3, 0.2, 8));
  EXPECT_THROW(gen_geometric(5, 3, 0.0, 0.2, 1), std::invalid_argument);
  EXPECT_NO_THROW(build_network(gen_geometric(40, 5, 0.4, 0.3, 2)));
}

TEST(Queens, Encoding) {
  EXPECT_EQ(enumerate_solutions(gen_queens(1)).size(), 1u);
  EXPECT_TRUE(enumerate_solutions(gen_queens(3)).empty());
  EXPECT_EQ(enumerate_solutions(gen_queens(5)).size(), 10u);
  EXPECT_EQ(gen_queens(6).constraints.size(), 15u);
}

TEST(Io, FileNamesUnnamedDocuments) {
  const std::string path = ::testing::TempDir() + "/pair42.csp";
  {
    std::ofstream os(path);
    os << "maxrpc-csp 1\nvar a 0 1\nvar b 0 1\ncon a b pred diff ne 0\nend\n";
  }
  const InstanceDoc doc = read_instance_file(path);
  EXPECT_EQ(doc.name, "pair42");
  EXPECT_EQ(doc.provenance.at("file"), path);
  EXPECT_THROW(read_instance_file(path + ".missing"), std::runtime_error);
}

}  // namespace
}  // namespace maxrpc
