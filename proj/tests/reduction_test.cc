// Copyright 2026 The fmc-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fmc/reduction.h"

#include <gtest/gtest.h>

#include <string>

#include "fmc/generate.h"
#include "fmc/parser.h"

namespace fmc {
namespace {

std::string NF(const std::string& src, bool eta = false,
               Strategy s = Strategy::kLeftmostOutermost) {
  NormalizeResult r = Normalize(ParseTerm(src), s, 1000, eta);
  return r.ok() ? PrintTerm(r.term) : "<fuel>";
}

TEST(ReductionTest, BetaRedexes) {
  Term t = ParseTerm("[a].<x>.[x].[b]c.<y>.y");
  auto rs = BetaRedexes(t);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].var, "x");
  EXPECT_EQ(rs[0].head_len, 0u);
  EXPECT_EQ(rs[1].var, "y");
  EXPECT_EQ(rs[1].head_len, 1u);
  EXPECT_EQ(PrintTerm(ReduceAt(t, rs[0])), "[a].[b]c.<y>.y");
}

TEST(ReductionTest, BetaAcrossHeadContext) {
  // The push on c does not block the main-location redex.
  EXPECT_EQ(NF("[a].[b]c.<x>.x"), "[b]c.a");
  // A pop on the same location does.
  EXPECT_EQ(BetaRedexes(ParseTerm("[a].[b].<x>.<y>.x")).size(), 1u);
  EXPECT_EQ(NF("[a].[b].<x>.<y>.x"), "b");
}

TEST(ReductionTest, EtaRedexes) {
  EXPECT_EQ(EtaRedexes(ParseTerm("<x>.[x]")).size(), 1u);
  EXPECT_EQ(NF("<x>.[x]", true), "*");
  EXPECT_EQ(NF("c<x>.[x]c.[1]", true), "[1]");
  // x occurs in the continuation.
  EXPECT_EQ(EtaRedexes(ParseTerm("<x>.[x].x")).size(), 0u);
}

TEST(ReductionTest, Strategies) {
  const char* t = "[<x>.[x].[x]].<f>.[[1]].f";
  EXPECT_EQ(NF(t), "[[1]].[[1]]");
  EXPECT_EQ(NF(t, false, Strategy::kRightmostInnermost), "[[1]].[[1]]");
  NormalizeResult lo = Normalize(ParseTerm(t), Strategy::kLeftmostOutermost);
  NormalizeResult ri = Normalize(ParseTerm(t), Strategy::kRightmostInnermost);
  EXPECT_EQ(lo.steps, 2u);
  EXPECT_EQ(ri.steps, 2u);
}

TEST(ReductionTest, DivergentTermExhaustsFuel) {
  NormalizeResult r = Normalize(ParseTerm("[<x>.[x].x].<x>.[x].x"),
                                Strategy::kLeftmostOutermost, 100);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.steps, 100u);
  // `x.x` runs x twice; it does not self-apply.
  EXPECT_EQ(NF("[<x>.x.x].<x>.x.x"), "<x>.x.x.<x>.x.x");
}

TEST(ReductionTest, GraphsAndDot) {
  ReductionGraph g = BuildReductionGraph(ParseTerm("[P].<x>.[x].[x]"), 100);
  EXPECT_EQ(ToDot(g),
            "digraph reductions {\n"
            "  n0 [label=\"[P].<x>.[x].[x]\"];\n"
            "  n1 [label=\"[P].[P]\"];\n"
            "  n0 -> n1 [label=\"beta\"];\n"
            "}\n");
  ReductionGraph d = BuildReductionGraph(ParseTerm("[<x>.[x].<y>.[y]].<x>.x"), 100);
  EXPECT_EQ(d.nodes.size(), 4u);
  EXPECT_EQ(d.edges.size(), 4u);
  EXPECT_EQ(d.NormalForms().size(), 1u);
  EXPECT_EQ(LongestPath(d), 2u);
  EXPECT_TRUE(ConfluentOn(d));
  // Reduces to itself: one node, a loop, no normal form.
  ReductionGraph w = BuildReductionGraph(ParseTerm("[<x>.[x].x].<x>.[x].x"), 50);
  EXPECT_EQ(w.nodes.size(), 1u);
  EXPECT_EQ(w.edges.size(), 1u);
  EXPECT_TRUE(w.NormalForms().empty());
  EXPECT_THROW(
      BuildReductionGraph(ParseTerm("[<x>.[x].x.x].<x>.[x].x.x"), 50),
      BoundExceeded);
}

TEST(ReductionTest, PermutationEquivalence) {
  EXPECT_TRUE(PermEq(ParseTerm("a<x>.b<y>"), ParseTerm("b<y>.a<x>")));
  EXPECT_TRUE(PermEq(ParseTerm("[P]a.[N]b"), ParseTerm("[N]b.[P]a")));
  EXPECT_FALSE(PermEq(ParseTerm("[y]a.b<y>"), ParseTerm("b<y>.[y]a")));
  EXPECT_FALSE(PermEq(ParseTerm("[P]a.[N]a"), ParseTerm("[N]a.[P]a")));
}

TEST(ReductionTest, StaleRedexRejected) {
  Term t = ParseTerm("[a].<x>.[x]");
  Redex r = BetaRedexes(t).at(0);
  Term reduced = ReduceAt(t, r);
  EXPECT_THROW(ReduceAt(reduced, r), StaleRedex);
}

// Property: typed graphs are finite and confluent, and every normal form
// of a typed term is reached by both strategies.
TEST(ReductionTest, TypedGraphsConfluent) {
  Rng rng(3);
  GenOptions opts;
  for (int i = 0; i < 200; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    ReductionGraph g = BuildReductionGraph(t.term, 10000);
    ASSERT_TRUE(ConfluentOn(g)) << PrintTerm(t.term);
    ASSERT_TRUE(LongestPath(g).has_value());
    NormalizeResult lo = Normalize(t.term, Strategy::kLeftmostOutermost);
    NormalizeResult ri = Normalize(t.term, Strategy::kRightmostInnermost);
    ASSERT_TRUE(lo.ok() && ri.ok());
    EXPECT_TRUE(AlphaEq(lo.term, ri.term)) << PrintTerm(t.term);
    EXPECT_TRUE(AlphaEq(lo.term, g.nodes[g.NormalForms().at(0)]));
  }
}

}  // namespace
}  // namespace fmc
