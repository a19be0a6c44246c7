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

#include "fmc/measure.h"

#include <gtest/gtest.h>

#include "fmc/machine.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"

namespace fmc {
namespace {

DerivRef D(const char* term, const char* type) {
  return Check({}, ParseTerm(term), ParseType(type));
}

TEST(MeasureTest, Goldens) {
  EXPECT_EQ(Measure(D("*", ">")), 0u);
  EXPECT_EQ(Measure(D("[*].<x>.*", ">")), 2u);
  EXPECT_EQ(MeasureVariant(D("[*].<x>.*", ">")), 2u);
  EXPECT_EQ(Measure(D("<x>.[x]", "(>) > (>)")), 2u);
  EXPECT_EQ(Collapse(Interpret(D("*", ">"), {})), 0u);
}

TEST(MeasureTest, LeastElements) {
  SemMemory empty;
  Applied a = Apply(Least(ParseType(">")), empty);
  EXPECT_EQ(a.count, 0u);
  EXPECT_TRUE(a.out.empty() || a.out.begin()->second.empty());
  EXPECT_EQ(Collapse(Least(ParseType("(>) >"))), 0u);
  SemMemory in = LeastInputs(ParseType("c((>)) (>) (>) > "));
  EXPECT_EQ(in.at(Location::Main()).size(), 2u);
  EXPECT_EQ(in.at(Location("c")).size(), 1u);
}

TEST(MeasureTest, SkipIsIdentity) {
  SnValue skip = Interpret(D("*", "(>) > (>)"), {});
  SemMemory in = LeastInputs(ParseType("(>) >"));
  Applied r = Apply(skip, in);
  EXPECT_EQ(r.count, 0u);
  EXPECT_EQ(r.out.at(Location::Main()).size(), 1u);
}

TEST(MeasureTest, PushAddsCollapseOfArgument) {
  // [N] with ⌊N⌋ = 2: 1 + 2 under the standard clause, 1 under the variant.
  DerivRef d = D("[[*].<x>.*]", "> (>)");
  EXPECT_EQ(Measure(d), 3u);
  EXPECT_EQ(MeasureVariant(d), 1u);
}

TEST(MeasureTest, GoldenRunLength) {
  DerivRef d = D("rnd<x>.[x].c<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)");
  EXPECT_EQ(MeasureVariant(d), 7u);
}

// Property: the measure strictly drops along every beta step and bounds the
// longest reduction path.
TEST(MeasureTest, StrictDecreaseAndBound) {
  Rng rng(7);
  GenOptions opts;
  for (int i = 0; i < 200; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    ReductionGraph g = BuildReductionGraph(t.term, 10000);
    std::vector<Count> m;
    for (const auto& n : g.nodes) m.push_back(Measure(Check({}, n, t.type)));
    for (const auto& e : g.edges) {
      ASSERT_GT(m[e.from], m[e.to]) << PrintTerm(g.nodes[e.from]) << " -> "
                                    << PrintTerm(g.nodes[e.to]);
    }
    auto depth = LongestPath(g);
    ASSERT_TRUE(depth.has_value());
    EXPECT_LE(*depth, m[0]);
  }
}

// Property: the run-length variant equals the machine's step count from
// least inputs.
TEST(MeasureTest, RunLengthOnSmallTerms) {
  std::size_t typed = 0;
  EnumerateClosedTerms(7, {}, [&](const Term& t) {
    InferResult r;
    try {
      r = Infer({}, t);
    } catch (const TypeError&) {
      return;
    }
    ++typed;
    TypeRef ty = GroundScheme(r);
    RunResult run = fmc::Run(LeastMemory(ty), t);
    ASSERT_TRUE(run.ok()) << PrintTerm(t);
    EXPECT_EQ(run.steps, MeasureVariant(Check({}, t, ty))) << PrintTerm(t);
  });
  EXPECT_GT(typed, 0u);
}

// Property: reduction never increases the interpretation pointwise.
TEST(MeasureTest, PointwiseMonotoneUnderReduction) {
  Rng rng(9);
  GenOptions opts;
  for (int i = 0; i < 100; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    auto rs = BetaRedexes(t.term);
    if (rs.empty()) continue;
    Term n = ReduceAt(t.term, rs.front());
    SnValue a = Interpret(Check({}, t.term, t.type), {});
    SnValue b = Interpret(Check({}, n, t.type), {});
    EXPECT_TRUE(SampledLeq(b, a, rng, 20, 1)) << PrintTerm(t.term);
  }
}

TEST(MeasureTest, Lemmas) {
  Rng rng(42);
  GenOptions opts;
  for (int i = 0; i < 50; ++i) {
    LemmaOutcome s = CheckSequencing(rng, opts, 20);
    EXPECT_TRUE(s.ok) << s.instance;
    LemmaOutcome u = CheckSubstitution(rng, opts, 20);
    EXPECT_TRUE(u.ok) << u.instance;
    LemmaOutcome p = CheckPermutation(rng, opts, 20);
    EXPECT_TRUE(p.ok) << p.instance;
    EXPECT_EQ(s.points + u.points + p.points, 60);
  }
}

}  // namespace
}  // namespace fmc
