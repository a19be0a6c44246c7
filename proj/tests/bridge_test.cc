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

#include "fmc/bridge.h"

#include <gtest/gtest.h>

#include <string>
#include <utility>

#include "fmc/parser.h"

namespace fmc {
namespace {

lam::TypeRef A() { return lam::Base("A"); }
lam::TypeRef B() { return lam::Base("B"); }

std::string Image(const char* term, const char* type) {
  Signature sig = Signature::Default();
  sig.AddBase("A");
  LambdaImage img = FmcToLambda(ParseTerm(term), ParseType(type), sig);
  return lam::PrintTerm(img.term) + " : " + lam::PrintType(img.type);
}

TEST(BridgeTest, Types) {
  EXPECT_EQ(lam::PrintType(ToLambdaType(ParseType("Z Z > Z"))), "Z * Z -> Z");
  EXPECT_EQ(lam::PrintType(ToLambdaType(ParseType(">"))), "1 -> 1");
  EXPECT_EQ(PrintType(ToFmcType(lam::ParseType("A * B -> A"))), "B A > A");
  EXPECT_EQ(ToFmcVector(lam::ParseType("1")).size(), 0u);
  EXPECT_THROW(ToLambdaType(ParseType("c(Z) > Z")), BridgeError);
}

TEST(BridgeTest, LambdaToFmc) {
  EXPECT_EQ(PrintTerm(LambdaToFmc({{"x", A()}}, lam::Var("x"))), "<a1>.[a1]");
  EXPECT_EQ(PrintTerm(LambdaToFmc({}, lam::ParseTerm("\\x:A.x"))),
            "[<a1>.[a1]]");
  EXPECT_EQ(PrintTerm(LambdaToFmc({}, lam::ParseTerm("\\x:A.\\y:B.x"))),
            "[<x1>.[[x1].<a2>.<a1>.[a2]]]");
}

TEST(BridgeTest, FmcToLambda) {
  EXPECT_EQ(Image("*", "Z > Z"), "s1 : Z");
  EXPECT_EQ(Image("<x>.[x]", "Z > Z"), "s1 : Z");
  EXPECT_EQ(Image("<x>.[x].[x]", "Z > Z Z"), "(s1, s1) : Z * Z");
  EXPECT_EQ(Image("<x>.<y>.[x].[y]", "A Z > A Z"), "(s2, s1) : A * Z");
  EXPECT_EQ(Image("<f>.<x>.[x].f", "(Z > Z) Z > Z"), "s2 s1 : Z");
  EXPECT_EQ(Image("<f>.[<x>.[x].f.[x]]", "(Z > Z) > (Z > Z Z)"),
            "\\(p0:Z).(s1 p0, p0) : Z -> Z * Z");
  EXPECT_THROW(Image("[1].[2].+", "> Z"), BridgeError);
  EXPECT_THROW(Image("c<x>.[x]", "c(Z) > Z"), BridgeError);
}

TEST(BridgeTest, RoundTripGoldens) {
  for (const char* src : {"\\(x:A, y:B).x", "\\f:A -> B.\\x:A.f x",
                          "\\p:A * B.(pi2 p, pi1 p)", "(\\x:A.x)"}) {
    RoundTrip r = LambdaRoundTrip({}, lam::ParseTerm(src));
    EXPECT_TRUE(r.equal) << src << " came back as " << lam::PrintTerm(r.back);
  }
  RoundTrip open = LambdaRoundTrip({{"a", A()}, {"g", lam::ParseType("A -> A")}},
                                   lam::ParseTerm("g (g a)"));
  EXPECT_TRUE(open.equal);
}

// Property: fmc_to_lambda ∘ lambda_to_fmc is the identity up to βη.
TEST(BridgeTest, RoundTripOnGeneratedTerms) {
  std::mt19937_64 rng(3);
  lam::GenOptions opts;
  for (int i = 0; i < 500; ++i) {
    lam::Generated g = lam::RandomTerm(rng, opts);
    OrderedContext ctx(g.ctx.begin(), g.ctx.end());
    RoundTrip r = LambdaRoundTrip(ctx, g.term);
    EXPECT_TRUE(r.equal) << lam::PrintTerm(g.term) << " came back as "
                         << lam::PrintTerm(r.back);
  }
}

}  // namespace
}  // namespace fmc
