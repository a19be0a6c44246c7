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

#include "fmc/lambda.h"

#include <gtest/gtest.h>

#include <string>

namespace fmc::lam {
namespace {

class LambdaTest : public ::testing::Test {
 protected:
  Context ctx_{{"y", Base("A")},
               {"m", Product({Base("A"), Base("B")})},
               {"f", ParseType("A * B -> A")}};

  std::string Nf(const char* s) { return PrintTerm(Normalize(ParseTerm(s)).term); }
  std::string Lnf(const char* s, const char* ty) {
    return PrintTerm(LongNormalForm(ctx_, ParseTerm(s), ParseType(ty)),
                     PrintOptions{false});
  }
};

TEST_F(LambdaTest, ParsePrint) {
  EXPECT_EQ(PrintTerm(ParseTerm("λx:A.x")), "\\(x:A).x");
  EXPECT_EQ(PrintTerm(ParseTerm("\\(x:A, y:B).(y, x)")), "\\(x:A, y:B).(y, x)");
  EXPECT_EQ(PrintTerm(ParseTerm("f a b")), "f a b");
  EXPECT_EQ(PrintTerm(ParseTerm("f (a b)")), "f (a b)");
  EXPECT_EQ(PrintTerm(ParseTerm("pi1 m")), "pi1 m");
  EXPECT_EQ(PrintType(ParseType("A -> B -> A * B")), "A -> B -> A * B");
  EXPECT_EQ(PrintType(ParseType("(A -> B) -> 1")), "(A -> B) -> 1");
  EXPECT_THROW(ParseTerm("\\x:A."), Error);
}

TEST_F(LambdaTest, Typing) {
  EXPECT_EQ(PrintType(TypeOf(ctx_, ParseTerm("(\\x:A.x) y"))), "A");
  EXPECT_EQ(PrintType(TypeOf(ctx_, ParseTerm("\\(a:A, b:B).(b, a)"))),
            "A * B -> B * A");
  EXPECT_EQ(PrintType(TypeOf({}, ParseTerm("()"))), "1");
  EXPECT_EQ(PrintType(TypeOf({}, ParseTerm("3"))), "Z");
  EXPECT_THROW(TypeOf(ctx_, ParseTerm("y y")), Error);
  EXPECT_THROW(TypeOf(ctx_, ParseTerm("q")), Error);
}

TEST_F(LambdaTest, Normalization) {
  EXPECT_EQ(Nf("(\\x:A.x) y"), "y");
  EXPECT_EQ(Nf("(\\(a:A, b:B).a) m"), "pi1 m");
  EXPECT_EQ(Nf("(\\(a:A, b:B).a) (y, pi2 m)"), "y");
  EXPECT_EQ(Nf("pi2 (y, m)"), "m");
  EXPECT_TRUE(Normalize(ParseTerm("(\\x:A.x) y"), 0).fuel_exhausted);
}

TEST_F(LambdaTest, SubstitutionAvoidsCapture) {
  TermRef t = Substitute(ParseTerm("\\z:A.x"), {{"x", ParseTerm("z")}});
  EXPECT_EQ(PrintTerm(t, PrintOptions{false}), "\\z1.z");
}

TEST_F(LambdaTest, LongNormalForms) {
  EXPECT_EQ(Lnf("(pi1 m, pi2 m)", "A * B"), "(pi1 m, pi2 m)");
  EXPECT_EQ(Lnf("m", "A * B"), "(pi1 m, pi2 m)");
  EXPECT_EQ(Lnf("f", "A * B -> A"), "\\(%0, %1).f (%0, %1)");
  EXPECT_EQ(Lnf("\\p:A * B. f p", "A * B -> A"), "\\(%0, %1).f (%0, %1)");
}

TEST_F(LambdaTest, BetaEtaEquality) {
  EXPECT_TRUE(BetaEtaEq(ctx_, ParseTerm("(pi1 m, pi2 m)"), ParseTerm("m"),
                        ParseType("A * B")));
  EXPECT_TRUE(BetaEtaEq(ctx_, ParseTerm("\\x:A.y"), ParseTerm("\\z:A.y"),
                        ParseType("A -> A")));
  EXPECT_FALSE(BetaEtaEq(ctx_, ParseTerm("\\x:A.x"), ParseTerm("\\z:A.y"),
                         ParseType("A -> A")));
  // Nested and flat products agree.
  EXPECT_TRUE(BetaEtaEq(ctx_, ParseTerm("\\(a:A, b:B).a"),
                        ParseTerm("\\p:A * B.pi1 p"), ParseType("A * B -> A")));
}

TEST_F(LambdaTest, FlatComponents) {
  auto parts = FlatComponents(ParseTerm("m"), ParseType("A * B"));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(PrintTerm(parts[0]), "pi1 m");
  EXPECT_EQ(Flatten(ParseType("(A * B) * 1 * A")).size(), 3u);
}

// Property: generated terms have their claimed type and equal their normal
// forms.
TEST_F(LambdaTest, GeneratedTermsAreTypedAndNormalize) {
  std::mt19937_64 rng(1);
  GenOptions opts;
  for (int i = 0; i < 1000; ++i) {
    Generated g = RandomTerm(rng, opts);
    ASSERT_TRUE(TypeEq(TypeOf(g.ctx, g.term), g.type)) << PrintTerm(g.term);
    EXPECT_LE(Size(g.term), 15u);
    NormalizeResult n = Normalize(g.term);
    ASSERT_FALSE(n.fuel_exhausted);
    EXPECT_TRUE(BetaEtaEq(g.ctx, g.term, n.term, g.type)) << PrintTerm(g.term);
  }
}

}  // namespace
}  // namespace fmc::lam
