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

#include "fmc/equivalence.h"

#include <gtest/gtest.h>

#include "fmc/parser.h"

namespace fmc {
namespace {

TypeRef T(const char* s) { return ParseType(s); }
Term M(const char* s) { return ParseTerm(s); }

TEST(CombinatorTest, Shapes) {
  TypeRef z = BaseType("Z");
  EXPECT_EQ(PrintTerm(ccc::Delta({z})), "<x1>.[x1].[x1]");
  EXPECT_EQ(PrintTerm(ccc::Eps({}, {})), "<z>.z");
  EXPECT_EQ(PrintTerm(ccc::Pi1({z}, {z})), "<x1>.<y1>.[x1]");
  EXPECT_EQ(PrintTerm(ccc::Pi2({z}, {z})), "<x1>.<y1>.[y1]");
  EXPECT_EQ(PrintTerm(ccc::Bang({z, z})), "<x2>.<x1>");
  EXPECT_TRUE(Typechecks({}, ccc::Delta({z}), T("Z > Z Z")));
  EXPECT_TRUE(Typechecks({}, ccc::Eps({z}, {z}), T("(Z > Z) Z > Z")));
  EXPECT_TRUE(Typechecks({}, ccc::Pi1({z}, {BaseType("B")}), T("B Z > B")));
}

TEST(MachineEquivTest, Verdicts) {
  EquivResult same = MachineEquiv(M("<x>.[x].[x]"), M("<y>.[y].[y]"),
                                  T("Z > Z Z"));
  EXPECT_EQ(same.verdict, EquivResult::Verdict::kNotDistinguished);
  EXPECT_GT(same.tests, 0u);

  EquivResult diff = MachineEquiv(M("[1]"), M("[2]"), T("> Z"));
  ASSERT_EQ(diff.verdict, EquivResult::Verdict::kDistinguished);
  EXPECT_EQ(diff.left, "λ = 1");
  EXPECT_EQ(diff.right, "λ = 2");

  EXPECT_EQ(MachineEquiv(M("<x>"), M("*"), T("> Z")).verdict,
            EquivResult::Verdict::kIllTyped);
}

TEST(MachineEquivTest, HigherOrderOutputsCompared) {
  // Both push a thunk; the thunks differ once run.
  EquivResult r = MachineEquiv(M("[[1]]"), M("[[2]]"), T("> (> Z)"));
  EXPECT_EQ(r.verdict, EquivResult::Verdict::kDistinguished);
  EquivResult s = MachineEquiv(M("[[1].[2].+]"), M("[[3]]"), T("> (> Z)"));
  EXPECT_EQ(s.verdict, EquivResult::Verdict::kNotDistinguished);
}

TEST(MachineEquivTest, EffectsObserved) {
  EquivResult r = MachineEquiv(M("c<x>.[x]c.[x]"), M("c<x>.[1]c.[x]"),
                               T("c(Z) > c(Z) Z"));
  EXPECT_EQ(r.verdict, EquivResult::Verdict::kDistinguished);
  // Interchange of effects on distinct locations.
  EquivResult s = MachineEquiv(M("c<x>.d<y>.[y]d.[x]c"), M("d<y>.c<x>.[x]c.[y]d"),
                               T("c(Z) d(Z) > c(Z) d(Z)"));
  EXPECT_EQ(s.verdict, EquivResult::Verdict::kNotDistinguished);
}

TEST(EqnCheckTest, Verdicts) {
  EqnResult beta = EqnCheck(M("[<x>.[x]].<f>.f"), M("*"), T("Z > Z"));
  EXPECT_EQ(beta.verdict, EqnResult::Verdict::kProved);
  EqnResult no = EqnCheck(M("[1]"), M("[2]"), T("> Z"));
  EXPECT_EQ(no.verdict, EqnResult::Verdict::kRefuted);
  EqnResult perm = EqnCheck(M("<x>.<y>.[y].[x].<a>.<b>.[b].[a]"), M("*"),
                            T("Z Z > Z Z"));
  EXPECT_EQ(perm.verdict, EqnResult::Verdict::kProved);
  EXPECT_STREQ(EqnVerdictName(EqnResult::Verdict::kUnknown), "Unknown");
}

TEST(LawTest, LawNames) {
  EXPECT_EQ(AllLaws().size(), 6u);
  EXPECT_EQ(AllDerivedLaws().size(), 5u);
  EXPECT_STREQ(LawName(Law::kEtaHigherOrder), "eta-higher-order");
  EXPECT_STREQ(DerivedLawName(DerivedLaw::kExponentUniqueness),
               "exponent-uniqueness");
}

// Property: every law instance is well typed on both sides and is not
// distinguished by the machine.
TEST(LawTest, LawInstancesHold) {
  Rng rng(11);
  GenOptions opts;
  opts.constants = true;
  for (Law law : AllLaws()) {
    for (int i = 0; i < 40; ++i) {
      LawInstance li = RandomLawInstance(law, rng, opts);
      EXPECT_TRUE(Typechecks({}, li.lhs, li.type)) << PrintTerm(li.lhs);
      EXPECT_TRUE(Typechecks({}, li.rhs, li.type)) << PrintTerm(li.rhs);
      EquivResult r = MachineEquiv(li.lhs, li.rhs, li.type);
      EXPECT_EQ(r.verdict, EquivResult::Verdict::kNotDistinguished)
          << li.name << ": " << PrintTerm(li.lhs) << " ~ " << PrintTerm(li.rhs)
          << " : " << PrintType(li.type) << " on " << r.witness;
    }
  }
}

TEST(LawTest, DerivedLawsProved) {
  Rng rng(12);
  GenOptions opts;
  for (DerivedLaw law : AllDerivedLaws()) {
    for (int i = 0; i < 20; ++i) {
      LawInstance li = RandomDerivedInstance(law, rng, opts);
      EqnResult r = EqnCheck(li.lhs, li.rhs, li.type);
      EXPECT_EQ(r.verdict, EqnResult::Verdict::kProved)
          << li.name << ": " << PrintTerm(li.lhs) << " ~ " << PrintTerm(li.rhs)
          << "\n" << r.trace;
    }
  }
}

}  // namespace
}  // namespace fmc
