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

#include "fmc/types.h"

#include <gtest/gtest.h>

#include <string>

#include "fmc/generate.h"
#include "fmc/parser.h"

namespace fmc {
namespace {

const char kEx2[] = "rnd<x>.[x].c<y>.[y].+.<z>.[z]c";
const char kCounter[] = "[<x>.[x]out.[x].[1].+].<f>.[0].f.f.f";

std::string InferStr(const std::string& src) {
  return PrintType(Infer({}, ParseTerm(src)).type);
}

TEST(TypesTest, PrincipalTypes) {
  EXPECT_EQ(InferStr("*"), ">");
  EXPECT_EQ(InferStr("<x:Z>.[x].[x]"), "Z ..r1 > ..r1 Z Z");
  EXPECT_EQ(InferStr("+"), "Z Z ..r2 > ..r2 Z");
  EXPECT_EQ(InferStr(kEx2), "c(Z ..r4) rnd(Z ..r1) > c(..r4 Z) rnd(..r1)");
  EXPECT_EQ(PrintType(GroundScheme(Infer({}, ParseTerm(kEx2)))),
            "c(Z) rnd(Z) > c(Z)");
}

TEST(TypesTest, GoldenTypingsAccepted) {
  EXPECT_TRUE(Typechecks({}, ParseTerm(kEx2), ParseType("rnd(Z) c(Z) > c(Z)")));
  EXPECT_TRUE(Typechecks({}, ParseTerm(kCounter), ParseType("> out(Z Z Z) Z")));
}

struct Mutation {
  const char* term;
  const char* type;
  int column;
  const char* message;
};

// Each mutant of the golden typing is rejected at a known segment.
TEST(TypesTest, MutantsRejectedWithPositions) {
  const Mutation cases[] = {
      // Locations swapped on the first pop.
      {"c<x>.[x].c<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)", 10,
       "at `c<y>`: pop on empty stack at location c"},
      // Write-back to the wrong location.
      {"rnd<x>.[x].c<y>.[y].+.<z>.[z]rnd", "rnd(Z) c(Z) > c(Z)", 27,
       "final stack at location c is [], expected [Z]"},
      // Final pop dropped.
      {"rnd<x>.[x].c<y>.[y].+.[z]c", "rnd(Z) c(Z) > c(Z)", 24,
       "unbound variable z"},
      // Read dropped.
      {"[x].c<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)", 2,
       "unbound variable x"},
      // Result type changed.
      {kEx2, "rnd(Z) c(Z) > c(B)", 27, ""},
  };
  for (const auto& c : cases) {
    ParsedTerm p = ParseTermWithSpans(c.term);
    try {
      Check({}, p.term, ParseType(c.type));
      ADD_FAILURE() << c.term << " accepted";
    } catch (const TypeError& e) {
      ASSERT_NE(e.node(), nullptr) << c.term;
      auto it = p.spans.find(e.node());
      ASSERT_NE(it, p.spans.end()) << c.term;
      EXPECT_EQ(it->second.column, c.column) << c.term << ": " << e.what();
      if (*c.message) {
        EXPECT_NE(std::string(e.what()).find(c.message), std::string::npos)
            << e.what();
      }
    }
  }
}

TEST(TypesTest, ErrorKinds) {
  auto kind = [](const std::string& src, const std::string& ty) {
    try {
      if (ty.empty()) {
        Infer({}, ParseTerm(src));
      } else {
        Check({}, ParseTerm(src), ParseType(ty));
      }
    } catch (const TypeError& e) {
      return e.kind();
    }
    return TypeError::Kind::kMismatch;
  };
  EXPECT_EQ(kind("[1].x", ""), TypeError::Kind::kUnboundVariable);
  EXPECT_EQ(kind("[1].<x>.x", ""), TypeError::Kind::kNotCallable);
  EXPECT_EQ(kind("[<y>].<x>.[x].x", ""), TypeError::Kind::kOccursCheck);
  EXPECT_EQ(kind("<x>", ">"), TypeError::Kind::kPopOnEmpty);
  EXPECT_EQ(kind("[true].[1].+", ""), TypeError::Kind::kMismatch);
}

// Written types are exact: a location they leave out holds nothing.
TEST(TypesTest, WrittenTypesAreExact) {
  EXPECT_FALSE(Typechecks({}, ParseTerm("<x>.[*]"), ParseType(">")));
  EXPECT_FALSE(Typechecks({}, ParseTerm("c<x>.[x]c"), ParseType(">")));
  EXPECT_TRUE(Typechecks({}, ParseTerm("c<x>.[x]c"), ParseType("c(Z) > c(Z)")));
  EXPECT_FALSE(Typechecks({}, ParseTerm("[<x>.[*]]"), ParseType("> (>)")));
}

// Inferred implications pass unmentioned stacks through, so `*` may be
// pushed where any endomorphic shape is expected.
TEST(TypesTest, InferredTypesAreFrames) {
  EXPECT_TRUE(Typechecks({}, ParseTerm("[*]"), ParseType("> (Z > Z)")));
  EXPECT_TRUE(Typechecks({}, ParseTerm("[*]"), ParseType("> (c(Z) > c(Z))")));
  EXPECT_FALSE(Typechecks({}, ParseTerm("[*]"), ParseType("> (Z > )")));
  EXPECT_TRUE(Typechecks({}, ParseTerm("*"), ParseType("Z c(B) > Z c(B)")));
}

TEST(TypesTest, ContextsAndAnnotations) {
  Context ctx{{"f", ParseType("Z > Z Z")}};
  EXPECT_TRUE(Typechecks(ctx, ParseTerm("[1].f.+"), ParseType("> Z")));
  EXPECT_FALSE(Typechecks(ctx, ParseTerm("[true].f"), ParseType("> B B")));
  EXPECT_EQ(InferStr("<x:(Z > Z)>.[2].x"), "(Z > Z) ..r1 > ..r1 Z");
  EXPECT_FALSE(Typechecks({}, ParseTerm("[1].<x:B>.[x]"), ParseType("> B")));
}

TEST(TypesTest, CheckGroundsDerivations) {
  DerivRef d = Check({}, ParseTerm("[<x>.[x]].<f>.[3].f"), ParseType("> Z"));
  ASSERT_EQ(d->steps.size(), 4u);
  EXPECT_EQ(PrintType(d->steps[0].type), "Z > Z");
  ASSERT_NE(d->steps[0].arg, nullptr);
  EXPECT_EQ(PrintType(d->steps[1].type), "Z > Z");
  EXPECT_EQ(PrintType(d->steps[3].type), "Z > Z");
}

TEST(TypesTest, SignatureParsing) {
  Signature s = Signature::Parse(
      "# extra\nbase Str\nconst len : Str > Z\n");
  EXPECT_TRUE(s.HasBase("Str"));
  ASSERT_NE(s.ConstType("len"), nullptr);
  EXPECT_EQ(PrintType(*s.ConstType("len")), "Str > Z");
  EXPECT_THROW(s.Validate(ParseType("Q > Z")), TypeError);
}

TEST(UnifyTest, RowsAndClashes) {
  Substitution s = Unify(ParseType("'a ..r > ..r 'a"), ParseType("Z > Z"));
  EXPECT_EQ(s.vars.size(), 1u);
  EXPECT_EQ(PrintType(s.vars.at(0)), "Z");
  EXPECT_THROW(Unify(ParseType("Z > Z"), ParseType("B > B")), UnifyError);
  EXPECT_THROW(Unify(ParseType("'a >"), ParseType("('a >) >")), UnifyError);
}

// Property: every generated term checks at the type its generator claims.
TEST(TypesTest, GeneratedTermsCheck) {
  Rng rng(1);
  GenOptions opts;
  opts.locations = {Location::Main(), Location("c")};
  for (int i = 0; i < 1000; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    EXPECT_TRUE(Typechecks({}, t.term, t.type))
        << PrintTerm(t.term) << " : " << PrintType(t.type);
  }
  opts.constants = true;
  for (int i = 0; i < 1000; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    EXPECT_TRUE(Typechecks({}, t.term, t.type))
        << PrintTerm(t.term) << " : " << PrintType(t.type);
  }
}

// Property: the grounded principal type checks.
TEST(TypesTest, PrincipalTypesCheck) {
  std::size_t typed = 0;
  EnumerateClosedTerms(8, {}, [&](const Term& t) {
    InferResult r;
    try {
      r = Infer({}, t);
    } catch (const TypeError&) {
      return;
    }
    ++typed;
    EXPECT_TRUE(Typechecks({}, t, GroundScheme(r))) << PrintTerm(t);
  });
  EXPECT_EQ(typed, 2606u);
}

}  // namespace
}  // namespace fmc
