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

#include "fmc/cbv.h"

#include <gtest/gtest.h>

#include <string>

#include "fmc/machine.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"

namespace fmc::cbv {
namespace {

const char kGolden[] = "(\\f. f (f 0)) (\\x. write x; !c)";

std::string Enc(const std::string& src) { return PrintTerm(Encode(Parse(src))); }

TEST(CbvTest, ParsePrint) {
  EXPECT_EQ(Print(Parse(kGolden)), "(\\f.f (f 0)) (\\x.write x; !c)");
  EXPECT_EQ(Print(Parse("c := 1; d := !c; read")), "c := 1; d := !c; read");
  EXPECT_EQ(Print(Parse("read (+) 3 + !c")), "read (+) 3 + !c");
  EXPECT_THROW(Parse("\\x."), Error);
  EXPECT_THROW(Parse("write 1"), Error);
}

TEST(CbvTest, EncodingTable) {
  EXPECT_EQ(Enc("x"), "[x]");
  EXPECT_EQ(Enc("7"), "[7]");
  EXPECT_EQ(Enc("\\x.x"), "[<x>.[x]]");
  EXPECT_EQ(Enc("read"), "in<x>.[x]");
  EXPECT_EQ(Enc("!c"), "c<x>.[x]c.[x]");
  EXPECT_EQ(Enc("write 1; 2"), "[1].<x>.[x]out.[2]");
  EXPECT_EQ(Enc("c := 4; 2"), "[4].<x>.c<_>.[x]c.[2]");
  EXPECT_EQ(Enc("(\\x.x) 1"), "[1].[<x>.[x]].<x>.x");
  EXPECT_EQ(Enc("1 (+) 2"), "rnd<x>.[[1]].[[2]].[x].if.<k>.k");
  EXPECT_EQ(Enc("1 + 2"), "nd<x>.[[1]].[[2]].[x].if.<k>.k");
  EXPECT_EQ(Enc(kGolden),
            "[<x>.[x].<x>.[x]out.c<x>.[x]c.[x]].[<f>.[0].[f].<x>.x.[f]."
            "<x>.x].<x>.x");
}

TEST(CbvTest, GoldenNormalForm) {
  NormalizeResult r = Normalize(Encode(Parse(kGolden)),
                                Strategy::kLeftmostOutermost, 1000);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.steps, 8u);
  EXPECT_TRUE(AlphaEq(r.term, ParseTerm("[0]out.c<y>.[y]out.[y]c.[y]")));
}

TEST(CbvTest, GoldenRuns) {
  Term enc = Encode(Parse(kGolden));
  // From empty memory the normal form reads c before anything writes it.
  RunResult empty = fmc::Run(Memory{}, enc);
  ASSERT_EQ(empty.status, RunResult::Status::kStuck);
  EXPECT_EQ(empty.reason->Describe(), "pop on empty stack at location c");
  EXPECT_EQ(PrintMemory(empty.final()), "out = 0");
  RunResult seeded = fmc::Run(ParseMemory("c = 0"), enc);
  ASSERT_TRUE(seeded.ok());
  EXPECT_EQ(PrintMemory(seeded.final()), "c = 0 ; out = 0 0 ; λ = 0");
}

TEST(CbvTest, ReferenceInterpreter) {
  Config cfg;
  cfg.input = {Parse("5"), Parse("6")};
  cfg.store["c"] = Parse("1");
  Outcome o = Evaluate(Parse("write read; c := read; !c"), cfg);
  ASSERT_EQ(o.status, Outcome::Status::kValue);
  EXPECT_EQ(Print(o.value), "6");
  ASSERT_EQ(o.output.size(), 1u);
  EXPECT_EQ(Print(o.output[0]), "5");
  EXPECT_EQ(o.remaining_input, 0u);

  Config coin;
  coin.rnd = {true};
  EXPECT_EQ(Print(Evaluate(Parse("1 (+) 2"), coin).value), "1");
  coin.rnd = {false};
  EXPECT_EQ(Print(Evaluate(Parse("1 (+) 2"), coin).value), "2");
  EXPECT_EQ(Evaluate(Parse("read"), Config{}).status, Outcome::Status::kStuck);
}

TEST(CbvTest, MachineAgreesOnExamples) {
  Config cfg;
  cfg.input = {Parse("4")};
  cfg.nd = {false};
  cfg.store["c"] = Parse("2");
  for (const char* src : {"read", "c := read; !c", "write !c; 0",
                          "read + !c", "(\\x.\\y.x) read !c"}) {
    auto diff = CompareWithMachine(Parse(src), cfg);
    EXPECT_FALSE(diff.has_value()) << src << ": " << *diff;
  }
}

// Property: the encoding's machine run matches the reference interpreter.
TEST(CbvTest, MachineAgreesOnGeneratedPrograms) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Program p = RandomProgram(rng, {});
    EXPECT_EQ(Print(Parse(Print(p.term))), Print(p.term));
    auto diff = CompareWithMachine(p.term, p.config);
    EXPECT_FALSE(diff.has_value()) << Print(p.term) << ": " << *diff;
  }
}

}  // namespace
}  // namespace fmc::cbv
