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

#include "fmc/machine.h"

#include <gtest/gtest.h>

#include <chrono>
#include <string>
#include <variant>

#include "fmc/parser.h"

namespace fmc {
namespace {

const char kEx2[] = "rnd<x>.[x].c<y>.[y].+.<z>.[z]c";

TEST(MachineTest, GoldenRun) {
  Memory m = ParseMemory("rnd = 9 7 3 ; c = 5");
  auto start = std::chrono::steady_clock::now();
  RunResult r = fmc::Run(m, ParseTerm(kEx2));
  auto elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.steps, 7u);
  EXPECT_EQ(PrintMemory(r.final()), "c = 8 ; rnd = 9 7");
  EXPECT_TRUE(r.final().at(Location::Main()).empty());
  EXPECT_LT(elapsed, std::chrono::milliseconds(10));
}

TEST(MachineTest, GoldenTrace) {
  Trace tr = TraceRun(ParseMemory("rnd = 9 7 3 ; c = 5"), ParseTerm(kEx2));
  EXPECT_EQ(tr.states.size(), 8u);
  EXPECT_EQ(FormatTrace(tr),
            "c = 5 | rnd = 9 7 3 | λ = ε || rnd<x>.[x].c<y>.[y].+.<z>.[z]c\n"
            "c = 5 | rnd = 9 7 | λ = ε || [3].c<y>.[y].+.<z>.[z]c\n"
            "c = 5 | rnd = 9 7 | λ = 3 || c<y>.[y].+.<z>.[z]c\n"
            "c = ε | rnd = 9 7 | λ = 3 || [5].+.<z>.[z]c\n"
            "c = ε | rnd = 9 7 | λ = 3 5 || +.<z>.[z]c\n"
            "c = ε | rnd = 9 7 | λ = 8 || <z>.[z]c\n"
            "c = ε | rnd = 9 7 | λ = ε || [8]c\n"
            "c = 8 | rnd = 9 7 | λ = ε || *\n");
}

TEST(MachineTest, Arithmetic) {
  RunResult r = fmc::Run(Memory{}, ParseTerm("[4].[3].[2].+.mul.[1].+"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(PrintMemory(r.final()), "λ = 21");
}

TEST(MachineTest, Conditional) {
  auto top = [](const std::string& src) {
    RunResult r = fmc::Run(Memory{}, ParseTerm(src));
    return PrintMemory(r.final());
  };
  EXPECT_EQ(top("[1].[2].[true].if"), "λ = 1");
  EXPECT_EQ(top("[1].[2].[false].if"), "λ = 2");
}

TEST(MachineTest, HigherOrderCall) {
  RunResult r = fmc::Run(Memory{}, ParseTerm("[<x>.[x].[x]].<f>.[3].f.+"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(PrintMemory(r.final()), "λ = 6");
}

TEST(MachineTest, StuckReasons) {
  RunResult a = fmc::Run(Memory{}, ParseTerm("c<x>.[x]"));
  ASSERT_EQ(a.status, RunResult::Status::kStuck);
  EXPECT_EQ(a.reason->Describe(), "pop on empty stack at location c");

  RunResult b = fmc::Run(Memory{}, ParseTerm("[1].[true].+"));
  ASSERT_EQ(b.status, RunResult::Status::kStuck);
  EXPECT_EQ(b.reason->Describe(), "operator + undefined on inputs (true, 1)");

  RunResult c = fmc::Run(Memory{}, ParseTerm("[1].+"));
  EXPECT_EQ(c.reason->kind, StuckReason::Kind::kDeltaUnderflow);

  RunResult d = fmc::Run(Memory{}, ParseTerm("y"));
  EXPECT_EQ(d.reason->Describe(), "free variable y in head position");
}

TEST(MachineTest, FuelBound) {
  RunResult r = fmc::Run(Memory{}, ParseTerm("[<x>.[x].x].<x>.[x].x"),
                         DeltaRegistry::Default(), 1000);
  EXPECT_EQ(r.status, RunResult::Status::kFuelExhausted);
  EXPECT_EQ(r.steps, 1000u);
}

TEST(MachineTest, SingleStep) {
  MachineState s{ParseMemory("c = 5"), ParseTerm("c<x>.[x]")};
  StepResult r = Step(s);
  ASSERT_TRUE(std::holds_alternative<Stepped>(r));
  const MachineState& next = std::get<Stepped>(r).state;
  EXPECT_EQ(PrintTerm(next.code), "[5]");
  EXPECT_TRUE(std::holds_alternative<Terminal>(Step({Memory{}, Nil()})));
  EXPECT_TRUE(std::holds_alternative<Stuck>(Step({Memory{}, ParseTerm("<x>")})));
}

TEST(MachineTest, MemoryEqualityIgnoresEmptyStacks) {
  Memory a = ParseMemory("c = 1");
  Memory b = ParseMemory("c = 1 ; d = ε");
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == ParseMemory("c = 2"));
  EXPECT_TRUE(ParseMemory("λ = <x>.[x]") == ParseMemory("λ = <y>.[y]"));
}

TEST(MachineTest, CustomOperators) {
  DeltaRegistry d = DeltaRegistry::Default();
  d.Register("neg", 1, 1, [](const std::vector<Term>& in)
                              -> std::optional<std::vector<Term>> {
    if (in[0]->sym.kind != ConstSym::Kind::kInt) return std::nullopt;
    return std::vector<Term>{Const(ConstSym::Int(-in[0]->sym.value))};
  });
  Term t = Push(Const(ConstSym::Int(4)), Location::Main(),
                Const(ConstSym::Op("neg", 1, 1)));
  RunResult r = fmc::Run(Memory{}, t, d);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(PrintMemory(r.final()), "λ = -4");
}

}  // namespace
}  // namespace fmc
