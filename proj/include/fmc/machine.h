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

#ifndef FMC_MACHINE_H_
#define FMC_MACHINE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fmc/location.h"
#include "fmc/syntax.h"

namespace fmc {

// Closed terms, top of stack at the back.
using Stack = std::vector<Term>;

class Memory {
 public:
  const Stack& at(const Location& l) const;
  Stack& mut(const Location& l) { return stacks_[l]; }
  void set(const Location& l, Stack s) { stacks_[l] = std::move(s); }

  // Locations holding a non-empty stack.
  std::set<Location> locations() const;
  bool empty() const;

  // Equality up to alpha-equivalence of elements; empty stacks are ignored.
  bool operator==(const Memory& other) const;

 private:
  std::map<Location, Stack> stacks_;
};

struct MachineState {
  Memory memory;
  Term code;
};

// Partial functions interpreting operator constants. Inputs are given top
// first: inputs[0] is the top of the main stack.
class DeltaRegistry {
 public:
  using Fn = std::function<std::optional<std::vector<Term>>(
      const std::vector<Term>&)>;

  void Register(const std::string& name, int arity_in, int arity_out, Fn fn);
  bool Has(const std::string& name) const;
  std::optional<std::vector<Term>> Apply(const ConstSym& sym,
                                         const std::vector<Term>& inputs) const;

  // "+", "mul" on integer literals and "if" with arity (3,1).
  static const DeltaRegistry& Default();

 private:
  struct Entry {
    int in;
    int out;
    Fn fn;
  };
  std::map<std::string, Entry> entries_;
};

struct StuckReason {
  enum class Kind { kPopOnEmpty, kDeltaUndefined, kDeltaUnderflow, kOpenTerm };

  Kind kind = Kind::kPopOnEmpty;
  Location loc;
  std::string sym;
  std::vector<Term> inputs;

  std::string Describe() const;
};

struct Stepped {
  MachineState state;
};
struct Terminal {
  Memory memory;
};
struct Stuck {
  StuckReason reason;
};
using StepResult = std::variant<Stepped, Terminal, Stuck>;

StepResult Step(const MachineState& s,
                const DeltaRegistry& d = DeltaRegistry::Default());

struct RunResult {
  enum class Status { kTerminal, kStuck, kFuelExhausted };

  Status status = Status::kTerminal;
  // Final state; its code is Nil when the run terminated.
  MachineState state;
  std::size_t steps = 0;
  std::optional<StuckReason> reason;

  bool ok() const { return status == Status::kTerminal; }
  const Memory& final() const { return state.memory; }
};

RunResult Run(Memory m, const Term& t,
              const DeltaRegistry& d = DeltaRegistry::Default(),
              std::size_t fuel = 1000000);

struct Trace {
  std::vector<MachineState> states;
  RunResult::Status status = RunResult::Status::kTerminal;
  std::optional<StuckReason> reason;
};

Trace TraceRun(Memory m, const Term& t,
               const DeltaRegistry& d = DeltaRegistry::Default(),
               std::size_t fuel = 1000000);

// `rnd = 9 7 | c = 5 || code`, listing `locs` in order.
std::string FormatState(const MachineState& s,
                        const std::vector<Location>& locs);

// Locations worth showing for a trace: those of the initial memory and the
// code, plus the main location.
std::vector<Location> TraceLocations(const Trace& t);

std::string FormatTrace(const Trace& t);

}  // namespace fmc

#endif  // FMC_MACHINE_H_
