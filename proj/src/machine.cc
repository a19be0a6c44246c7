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

#include <fmt/core.h>

#include <utility>

#include "fmc/parser.h"

namespace fmc {

const Stack& Memory::at(const Location& l) const {
  static const Stack empty;
  auto it = stacks_.find(l);
  return it == stacks_.end() ? empty : it->second;
}

std::set<Location> Memory::locations() const {
  std::set<Location> out;
  for (const auto& [l, s] : stacks_) {
    if (!s.empty()) out.insert(l);
  }
  return out;
}

bool Memory::empty() const { return locations().empty(); }

bool Memory::operator==(const Memory& other) const {
  std::set<Location> locs = locations();
  for (const auto& l : other.locations()) locs.insert(l);
  for (const auto& l : locs) {
    const Stack& a = at(l);
    const Stack& b = other.at(l);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!AlphaEq(a[i], b[i])) return false;
    }
  }
  return true;
}

void DeltaRegistry::Register(const std::string& name, int arity_in,
                             int arity_out, Fn fn) {
  entries_[name] = Entry{arity_in, arity_out, std::move(fn)};
}

bool DeltaRegistry::Has(const std::string& name) const {
  return entries_.count(name) > 0;
}

std::optional<std::vector<Term>> DeltaRegistry::Apply(
    const ConstSym& sym, const std::vector<Term>& inputs) const {
  auto it = entries_.find(sym.name);
  if (it == entries_.end()) return std::nullopt;
  if (static_cast<int>(inputs.size()) != it->second.in) return std::nullopt;
  auto out = it->second.fn(inputs);
  if (out && static_cast<int>(out->size()) != it->second.out)
    return std::nullopt;
  return out;
}

namespace {

std::optional<std::int64_t> IntLiteral(const Term& t) {
  if (t->kind == TermKind::kConst && t->sym.kind == ConstSym::Kind::kInt &&
      t->cont->kind == TermKind::kNil)
    return t->sym.value;
  return std::nullopt;
}

std::optional<bool> BoolLiteral(const Term& t) {
  if (t->kind == TermKind::kConst && t->sym.kind == ConstSym::Kind::kBool &&
      t->cont->kind == TermKind::kNil)
    return t->sym.value != 0;
  return std::nullopt;
}

DeltaRegistry MakeDefault() {
  DeltaRegistry d;
  d.Register("+", 2, 1,
             [](const std::vector<Term>& in) -> std::optional<std::vector<Term>> {
               auto a = IntLiteral(in[1]);
               auto b = IntLiteral(in[0]);
               std::int64_t r;
               if (!a || !b || __builtin_add_overflow(*a, *b, &r))
                 return std::nullopt;
               return std::vector<Term>{Const(ConstSym::Int(r))};
             });
  d.Register("mul", 2, 1,
             [](const std::vector<Term>& in) -> std::optional<std::vector<Term>> {
               auto a = IntLiteral(in[1]);
               auto b = IntLiteral(in[0]);
               std::int64_t r;
               if (!a || !b || __builtin_mul_overflow(*a, *b, &r))
                 return std::nullopt;
               return std::vector<Term>{Const(ConstSym::Int(r))};
             });
  // Stack ... N M b with b on top.
  d.Register("if", 3, 1,
             [](const std::vector<Term>& in) -> std::optional<std::vector<Term>> {
               auto b = BoolLiteral(in[0]);
               if (!b) return std::nullopt;
               return std::vector<Term>{*b ? in[2] : in[1]};
             });
  return d;
}

// Advances `s` by one transition in place. Returns false when the code is
// Nil; fills `stuck` when no transition applies.
bool StepInPlace(MachineState& s, const DeltaRegistry& d,
                 std::optional<StuckReason>& stuck) {
  const Term code = s.code;
  switch (code->kind) {
    case TermKind::kNil:
      return false;
    case TermKind::kPush:
      s.memory.mut(code->loc).push_back(code->arg);
      s.code = code->cont;
      return true;
    case TermKind::kPop: {
      Stack& st = s.memory.mut(code->loc);
      if (st.empty()) {
        StuckReason r;
        r.kind = StuckReason::Kind::kPopOnEmpty;
        r.loc = code->loc;
        stuck = r;
        return true;
      }
      Term top = st.back();
      st.pop_back();
      s.code = Substitute(top, code->var, code->cont);
      return true;
    }
    case TermKind::kConst: {
      Stack& st = s.memory.mut(Location());
      if (code->sym.is_literal()) {
        st.push_back(Const(code->sym));
        s.code = code->cont;
        return true;
      }
      int n = code->sym.arity_in;
      if (static_cast<int>(st.size()) < n) {
        StuckReason r;
        r.kind = StuckReason::Kind::kDeltaUnderflow;
        r.sym = code->sym.name;
        r.inputs.assign(st.rbegin(), st.rend());
        stuck = r;
        return true;
      }
      std::vector<Term> inputs(st.rbegin(), st.rbegin() + n);
      auto out = d.Apply(code->sym, inputs);
      if (!out) {
        StuckReason r;
        r.kind = StuckReason::Kind::kDeltaUndefined;
        r.sym = code->sym.name;
        r.inputs = inputs;
        stuck = r;
        return true;
      }
      st.resize(st.size() - n);
      for (auto& t : *out) st.push_back(std::move(t));
      s.code = code->cont;
      return true;
    }
    case TermKind::kVar: {
      StuckReason r;
      r.kind = StuckReason::Kind::kOpenTerm;
      r.sym = code->var;
      stuck = r;
      return true;
    }
  }
  return false;
}

}  // namespace

const DeltaRegistry& DeltaRegistry::Default() {
  static const DeltaRegistry d = MakeDefault();
  return d;
}

std::string StuckReason::Describe() const {
  switch (kind) {
    case Kind::kPopOnEmpty:
      return fmt::format("pop on empty stack at location {}", loc.display());
    case Kind::kDeltaUndefined: {
      std::string ins;
      for (const auto& t : inputs) {
        if (!ins.empty()) ins += ", ";
        ins += PrintTerm(t);
      }
      return fmt::format("operator {} undefined on inputs ({})", sym, ins);
    }
    case Kind::kDeltaUnderflow:
      return fmt::format("operator {} lacks inputs on the main stack", sym);
    case Kind::kOpenTerm:
      return fmt::format("free variable {} in head position", sym);
  }
  return "stuck";
}

StepResult Step(const MachineState& s, const DeltaRegistry& d) {
  if (s.code->kind == TermKind::kNil) return Terminal{s.memory};
  MachineState next = s;
  std::optional<StuckReason> stuck;
  StepInPlace(next, d, stuck);
  if (stuck) return Stuck{*stuck};
  return Stepped{std::move(next)};
}

RunResult Run(Memory m, const Term& t, const DeltaRegistry& d,
              std::size_t fuel) {
  RunResult r;
  r.state.memory = std::move(m);
  r.state.code = t;
  while (true) {
    if (r.state.code->kind == TermKind::kNil) {
      r.status = RunResult::Status::kTerminal;
      return r;
    }
    if (r.steps >= fuel) {
      r.status = RunResult::Status::kFuelExhausted;
      return r;
    }
    std::optional<StuckReason> stuck;
    StepInPlace(r.state, d, stuck);
    if (stuck) {
      r.status = RunResult::Status::kStuck;
      r.reason = stuck;
      return r;
    }
    ++r.steps;
  }
}

Trace TraceRun(Memory m, const Term& t, const DeltaRegistry& d,
               std::size_t fuel) {
  Trace tr;
  MachineState s{std::move(m), t};
  tr.states.push_back(s);
  std::size_t steps = 0;
  while (true) {
    if (s.code->kind == TermKind::kNil) {
      tr.status = RunResult::Status::kTerminal;
      return tr;
    }
    if (steps >= fuel) {
      tr.status = RunResult::Status::kFuelExhausted;
      return tr;
    }
    std::optional<StuckReason> stuck;
    StepInPlace(s, d, stuck);
    if (stuck) {
      tr.status = RunResult::Status::kStuck;
      tr.reason = stuck;
      return tr;
    }
    ++steps;
    tr.states.push_back(s);
  }
}

std::string FormatState(const MachineState& s,
                        const std::vector<Location>& locs) {
  std::string out;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (i) out += " | ";
    out += locs[i].display() + " = " + PrintStack(s.memory.at(locs[i]));
  }
  out += " || ";
  out += PrintTerm(s.code);
  return out;
}

std::vector<Location> TraceLocations(const Trace& t) {
  std::set<Location> seen;
  for (const auto& s : t.states) {
    for (const auto& l : s.memory.locations()) seen.insert(l);
  }
  if (!t.states.empty()) {
    for (const auto& l : LocationsOf(t.states.front().code)) seen.insert(l);
  }
  std::vector<Location> out;
  for (const auto& l : seen) {
    if (!l.is_main()) out.push_back(l);
  }
  out.push_back(Location());
  return out;
}

std::string FormatTrace(const Trace& t) {
  auto locs = TraceLocations(t);
  std::string out;
  for (const auto& s : t.states) {
    out += FormatState(s, locs);
    out += '\n';
  }
  switch (t.status) {
    case RunResult::Status::kTerminal:
      break;
    case RunResult::Status::kStuck:
      out += "stuck: " + t.reason->Describe() + "\n";
      break;
    case RunResult::Status::kFuelExhausted:
      out += "fuel exhausted\n";
      break;
  }
  return out;
}

}  // namespace fmc
