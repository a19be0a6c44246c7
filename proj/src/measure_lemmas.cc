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

#include <fmt/core.h>

#include <string>
#include <utility>
#include <vector>

#include "fmc/measure.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"

namespace fmc {

namespace {

const Location kMain;

const std::vector<TypeRef>& MainItems(const MemoryType& m) {
  static const std::vector<TypeRef> empty;
  auto it = m.vecs.find(kMain);
  return it == m.vecs.end() ? empty : it->second.items;
}

bool OnlyMain(const MemoryType& m) {
  for (const auto& [l, v] : m.vecs) {
    if (!l.is_main() && !v.items.empty()) return false;
  }
  return true;
}

std::string Show(const Term& a, const Term& b) {
  return fmt::format("{}  vs  {}", PrintTerm(a), PrintTerm(b));
}

// A point comparison of two interpretations on the same input memory.
bool SamePoint(const SnValue& a, const SemMemory& in_a, const SnValue& b,
               const SemMemory& in_b, Count extra, Rng& rng) {
  Applied ra = Apply(a, in_a);
  Applied rb = Apply(b, in_b);
  if (ra.count != SatAdd(rb.count, extra)) return false;
  return SampledMemoryEqual(ra.out, rb.out, rng, 8, 1);
}

}  // namespace

LemmaOutcome CheckSequencing(Rng& rng, const GenOptions& opts, int samples) {
  GenOptions main_only = opts;
  main_only.locations = {kMain};
  LemmaOutcome out;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    TypedTerm n = RandomTypedTerm(rng, main_only);
    const auto& mid = MainItems(n.type->out);
    Context ctx;
    for (std::size_t i = 0; i < mid.size(); ++i)
      ctx[fmt::format("w{}", i + 1)] = mid[i];
    TypedTerm body = RandomTypedTerm(rng, main_only, ctx);
    if (!MainItems(body.type->in).empty() || !OnlyMain(body.type->out))
      continue;
    Term m = body.term;
    for (std::size_t i = 0; i < mid.size(); ++i)
      m = Pop(kMain, fmt::format("w{}", i + 1), m, mid[i]);
    TypeRef tn = n.type;
    TypeRef tm = MainArrow(mid, MainItems(body.type->out));
    TypeRef tnm = MainArrow(MainItems(n.type->in), MainItems(body.type->out));
    Term nm = Compose(n.term, m);
    SnValue vn = Interpret(Check({}, n.term, tn), {});
    SnValue vm = Interpret(Check({}, m, tm), {});
    SnValue vnm = Interpret(Check({}, nm, tnm), {});
    out.instance = Show(n.term, m);
    for (int k = 0; k < samples; ++k) {
      SemMemory s = SampleInputs(tnm, rng, 1);
      Applied first = Apply(vn, s);
      Applied second = Apply(vm, first.out);
      Applied whole = Apply(vnm, s);
      ++out.points;
      if (whole.count != SatAdd(first.count, second.count) ||
          !SampledMemoryEqual(whole.out, second.out, rng, 8, 1)) {
        out.ok = false;
        return out;
      }
    }
    return out;
  }
  out.ok = false;
  out.instance = "no instance found";
  return out;
}

LemmaOutcome CheckSubstitution(Rng& rng, const GenOptions& opts,
                               int samples) {
  LemmaOutcome out;
  TypedTerm n = RandomTypedTerm(rng, opts);
  Context ctx{{"x", n.type}};
  TypedTerm m = RandomTypedTerm(rng, opts, ctx);
  Term sub = Substitute(n.term, "x", m.term);
  out.instance = Show(sub, m.term);
  SnValue vn = Interpret(Check({}, n.term, n.type), {});
  SnValue lhs = Interpret(Check({}, sub, m.type), {});
  SnValue rhs = Interpret(Check(ctx, m.term, m.type), {{"x", vn}});
  for (int k = 0; k < samples; ++k) {
    SemMemory s = SampleInputs(m.type, rng, 1);
    ++out.points;
    if (!SamePoint(lhs, s, rhs, s, 0, rng)) {
      out.ok = false;
      return out;
    }
  }
  return out;
}

namespace {

bool Independent(const Term& a, const Term& b) {
  if (a->kind == TermKind::kPop && b->kind == TermKind::kPop)
    return a->loc != b->loc && a->var != b->var;
  if (a->kind == TermKind::kPush && b->kind == TermKind::kPush)
    return a->loc != b->loc;
  if (a->kind == TermKind::kPop && b->kind == TermKind::kPush)
    return a->loc != b->loc && !OccursFree(a->var, b->arg);
  if (a->kind == TermKind::kPush && b->kind == TermKind::kPop)
    return a->loc != b->loc && !OccursFree(b->var, a->arg);
  return false;
}

}  // namespace

LemmaOutcome CheckPermutation(Rng& rng, const GenOptions& opts, int samples) {
  GenOptions multi = opts;
  if (multi.locations.size() < 2) multi.locations = {kMain, Location("c")};
  LemmaOutcome out;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    TypedTerm m = RandomTypedTerm(rng, multi);
    std::vector<Term> segs = Segments(m.term);
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      if (Independent(segs[i], segs[i + 1])) spots.push_back(i);
    }
    if (spots.empty()) continue;
    std::size_t i = spots[std::uniform_int_distribution<std::size_t>(
        0, spots.size() - 1)(rng)];
    std::swap(segs[i], segs[i + 1]);
    Term n = FromSegments(segs);
    out.instance = Show(m.term, n);
    if (!PermEq(m.term, n)) {
      out.ok = false;
      return out;
    }
    SnValue a = Interpret(Check({}, m.term, m.type), {});
    SnValue b = Interpret(Check({}, n, m.type), {});
    for (int k = 0; k < samples; ++k) {
      SemMemory s = SampleInputs(m.type, rng, 1);
      ++out.points;
      if (!SamePoint(a, s, b, s, 0, rng)) {
        out.ok = false;
        return out;
      }
    }
    return out;
  }
  out.ok = false;
  out.instance = "no instance found";
  return out;
}

}  // namespace fmc
