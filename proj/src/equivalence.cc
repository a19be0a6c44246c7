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

#include <fmt/core.h>

#include <algorithm>

#include "fmc/bridge.h"
#include "fmc/lambda.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"
#include "fmc/type_syntax.h"

namespace fmc {

namespace {

const Location kMain;

std::string Name(const std::string& stem, std::size_t i) {
  return fmt::format("{}{}", stem, i + 1);
}

// `<?x>.cont` with x_1 at the bottom, popping the top first.
Term PopVec(const std::string& stem, const Vec& v, Term cont) {
  for (std::size_t i = 0; i < v.size(); ++i)
    cont = Pop(kMain, Name(stem, i), cont, v[i]);
  return cont;
}

// `[!x].cont`, pushing x_1 first.
Term PushVec(const std::string& stem, std::size_t n, Term cont) {
  for (std::size_t i = n; i-- > 0;) cont = Push(Var(Name(stem, i)), kMain, cont);
  return cont;
}

Vec Concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

const Vec& MainVec(const MemoryType& m) {
  static const Vec empty;
  auto it = m.vecs.find(kMain);
  return it == m.vecs.end() ? empty : it->second.items;
}

}  // namespace

namespace ccc {

Term Bang(const Vec& t) { return PopVec("x", t, Nil()); }

Term Delta(const Vec& t) {
  return PopVec("x", t, PushVec("x", t.size(), PushVec("x", t.size(), Nil())));
}

Term Pi1(const Vec& u, const Vec& t) {
  return PopVec("x", t, PopVec("y", u, PushVec("x", t.size(), Nil())));
}

Term Pi2(const Vec& u, const Vec& t) {
  return PopVec("x", t, PopVec("y", u, PushVec("y", u.size(), Nil())));
}

Term Eps(const Vec& s, const Vec& t) {
  return Pop(kMain, "z", Var("z"), MainArrow(s, t));
}

Term EtaCurry(const Vec& s, const Vec& t) {
  (void)s;
  return PopVec("x", t, Push(PushVec("x", t.size(), Nil()), kMain));
}

Term Hom(const Term& m, const Term& n, const Vec& s, const Vec& t) {
  return Pop(kMain, "z", Push(ComposeAll({m, Var("z"), n}), kMain),
             MainArrow(s, t));
}

Term Pair(const Term& n, const Term& m, const Vec& s, const Vec& t_of_n) {
  return ComposeAll({Delta(s), n,
                     PopVec("z", t_of_n,
                            Compose(m, PushVec("z", t_of_n.size(), Nil())))});
}

Term Curry(const Term& m, const Vec& r) {
  return PopVec("x", r, Push(PushVec("x", r.size(), m), kMain));
}

Term TensorLeft(const Term& m, const Vec& t) {
  (void)t;
  return m;
}

Term TensorRight(const Vec& t, const Term& m) {
  return PopVec("x", t, Compose(m, PushVec("x", t.size(), Nil())));
}

}  // namespace ccc

const char* LawName(Law law) {
  switch (law) {
    case Law::kBeta:
      return "beta";
    case Law::kInterchange:
      return "interchange";
    case Law::kDiagonal:
      return "diagonal";
    case Law::kTerminal:
      return "terminal";
    case Law::kEtaFirstOrder:
      return "eta-first-order";
    case Law::kEtaHigherOrder:
      return "eta-higher-order";
  }
  return "?";
}

const char* DerivedLawName(DerivedLaw law) {
  switch (law) {
    case DerivedLaw::kPairFirst:
      return "pair-pi1";
    case DerivedLaw::kPairSecond:
      return "pair-pi2";
    case DerivedLaw::kProductUniqueness:
      return "product-uniqueness";
    case DerivedLaw::kExponentExistence:
      return "exponent-existence";
    case DerivedLaw::kExponentUniqueness:
      return "exponent-uniqueness";
  }
  return "?";
}

std::vector<Law> AllLaws() {
  return {Law::kBeta,     Law::kInterchange,   Law::kDiagonal,
          Law::kTerminal, Law::kEtaFirstOrder, Law::kEtaHigherOrder};
}

std::vector<DerivedLaw> AllDerivedLaws() {
  return {DerivedLaw::kPairFirst, DerivedLaw::kPairSecond,
          DerivedLaw::kProductUniqueness, DerivedLaw::kExponentExistence,
          DerivedLaw::kExponentUniqueness};
}

// Instances.

namespace {

GenOptions MainOnly(GenOptions opts) {
  opts.locations = {Location::Main()};
  opts.annotate = true;
  return opts;
}

struct Closed {
  Term term;
  Vec in;
  Vec out;
};

Closed RandomClosed(Rng& rng, const GenOptions& opts) {
  TypedTerm t = RandomTypedTerm(rng, opts);
  return {t.term, MainVec(t.type->in), MainVec(t.type->out)};
}

// A closed term whose output is a single implication.
Closed RandomHigherOrder(Rng& rng, const GenOptions& opts) {
  for (int i = 0; i < 1000; ++i) {
    Closed c = RandomClosed(rng, opts);
    if (c.out.size() == 1 && c.out[0]->kind == SimpleType::Kind::kArrow)
      return c;
  }
  Closed c = RandomClosed(rng, opts);
  TypeRef ty = MainArrow(c.in, c.out);
  return {Push(AsThunk(c.term), kMain), {}, {ty}};
}

// A closed term with input exactly `s`.
Closed RandomWithInput(Rng& rng, const GenOptions& opts, const Vec& s) {
  Context ctx;
  for (std::size_t i = 0; i < s.size(); ++i) ctx[Name("w", i)] = s[i];
  for (int i = 0; i < 1000; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts, ctx);
    if (!MainVec(t.type->in).empty()) continue;
    return {PopVec("w", s, t.term), s, MainVec(t.type->out)};
  }
  return {PopVec("w", s, PushVec("w", s.size(), Nil())), s, s};
}

Term Then(const Term& a, const Term& b) { return Compose(a, b); }

}  // namespace

LawInstance RandomLawInstance(Law law, Rng& rng, const GenOptions& base) {
  GenOptions opts = MainOnly(base);
  LawInstance li;
  li.name = LawName(law);
  switch (law) {
    case Law::kBeta: {
      TypedTerm n = RandomTypedTerm(rng, opts);
      Context ctx{{"x", n.type}};
      TypedTerm m = RandomTypedTerm(rng, opts, ctx);
      Term arg = AsThunk(n.term);
      li.lhs = Push(arg, kMain, Pop(kMain, "x", m.term, n.type));
      li.rhs = Substitute(arg, "x", m.term);
      li.type = m.type;
      break;
    }
    case Law::kInterchange: {
      Closed m = RandomClosed(rng, opts);
      Closed n = RandomClosed(rng, opts);
      li.lhs = PopVec("x", m.in,
                      Then(n.term, PushVec("x", m.in.size(), m.term)));
      li.rhs = Then(m.term, PopVec("y", m.out,
                                   Then(n.term, PushVec("y", m.out.size(), Nil()))));
      li.type = MainArrow(Concat(n.in, m.in), Concat(n.out, m.out));
      break;
    }
    case Law::kDiagonal: {
      Closed m = RandomClosed(rng, opts);
      std::size_t k = m.out.size();
      li.lhs = Then(m.term, PopVec("y", m.out, PushVec("y", k, PushVec("y", k, Nil()))));
      li.rhs = PopVec("x", m.in,
                      ComposeAll({PushVec("x", m.in.size(), Nil()), m.term,
                                  PushVec("x", m.in.size(), Nil()), m.term}));
      li.type = MainArrow(m.in, Concat(m.out, m.out));
      break;
    }
    case Law::kTerminal: {
      Closed m = RandomClosed(rng, opts);
      li.lhs = Then(m.term, PopVec("y", m.out, Nil()));
      li.rhs = PopVec("x", m.in, Nil());
      li.type = MainArrow(m.in, {});
      break;
    }
    case Law::kEtaFirstOrder: {
      TypeRef a = opts.constants && std::uniform_int_distribution<int>(0, 1)(rng)
                      ? BaseType("Z")
                      : RandomType(rng, opts, opts.type_depth);
      li.lhs = Nil();
      li.rhs = Pop(kMain, "a", Push(Var("a"), kMain), a);
      li.type = MainArrow({a}, {a});
      break;
    }
    case Law::kEtaHigherOrder: {
      Closed p = RandomHigherOrder(rng, opts);
      li.lhs = p.term;
      li.rhs = PopVec("x", p.in,
                      Push(PushVec("x", p.in.size(),
                                   Then(p.term, ccc::Eps(MainVec(p.out[0]->in),
                                                         MainVec(p.out[0]->out)))),
                           kMain));
      li.type = MainArrow(p.in, p.out);
      break;
    }
  }
  return li;
}

LawInstance RandomDerivedInstance(DerivedLaw law, Rng& rng,
                                  const GenOptions& base) {
  GenOptions opts = MainOnly(base);
  LawInstance li;
  li.name = DerivedLawName(law);
  switch (law) {
    case DerivedLaw::kPairFirst:
    case DerivedLaw::kPairSecond: {
      Closed n = RandomClosed(rng, opts);
      Closed m = RandomWithInput(rng, opts, n.in);
      Term pair = ccc::Pair(n.term, m.term, n.in, n.out);
      if (law == DerivedLaw::kPairFirst) {
        li.lhs = Then(pair, ccc::Pi1(m.out, n.out));
        li.rhs = n.term;
        li.type = MainArrow(n.in, n.out);
      } else {
        li.lhs = Then(pair, ccc::Pi2(m.out, n.out));
        li.rhs = m.term;
        li.type = MainArrow(n.in, m.out);
      }
      break;
    }
    case DerivedLaw::kProductUniqueness: {
      Closed p = RandomClosed(rng, opts);
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, p.out.size())(rng);
      Vec u(p.out.begin(), p.out.end() - static_cast<long>(k));
      Vec t(p.out.end() - static_cast<long>(k), p.out.end());
      Term first = Then(p.term, ccc::Pi1(u, t));
      Term second = Then(p.term, ccc::Pi2(u, t));
      li.lhs = ccc::Pair(first, second, p.in, t);
      li.rhs = p.term;
      li.type = MainArrow(p.in, p.out);
      break;
    }
    case DerivedLaw::kExponentExistence: {
      Closed m = RandomClosed(rng, opts);
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, m.in.size())(rng);
      Vec s(m.in.begin(), m.in.end() - static_cast<long>(k));
      Vec r(m.in.end() - static_cast<long>(k), m.in.end());
      li.lhs = Then(ccc::Curry(m.term, r), ccc::Eps(s, m.out));
      li.rhs = m.term;
      li.type = MainArrow(m.in, m.out);
      break;
    }
    case DerivedLaw::kExponentUniqueness: {
      Closed n = RandomHigherOrder(rng, opts);
      const TypeRef& c = n.out[0];
      li.lhs = ccc::Curry(Then(n.term, ccc::Eps(MainVec(c->in), MainVec(c->out))),
                          n.in);
      li.rhs = n.term;
      li.type = MainArrow(n.in, n.out);
      break;
    }
  }
  return li;
}

// Machine equivalence.

const char* VerdictName(EquivResult::Verdict v) {
  switch (v) {
    case EquivResult::Verdict::kNotDistinguished:
      return "NotDistinguished";
    case EquivResult::Verdict::kDistinguished:
      return "Distinguished";
    case EquivResult::Verdict::kIllTyped:
      return "IllTyped";
  }
  return "?";
}

const char* EqnVerdictName(EqnResult::Verdict v) {
  switch (v) {
    case EqnResult::Verdict::kProved:
      return "Proved";
    case EqnResult::Verdict::kRefuted:
      return "Refuted";
    case EqnResult::Verdict::kUnknown:
      return "Unknown";
  }
  return "?";
}

namespace {

std::string Describe(const RunResult& r) {
  switch (r.status) {
    case RunResult::Status::kTerminal:
      return PrintMemory(r.final());
    case RunResult::Status::kStuck:
      return "stuck: " + r.reason->Describe();
    case RunResult::Status::kFuelExhausted:
      return "fuel exhausted";
  }
  return "?";
}

class Tester {
 public:
  explicit Tester(const TestBudget& b) : budget_(b), rng_(b.seed) {}

  EquivResult Compare(const Term& a, const Term& b, const TypeRef& type,
                      int depth) {
    EquivResult res;
    for (const Memory& in : Inputs(type, depth)) {
      ++res.tests;
      RunResult ra = Run(in, a, DeltaRegistry::Default(), budget_.fuel);
      RunResult rb = Run(in, b, DeltaRegistry::Default(), budget_.fuel);
      bool same;
      if (ra.ok() != rb.ok()) {
        same = false;
      } else if (!ra.ok()) {
        same = ra.status == rb.status;
      } else {
        same = SameOutputs(ra.final(), rb.final(), type->out, depth);
      }
      if (!same) {
        res.verdict = EquivResult::Verdict::kDistinguished;
        res.witness = PrintMemory(in);
        res.left = Describe(ra);
        res.right = Describe(rb);
        return res;
      }
    }
    return res;
  }

 private:
  // Input memories for the inputs of `type`.
  std::vector<Memory> Inputs(const TypeRef& type, int depth) {
    struct Slot {
      Location loc;
      std::vector<Term> candidates;
    };
    std::vector<Slot> slots;
    std::size_t cap = depth == budget_.depth
                          ? budget_.max_inputs
                          : std::max<std::size_t>(1, budget_.max_inputs / 4);
    for (const auto& [l, v] : type->in.vecs) {
      for (const auto& item : v.items) {
        auto c = Inhabitants(item, budget_.k, budget_.per_item);
        if (c.empty()) return {};
        slots.push_back({l, std::move(c)});
      }
    }
    std::size_t total = 1;
    for (const auto& s : slots) {
      total *= s.candidates.size();
      if (total > cap) break;
    }
    std::vector<Memory> out;
    auto build = [&](const std::vector<std::size_t>& pick) {
      Memory m;
      for (std::size_t i = 0; i < slots.size(); ++i)
        m.mut(slots[i].loc).push_back(slots[i].candidates[pick[i]]);
      out.push_back(std::move(m));
    };
    std::vector<std::size_t> pick(slots.size(), 0);
    if (total <= cap) {
      while (true) {
        build(pick);
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
          if (++pick[i] < slots[i].candidates.size()) break;
          pick[i] = 0;
        }
        if (i == slots.size()) break;
      }
    } else {
      build(pick);
      while (out.size() < cap) {
        for (std::size_t i = 0; i < slots.size(); ++i) {
          pick[i] = std::uniform_int_distribution<std::size_t>(
              0, slots[i].candidates.size() - 1)(rng_);
        }
        build(pick);
      }
    }
    return out;
  }

  bool SameOutputs(const Memory& a, const Memory& b, const MemoryType& out,
                   int depth) {
    std::set<Location> locs = a.locations();
    for (const auto& l : b.locations()) locs.insert(l);
    for (const auto& l : locs) {
      const Stack& sa = a.at(l);
      const Stack& sb = b.at(l);
      if (sa.size() != sb.size()) return false;
      const Vec& items = out.at(l).items;
      // Typed items sit on top; anything below is compared literally.
      std::size_t base = sa.size() >= items.size() ? sa.size() - items.size() : 0;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        if (i >= base && i - base < items.size()) {
          if (!SameItem(sa[i], sb[i], items[i - base], depth)) return false;
        } else if (!AlphaEq(sa[i], sb[i])) {
          return false;
        }
      }
    }
    return true;
  }

  bool SameItem(const Term& a, const Term& b, const TypeRef& t, int depth) {
    if (t->kind != SimpleType::Kind::kArrow) return AlphaEq(a, b);
    if (AlphaEq(a, b)) return true;
    if (depth <= 0) return true;
    return Compare(a, b, t, depth - 1).verdict !=
           EquivResult::Verdict::kDistinguished;
  }

  TestBudget budget_;
  Rng rng_;
};

}  // namespace

EquivResult MachineEquiv(const Term& a, const Term& b, const TypeRef& type,
                         const TestBudget& budget, const Signature& sig) {
  if (type->kind != SimpleType::Kind::kArrow || !Typechecks({}, a, type, sig) ||
      !Typechecks({}, b, type, sig)) {
    EquivResult r;
    r.verdict = EquivResult::Verdict::kIllTyped;
    return r;
  }
  return Tester(budget).Compare(a, b, type, budget.depth);
}

EqnResult EqnCheck(const Term& a, const Term& b, const TypeRef& type,
                   const TestBudget& budget, const Signature& sig) {
  EqnResult res;
  res.equiv = MachineEquiv(a, b, type, budget, sig);
  if (res.equiv.verdict == EquivResult::Verdict::kIllTyped) {
    res.trace = "ill-typed";
    return res;
  }
  if (res.equiv.verdict == EquivResult::Verdict::kDistinguished) {
    res.verdict = EqnResult::Verdict::kRefuted;
    res.trace = "machine";
    return res;
  }
  NormalizeResult na = Normalize(a, Strategy::kLeftmostOutermost, 10000, true);
  NormalizeResult nb = Normalize(b, Strategy::kLeftmostOutermost, 10000, true);
  if (na.ok() && nb.ok() && (AlphaEq(na.term, nb.term) || PermEq(na.term, nb.term))) {
    res.verdict = EqnResult::Verdict::kProved;
    res.trace = fmt::format("βη: {} and {} steps to {}", na.steps, nb.steps,
                            PrintTerm(na.term));
    return res;
  }
  try {
    LambdaImage la = FmcToLambda(a, type, sig);
    LambdaImage lb = FmcToLambda(b, type, sig);
    if (lam::BetaEtaEq(la.ctx, la.term, lb.term, la.type)) {
      res.verdict = EqnResult::Verdict::kProved;
      res.trace = "λ: " + lam::PrintTerm(lam::LongNormalForm(la.ctx, la.term, la.type),
                                        {false});
      return res;
    }
    res.trace = "λ images differ";
  } catch (const std::exception& e) {
    res.trace = std::string("no λ image: ") + e.what();
  }
  return res;
}

}  // namespace fmc
