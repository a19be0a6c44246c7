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

#include <fmt/core.h>

#include <functional>

#include "fmc/parser.h"
#include "fmc/type_syntax.h"

namespace fmc {

namespace {

const Location kMain;

const std::vector<TypeRef>& MainItems(const MemoryType& m) {
  static const std::vector<TypeRef> empty;
  for (const auto& [l, v] : m.vecs) {
    if (!l.is_main() && !v.items.empty())
      throw BridgeError("location " + l.display() +
                        " has no λ-calculus counterpart");
    if (v.has_row()) throw BridgeError("type has an open row");
  }
  auto it = m.vecs.find(kMain);
  return it == m.vecs.end() ? empty : it->second.items;
}

}  // namespace

lam::TypeRef ToLambdaVector(const std::vector<TypeRef>& items) {
  if (items.size() == 1) return ToLambdaType(items[0]);
  std::vector<lam::TypeRef> out;
  for (const auto& i : items) out.push_back(ToLambdaType(i));
  return lam::Product(std::move(out));
}

lam::TypeRef ToLambdaType(const TypeRef& t) {
  switch (t->kind) {
    case SimpleType::Kind::kBase:
      return lam::Base(t->name);
    case SimpleType::Kind::kVar:
      throw BridgeError("type variable in " + PrintType(t));
    case SimpleType::Kind::kArrow:
      return lam::Arrow(ToLambdaVector(MainItems(t->in)),
                        ToLambdaVector(MainItems(t->out)));
  }
  throw BridgeError("unreachable");
}

std::vector<TypeRef> ToFmcVector(const lam::TypeRef& t) {
  std::vector<TypeRef> out;
  for (const auto& a : lam::Flatten(t)) out.push_back(ToFmcType(a));
  return out;
}

TypeRef ToFmcType(const lam::TypeRef& t) {
  switch (t->kind) {
    case lam::Type::Kind::kBase:
      return BaseType(t->name);
    case lam::Type::Kind::kArrow:
      return MainArrow(ToFmcVector(t->dom), ToFmcVector(t->cod));
    case lam::Type::Kind::kProduct:
      throw BridgeError("a product is not a single stack item");
  }
  throw BridgeError("unreachable");
}

// FMC to λ.

namespace {

class Symbolic {
 public:
  // Runs the segments of `d` starting at `node`, `step`.
  lam::TermRef Run(const Derivation& d, const TermNode* node, std::size_t step,
                   LambdaValuation v, std::vector<lam::TermRef> stack,
                   std::vector<lam::TermRef>* out) {
    for (; step < d.steps.size(); ++step, node = node->cont.get()) {
      const DerivStep& s = d.steps[step];
      switch (node->kind) {
        case TermKind::kNil:
          break;
        case TermKind::kPop: {
          if (!node->loc.is_main())
            throw BridgeError("pop on location " + node->loc.display());
          if (stack.empty()) throw BridgeError("pop on an empty stack");
          v[node->var] = stack.back();
          stack.pop_back();
          break;
        }
        case TermKind::kPush: {
          if (!node->loc.is_main())
            throw BridgeError("push on location " + node->loc.display());
          stack.push_back(Value(node->arg, s, v));
          break;
        }
        case TermKind::kConst: {
          if (!node->sym.is_literal())
            throw BridgeError("operator " + node->sym.name +
                              " has no λ-calculus counterpart");
          stack.push_back(Literal(node->sym));
          break;
        }
        case TermKind::kVar: {
          auto it = v.find(node->var);
          if (it == v.end()) throw BridgeError("unvalued variable " + node->var);
          const auto& in = MainItems(s.type->in);
          const auto& outs = MainItems(s.type->out);
          if (stack.size() < in.size())
            throw BridgeError("call of " + node->var + " lacks inputs");
          std::vector<lam::TermRef> args(stack.end() - static_cast<long>(in.size()),
                                         stack.end());
          stack.resize(stack.size() - in.size());
          lam::TermRef call = lam::App(it->second, lam::TupleOrSingle(args));
          if (outs.size() == 1) {
            stack.push_back(call);
          } else if (outs.size() >= 2) {
            // Name the components and continue under a pattern.
            std::vector<lam::Pattern> pats;
            for (const auto& o : outs) {
              std::string y = fmt::format("y{}", counter_++);
              pats.push_back(lam::VarPattern(y, ToLambdaType(o)));
              stack.push_back(lam::Var(y));
            }
            lam::TermRef rest =
                Run(d, node->cont.get(), step + 1, v, std::move(stack), out);
            return lam::App(lam::Lam(lam::TuplePattern(std::move(pats)), rest),
                            call);
          }
          break;
        }
      }
    }
    if (out) *out = stack;
    return lam::TupleOrSingle(stack);
  }

 private:
  lam::TermRef Literal(const ConstSym& sym) {
    if (sym.kind == ConstSym::Kind::kBool)
      return lam::Const(sym.value ? "true" : "false");
    return lam::Const(std::to_string(sym.value));
  }

  lam::TermRef Value(const Term& arg, const DerivStep& s,
                     const LambdaValuation& v) {
    if (!s.arg) {
      if (arg->kind == TermKind::kVar && arg->cont->kind == TermKind::kNil) {
        auto it = v.find(arg->var);
        if (it == v.end()) throw BridgeError("unvalued variable " + arg->var);
        return it->second;
      }
      if (arg->kind == TermKind::kConst && arg->sym.is_literal())
        return Literal(arg->sym);
      throw BridgeError("push without a derivation: " + PrintTerm(arg));
    }
    const Derivation& inner = *s.arg;
    const auto& in = MainItems(inner.type->in);
    MainItems(inner.type->out);
    std::vector<lam::Pattern> pats;
    std::vector<lam::TermRef> stack;
    for (const auto& i : in) {
      std::string x = fmt::format("p{}", counter_++);
      pats.push_back(lam::VarPattern(x, ToLambdaType(i)));
      stack.push_back(lam::Var(x));
    }
    lam::Pattern p = pats.size() == 1 ? pats[0] : lam::TuplePattern(std::move(pats));
    lam::TermRef body =
        Run(inner, inner.term.get(), 0, v, std::move(stack), nullptr);
    return lam::Lam(std::move(p), body);
  }

  int counter_ = 0;
};

}  // namespace

std::vector<lam::TermRef> RunToLambda(const Derivation& d,
                                      const LambdaValuation& v,
                                      std::vector<lam::TermRef> stack) {
  Symbolic sym;
  std::vector<lam::TermRef> out;
  lam::TermRef r = sym.Run(d, d.term.get(), 0, v, std::move(stack), &out);
  // A pattern binding wraps the result; the stack is then only reachable
  // through projections of the result.
  if (r->kind == lam::Term::Kind::kApp) {
    std::size_t n = out.size();
    if (n == 1) return {r};
    std::vector<lam::TermRef> items;
    for (std::size_t i = 0; i < n; ++i)
      items.push_back(lam::Proj(static_cast<int>(i + 1), r));
    return items;
  }
  return out;
}

lam::TermRef FmcToLambda(const Derivation& d, const LambdaValuation& v,
                         std::vector<lam::TermRef> stack) {
  Symbolic sym;
  return sym.Run(d, d.term.get(), 0, v, std::move(stack), nullptr);
}

LambdaImage FmcToLambda(const Term& t, const TypeRef& type,
                        const Signature& sig) {
  if (type->kind != SimpleType::Kind::kArrow)
    throw BridgeError("expected an implication, got " + PrintType(type));
  DerivRef d = Check({}, t, type, sig);
  LambdaImage img;
  std::vector<lam::TermRef> stack;
  const auto& in = MainItems(type->in);
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::string x = fmt::format("s{}", i + 1);
    img.inputs.push_back(x);
    img.ctx[x] = ToLambdaType(in[i]);
    stack.push_back(lam::Var(x));
  }
  img.term = FmcToLambda(*d, {}, std::move(stack));
  img.type = ToLambdaVector(MainItems(type->out));
  return img;
}

// λ to FMC.

std::vector<TypeRef> ContextVector(const OrderedContext& ctx) {
  std::vector<TypeRef> out;
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    for (auto& t : ToFmcVector(it->second)) out.push_back(std::move(t));
  }
  return out;
}

std::vector<lam::TermRef> ContextStack(const OrderedContext& ctx) {
  std::vector<lam::TermRef> out;
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    for (auto& c : lam::FlatComponents(lam::Var(it->first), it->second))
      out.push_back(std::move(c));
  }
  return out;
}

namespace {

class Translator {
 public:
  explicit Translator(bool annotate) : annotate_(annotate) {}

  Term Go(const OrderedContext& ctx, const lam::TermRef& m) {
    lam::Context types;
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      types[it->first] = it->second;
    return Translate(ctx, types, m);
  }

 private:
  static std::size_t Slots(const lam::TypeRef& t) { return lam::Flatten(t).size(); }

  static std::size_t Width(const OrderedContext& ctx) {
    std::size_t n = 0;
    for (const auto& [x, t] : ctx) n += Slots(t);
    return n;
  }

  // Binders for the whole context, bottom first.
  std::vector<std::string> Names(std::size_t n, const char* stem) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(fmt::format("{}{}", stem, i + 1));
    return out;
  }

  // `<x_n>...<x_1>.M`, popping the top first.
  Term PopAll(const std::vector<std::string>& xs,
              const std::vector<TypeRef>& types, Term m) const {
    for (std::size_t i = 0; i < xs.size(); ++i)
      m = Pop(kMain, xs[i], m, annotate_ ? types[i] : nullptr);
    return m;
  }

  // `[x_1]...[x_n].M`, pushing the bottom first.
  static Term PushAll(const std::vector<std::string>& xs, std::size_t from,
                      std::size_t to, Term m) {
    for (std::size_t i = to; i-- > from;) m = Push(fmc::Var(xs[i]), kMain, m);
    return m;
  }

  Term Translate(const OrderedContext& ctx, const lam::Context& types,
                 const lam::TermRef& m) {
    std::size_t w = Width(ctx);
    std::vector<TypeRef> slots = annotate_ ? ContextVector(ctx) : std::vector<TypeRef>(w);
    switch (m->kind) {
      case lam::Term::Kind::kVar: {
        // Slots of entry i start at the bottom after all deeper entries.
        std::size_t start = 0;
        std::size_t i = ctx.size();
        while (i-- > 0) {
          if (ctx[i].first == m->name) break;
          start += Slots(ctx[i].second);
        }
        if (i == static_cast<std::size_t>(-1))
          throw BridgeError("unbound variable " + m->name);
        auto xs = Names(w, "a");
        return PopAll(xs, slots, PushAll(xs, start, start + Slots(ctx[i].second), Nil()));
      }
      case lam::Term::Kind::kConst: {
        auto xs = Names(w, "a");
        ConstSym sym;
        if (m->name == "true" || m->name == "false") {
          sym = ConstSym::Bool(m->name == "true");
        } else {
          sym = ConstSym::Int(std::stoll(m->name));
        }
        return PopAll(xs, slots, Push(Const(sym), kMain, Nil()));
      }
      case lam::Term::Kind::kTuple: {
        auto xs = Names(w, "x");
        std::vector<Term> parts;
        for (const auto& item : m->items) {
          parts.push_back(PushAll(xs, 0, w, Nil()));
          parts.push_back(Translate(ctx, types, item));
        }
        return PopAll(xs, slots, ComposeAll(parts));
      }
      case lam::Term::Kind::kApp: {
        auto xs = Names(w, "x");
        Term n = Translate(ctx, types, m->arg);
        Term f = Translate(ctx, types, m->fun);
        return PopAll(xs, slots, ComposeAll({PushAll(xs, 0, w, Nil()), n,
                                      PushAll(xs, 0, w, Nil()), f,
                                      Pop(kMain, "k", fmc::Var("k"),
                                          annotate_ ? ToFmcType(lam::TypeOf(types, m->fun))
                                                    : nullptr)}));
      }
      case lam::Term::Kind::kLam: {
        OrderedContext inner = ctx;
        lam::Context inner_types = types;
        auto vars = lam::PatternVars(m->pat);
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
          // Shadowed names stay in place but can no longer be referenced.
          for (auto& e : inner) {
            if (e.first == it->first) e.first.clear();
          }
        }
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
          inner.push_back(*it);
          inner_types[it->first] = it->second;
        }
        auto xs = Names(w, "x");
        Term body = Translate(inner, inner_types, m->body);
        return PopAll(xs, slots, Push(PushAll(xs, 0, w, body), kMain, Nil()));
      }
      case lam::Term::Kind::kProj: {
        lam::TypeRef p = lam::TypeOf(types, m->body);
        Term body = Translate(ctx, types, m->body);
        std::size_t total = Slots(p);
        std::size_t start = 0;
        for (int i = 0; i + 1 < m->index; ++i)
          start += Slots(p->items[static_cast<std::size_t>(i)]);
        std::size_t n = Slots(p->items[static_cast<std::size_t>(m->index - 1)]);
        auto ys = Names(total, "b");
        std::vector<TypeRef> parts = annotate_ ? ToFmcVector(p) : std::vector<TypeRef>(total);
        return Compose(body, PopAll(ys, parts, PushAll(ys, start, start + n, Nil())));
      }
    }
    throw BridgeError("unreachable");
  }

  bool annotate_;
};

}  // namespace

Term LambdaToFmc(const OrderedContext& ctx, const lam::TermRef& m,
                 bool annotate) {
  return Translator(annotate).Go(ctx, m);
}

Signature SignatureFor(const std::vector<lam::TypeRef>& types) {
  Signature sig = Signature::Default();
  std::function<void(const lam::TypeRef&)> add = [&](const lam::TypeRef& t) {
    switch (t->kind) {
      case lam::Type::Kind::kBase:
        sig.AddBase(t->name);
        break;
      case lam::Type::Kind::kArrow:
        add(t->dom);
        add(t->cod);
        break;
      case lam::Type::Kind::kProduct:
        for (const auto& i : t->items) add(i);
        break;
    }
  };
  for (const auto& t : types) add(t);
  return sig;
}

RoundTrip LambdaRoundTrip(const OrderedContext& ctx, const lam::TermRef& m) {
  lam::Context types;
  std::vector<lam::TypeRef> all;
  for (const auto& [x, t] : ctx) {
    types[x] = t;
    all.push_back(t);
  }
  lam::TypeRef a = lam::TypeOf(types, m);
  all.push_back(a);
  RoundTrip r;
  r.fmc = LambdaToFmc(ctx, m);
  TypeRef ty = MainArrow(ContextVector(ctx), ToFmcVector(a));
  // Annotated binders let checking see through pushed abstractions.
  DerivRef d = Check({}, LambdaToFmc(ctx, m, true), ty, SignatureFor(all));
  r.back = FmcToLambda(*d, {}, ContextStack(ctx));
  r.equal = lam::BetaEtaEq(types, r.back, m, a);
  return r;
}

}  // namespace fmc
