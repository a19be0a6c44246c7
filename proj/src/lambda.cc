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

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <utility>

namespace fmc {
namespace lam {

TypeRef Base(std::string name) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::kBase;
  t->name = std::move(name);
  return t;
}

TypeRef Arrow(TypeRef dom, TypeRef cod) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::kArrow;
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

TypeRef Product(std::vector<TypeRef> items) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::kProduct;
  t->items = std::move(items);
  return t;
}

bool TypeEq(const TypeRef& a, const TypeRef& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::kBase:
      return a->name == b->name;
    case Type::Kind::kArrow:
      return TypeEq(a->dom, b->dom) && TypeEq(a->cod, b->cod);
    case Type::Kind::kProduct:
      if (a->items.size() != b->items.size()) return false;
      for (std::size_t i = 0; i < a->items.size(); ++i) {
        if (!TypeEq(a->items[i], b->items[i])) return false;
      }
      return true;
  }
  return false;
}

namespace {

void FlattenInto(const TypeRef& t, std::vector<TypeRef>& out) {
  if (t->kind == Type::Kind::kProduct) {
    for (const auto& i : t->items) FlattenInto(i, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<TypeRef> Flatten(const TypeRef& t) {
  std::vector<TypeRef> out;
  FlattenInto(t, out);
  return out;
}

Pattern VarPattern(std::string x, TypeRef type) {
  Pattern p;
  p.var = std::move(x);
  p.type = std::move(type);
  return p;
}

Pattern TuplePattern(std::vector<Pattern> items) {
  Pattern p;
  p.tuple = true;
  p.items = std::move(items);
  return p;
}

TypeRef PatternType(const Pattern& p) {
  if (!p.tuple) {
    if (!p.type) throw Error("pattern variable " + p.var + " lacks a type");
    return p.type;
  }
  std::vector<TypeRef> items;
  for (const auto& i : p.items) items.push_back(PatternType(i));
  return Product(std::move(items));
}

namespace {

void CollectPatternVars(const Pattern& p,
                        std::vector<std::pair<std::string, TypeRef>>& out) {
  if (!p.tuple) {
    out.emplace_back(p.var, p.type);
    return;
  }
  for (const auto& i : p.items) CollectPatternVars(i, out);
}

}  // namespace

std::vector<std::pair<std::string, TypeRef>> PatternVars(const Pattern& p) {
  std::vector<std::pair<std::string, TypeRef>> out;
  CollectPatternVars(p, out);
  return out;
}

TermRef Var(std::string x) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kVar;
  t->name = std::move(x);
  return t;
}

TermRef Const(std::string c) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kConst;
  t->name = std::move(c);
  return t;
}

TermRef App(TermRef f, TermRef a) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kApp;
  t->fun = std::move(f);
  t->arg = std::move(a);
  return t;
}

TermRef Lam(Pattern p, TermRef body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kLam;
  t->pat = std::move(p);
  t->body = std::move(body);
  return t;
}

TermRef Tuple(std::vector<TermRef> items) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kTuple;
  t->items = std::move(items);
  return t;
}

TermRef Proj(int index, TermRef body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kProj;
  t->index = index;
  t->body = std::move(body);
  return t;
}

TermRef TupleOrSingle(std::vector<TermRef> items) {
  if (items.size() == 1) return items[0];
  return Tuple(std::move(items));
}

// Typing.

namespace {

bool IsIntLiteral(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

TypeRef TypeOf(const Context& ctx, const TermRef& t) {
  switch (t->kind) {
    case Term::Kind::kVar: {
      auto it = ctx.find(t->name);
      if (it == ctx.end()) throw Error("unbound variable " + t->name);
      return it->second;
    }
    case Term::Kind::kConst:
      if (IsIntLiteral(t->name)) return Base("Z");
      if (t->name == "true" || t->name == "false") return Base("B");
      throw Error("unknown constant " + t->name);
    case Term::Kind::kApp: {
      TypeRef f = TypeOf(ctx, t->fun);
      TypeRef a = TypeOf(ctx, t->arg);
      if (f->kind != Type::Kind::kArrow) {
        throw Error(fmt::format("applying {} of type {}", PrintTerm(t->fun),
                                PrintType(f)));
      }
      if (!TypeEq(f->dom, a)) {
        throw Error(fmt::format("argument {} has type {}, expected {}",
                                PrintTerm(t->arg), PrintType(a),
                                PrintType(f->dom)));
      }
      return f->cod;
    }
    case Term::Kind::kLam: {
      Context inner = ctx;
      std::set<std::string> seen;
      for (const auto& [x, ty] : PatternVars(t->pat)) {
        if (!ty) throw Error("pattern variable " + x + " lacks a type");
        if (!seen.insert(x).second)
          throw Error("pattern binds " + x + " twice");
        inner[x] = ty;
      }
      return Arrow(PatternType(t->pat), TypeOf(inner, t->body));
    }
    case Term::Kind::kTuple: {
      std::vector<TypeRef> items;
      for (const auto& i : t->items) items.push_back(TypeOf(ctx, i));
      return Product(std::move(items));
    }
    case Term::Kind::kProj: {
      TypeRef p = TypeOf(ctx, t->body);
      if (p->kind != Type::Kind::kProduct || t->index < 1 ||
          t->index > static_cast<int>(p->items.size())) {
        throw Error(fmt::format("projection {} out of range for {}", t->index,
                                PrintType(p)));
      }
      return p->items[static_cast<std::size_t>(t->index - 1)];
    }
  }
  throw Error("unreachable");
}

// Free variables and substitution.

namespace {

void CollectFree(const TermRef& t, std::set<std::string>& bound,
                 std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::kVar:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case Term::Kind::kConst:
      break;
    case Term::Kind::kApp:
      CollectFree(t->fun, bound, out);
      CollectFree(t->arg, bound, out);
      break;
    case Term::Kind::kLam: {
      std::set<std::string> inner = bound;
      for (const auto& [x, ty] : PatternVars(t->pat)) inner.insert(x);
      CollectFree(t->body, inner, out);
      break;
    }
    case Term::Kind::kTuple:
      for (const auto& i : t->items) CollectFree(i, bound, out);
      break;
    case Term::Kind::kProj:
      CollectFree(t->body, bound, out);
      break;
  }
}

std::set<std::string> FreeSet(const TermRef& t) {
  std::set<std::string> bound, out;
  CollectFree(t, bound, out);
  return out;
}

std::string FreshName(const std::string& base,
                      const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

Pattern RenamePattern(const Pattern& p,
                      const std::map<std::string, std::string>& ren) {
  if (!p.tuple) {
    auto it = ren.find(p.var);
    return VarPattern(it == ren.end() ? p.var : it->second, p.type);
  }
  std::vector<Pattern> items;
  for (const auto& i : p.items) items.push_back(RenamePattern(i, ren));
  return TuplePattern(std::move(items));
}

}  // namespace

std::vector<std::string> FreeVars(const TermRef& t) {
  auto s = FreeSet(t);
  return {s.begin(), s.end()};
}

TermRef Substitute(const TermRef& t,
                   const std::map<std::string, TermRef>& sub) {
  if (sub.empty()) return t;
  switch (t->kind) {
    case Term::Kind::kVar: {
      auto it = sub.find(t->name);
      return it == sub.end() ? t : it->second;
    }
    case Term::Kind::kConst:
      return t;
    case Term::Kind::kApp:
      return App(Substitute(t->fun, sub), Substitute(t->arg, sub));
    case Term::Kind::kTuple: {
      std::vector<TermRef> items;
      for (const auto& i : t->items) items.push_back(Substitute(i, sub));
      return Tuple(std::move(items));
    }
    case Term::Kind::kProj:
      return Proj(t->index, Substitute(t->body, sub));
    case Term::Kind::kLam: {
      std::map<std::string, TermRef> inner = sub;
      auto vars = PatternVars(t->pat);
      for (const auto& [x, ty] : vars) inner.erase(x);
      std::set<std::string> range;
      for (const auto& [x, n] : inner) {
        for (const auto& y : FreeSet(n)) range.insert(y);
      }
      std::map<std::string, std::string> ren;
      std::set<std::string> avoid = range;
      for (const auto& y : FreeSet(t->body)) avoid.insert(y);
      for (const auto& [x, n] : inner) avoid.insert(x);
      for (const auto& [x, ty] : vars) avoid.insert(x);
      for (const auto& [x, ty] : vars) {
        if (range.count(x)) {
          std::string fresh = FreshName(x, avoid);
          avoid.insert(fresh);
          ren[x] = fresh;
          inner[x] = Var(fresh);
        }
      }
      return Lam(RenamePattern(t->pat, ren), Substitute(t->body, inner));
    }
  }
  return t;
}

// Syntactic normalization.

namespace {

bool Matches(const Pattern& p, const TermRef& n,
             std::map<std::string, TermRef>& sub) {
  if (!p.tuple) {
    sub[p.var] = n;
    return true;
  }
  if (n->kind != Term::Kind::kTuple || n->items.size() != p.items.size())
    return false;
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    if (!Matches(p.items[i], n->items[i], sub)) return false;
  }
  return true;
}

std::map<std::string, TermRef> Destructure(const Pattern& p, const TermRef& n) {
  std::map<std::string, TermRef> sub;
  if (!p.tuple) {
    sub[p.var] = n;
    return sub;
  }
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    TermRef part = n->kind == Term::Kind::kTuple && n->items.size() == p.items.size()
                       ? n->items[i]
                       : Proj(static_cast<int>(i + 1), n);
    for (auto& [x, m] : Destructure(p.items[i], part)) sub[x] = m;
  }
  return sub;
}

// One normal-order step, or null.
TermRef StepNormal(const TermRef& t) {
  switch (t->kind) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return nullptr;
    case Term::Kind::kApp: {
      if (t->fun->kind == Term::Kind::kLam) {
        std::map<std::string, TermRef> sub;
        if (Matches(t->fun->pat, t->arg, sub))
          return Substitute(t->fun->body, sub);
        // Surjective pairing for a pattern against a non-tuple argument.
        if (t->fun->pat.tuple) {
          return Substitute(t->fun->body, Destructure(t->fun->pat, t->arg));
        }
      }
      if (auto f = StepNormal(t->fun)) return App(f, t->arg);
      if (auto a = StepNormal(t->arg)) return App(t->fun, a);
      return nullptr;
    }
    case Term::Kind::kLam:
      if (auto b = StepNormal(t->body)) return Lam(t->pat, b);
      return nullptr;
    case Term::Kind::kTuple:
      for (std::size_t i = 0; i < t->items.size(); ++i) {
        if (auto s = StepNormal(t->items[i])) {
          auto items = t->items;
          items[i] = s;
          return Tuple(std::move(items));
        }
      }
      return nullptr;
    case Term::Kind::kProj:
      if (t->body->kind == Term::Kind::kTuple && t->index >= 1 &&
          t->index <= static_cast<int>(t->body->items.size()))
        return t->body->items[static_cast<std::size_t>(t->index - 1)];
      if (auto b = StepNormal(t->body)) return Proj(t->index, b);
      return nullptr;
  }
  return nullptr;
}

}  // namespace

NormalizeResult Normalize(const TermRef& t, std::size_t fuel) {
  NormalizeResult r;
  r.term = t;
  while (auto next = StepNormal(r.term)) {
    if (r.steps >= fuel) {
      r.fuel_exhausted = true;
      return r;
    }
    r.term = next;
    ++r.steps;
  }
  return r;
}

// Evaluation to long normal forms.

std::vector<TermRef> FlatComponents(const TermRef& t, const TypeRef& type) {
  if (type->kind != Type::Kind::kProduct) return {t};
  std::vector<TermRef> out;
  for (std::size_t i = 0; i < type->items.size(); ++i) {
    TermRef proj = t->kind == Term::Kind::kTuple && t->items.size() == type->items.size()
                       ? t->items[i]
                       : Proj(static_cast<int>(i + 1), t);
    for (auto& c : FlatComponents(proj, type->items[i])) out.push_back(c);
  }
  return out;
}

namespace {

struct Sem;
using SemRef = std::shared_ptr<const Sem>;
using SemVec = std::vector<SemRef>;

struct Sem {
  TermRef neutral;
  std::function<SemVec(const SemVec&)> fn;
};

class Nbe {
 public:
  SemVec Eval(const TermRef& t, const std::map<std::string, SemVec>& env,
              const Context& tctx) {
    switch (t->kind) {
      case Term::Kind::kVar: {
        auto it = env.find(t->name);
        if (it == env.end()) throw Error("unbound variable " + t->name);
        return it->second;
      }
      case Term::Kind::kConst: {
        auto s = std::make_shared<Sem>();
        s->neutral = t;
        return {s};
      }
      case Term::Kind::kTuple: {
        SemVec out;
        for (const auto& i : t->items) {
          for (auto& v : Eval(i, env, tctx)) out.push_back(std::move(v));
        }
        return out;
      }
      case Term::Kind::kProj: {
        TypeRef p = TypeOf(tctx, t->body);
        SemVec all = Eval(t->body, env, tctx);
        std::size_t off = 0;
        for (int i = 0; i + 1 < t->index; ++i)
          off += Flatten(p->items[static_cast<std::size_t>(i)]).size();
        std::size_t n =
            Flatten(p->items[static_cast<std::size_t>(t->index - 1)]).size();
        return SemVec(all.begin() + static_cast<long>(off),
                      all.begin() + static_cast<long>(off + n));
      }
      case Term::Kind::kApp: {
        SemVec f = Eval(t->fun, env, tctx);
        if (f.size() != 1 || !f[0]->fn)
          throw Error("applying a non-function " + PrintTerm(t->fun));
        return f[0]->fn(Eval(t->arg, env, tctx));
      }
      case Term::Kind::kLam: {
        auto s = std::make_shared<Sem>();
        Pattern p = t->pat;
        TermRef body = t->body;
        s->fn = [this, p, body, env, tctx](const SemVec& args) {
          std::map<std::string, SemVec> env2 = env;
          Context tctx2 = tctx;
          std::size_t off = 0;
          Bind(p, args, off, env2, tctx2);
          if (off != args.size()) throw Error("pattern arity mismatch");
          return Eval(body, env2, tctx2);
        };
        return {s};
      }
    }
    return {};
  }

  TermRef Reify(const TypeRef& ty, const SemVec& v) {
    auto flat = Flatten(ty);
    if (flat.size() != v.size()) throw Error("value does not match its type");
    std::vector<TermRef> items;
    for (std::size_t i = 0; i < flat.size(); ++i)
      items.push_back(ReifyAtomic(flat[i], v[i]));
    return TupleOrSingle(std::move(items));
  }

  SemVec ReflectAll(const TypeRef& ty, const TermRef& n) {
    auto flat = Flatten(ty);
    auto comps = FlatComponents(n, ty);
    SemVec out;
    for (std::size_t i = 0; i < flat.size(); ++i)
      out.push_back(ReflectAtomic(flat[i], comps[i]));
    return out;
  }

 private:
  void Bind(const Pattern& p, const SemVec& args, std::size_t& off,
            std::map<std::string, SemVec>& env, Context& tctx) {
    if (!p.tuple) {
      if (!p.type) throw Error("pattern variable " + p.var + " lacks a type");
      std::size_t n = Flatten(p.type).size();
      if (off + n > args.size()) throw Error("pattern arity mismatch");
      env[p.var] = SemVec(args.begin() + static_cast<long>(off),
                          args.begin() + static_cast<long>(off + n));
      tctx[p.var] = p.type;
      off += n;
      return;
    }
    for (const auto& i : p.items) Bind(i, args, off, env, tctx);
  }

  TermRef ReifyAtomic(const TypeRef& ty, const SemRef& s) {
    if (ty->kind != Type::Kind::kArrow) {
      if (!s->neutral) throw Error("function value at base type");
      return s->neutral;
    }
    auto flat = Flatten(ty->dom);
    std::vector<Pattern> pats;
    SemVec args;
    for (const auto& a : flat) {
      std::string x = fmt::format("%{}", counter_++);
      pats.push_back(VarPattern(x, a));
      args.push_back(ReflectAtomic(a, Var(x)));
    }
    Pattern p = pats.size() == 1 ? pats[0] : TuplePattern(std::move(pats));
    if (!s->fn) throw Error("base value at function type");
    return Lam(std::move(p), Reify(ty->cod, s->fn(args)));
  }

  SemRef ReflectAtomic(const TypeRef& ty, const TermRef& n) {
    auto s = std::make_shared<Sem>();
    if (ty->kind != Type::Kind::kArrow) {
      s->neutral = n;
      return s;
    }
    TypeRef dom = ty->dom, cod = ty->cod;
    s->fn = [this, dom, cod, n](const SemVec& args) {
      return ReflectAll(cod, App(n, Reify(dom, args)));
    };
    return s;
  }

  int counter_ = 0;
};

// Renames binders to %0, %1, ... in order of occurrence.
TermRef Canonical(const TermRef& t, std::map<std::string, std::string>& ren,
                  int& next) {
  switch (t->kind) {
    case Term::Kind::kVar: {
      auto it = ren.find(t->name);
      return it == ren.end() ? t : Var(it->second);
    }
    case Term::Kind::kConst:
      return t;
    case Term::Kind::kApp:
      return App(Canonical(t->fun, ren, next), Canonical(t->arg, ren, next));
    case Term::Kind::kTuple: {
      std::vector<TermRef> items;
      for (const auto& i : t->items) items.push_back(Canonical(i, ren, next));
      return Tuple(std::move(items));
    }
    case Term::Kind::kProj:
      return Proj(t->index, Canonical(t->body, ren, next));
    case Term::Kind::kLam: {
      auto inner = ren;
      std::map<std::string, std::string> local;
      for (const auto& [x, ty] : PatternVars(t->pat)) {
        local[x] = fmt::format("%{}", next++);
        inner[x] = local[x];
      }
      return Lam(RenamePattern(t->pat, local), Canonical(t->body, inner, next));
    }
  }
  return t;
}

}  // namespace

TermRef LongNormalForm(const Context& ctx, const TermRef& t,
                       const TypeRef& type) {
  Nbe nbe;
  std::map<std::string, SemVec> env;
  for (const auto& [x, ty] : ctx) env[x] = nbe.ReflectAll(ty, Var(x));
  std::map<std::string, std::string> ren;
  int next = 0;
  return Canonical(nbe.Reify(type, nbe.Eval(t, env, ctx)), ren, next);
}

bool BetaEtaEq(const Context& ctx, const TermRef& a, const TermRef& b,
               const TypeRef& type) {
  PrintOptions opts;
  opts.types = false;
  return PrintTerm(LongNormalForm(ctx, a, type), opts) ==
         PrintTerm(LongNormalForm(ctx, b, type), opts);
}

// Printing.

namespace {

std::string PrintTypeAt(const TypeRef& t, int prec) {
  switch (t->kind) {
    case Type::Kind::kBase:
      return t->name;
    case Type::Kind::kArrow: {
      std::string s = PrintTypeAt(t->dom, 1) + " -> " + PrintTypeAt(t->cod, 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case Type::Kind::kProduct: {
      if (t->items.empty()) return "1";
      if (t->items.size() == 1) return "(" + PrintTypeAt(t->items[0], 0) + ")";
      std::string s;
      for (std::size_t i = 0; i < t->items.size(); ++i) {
        if (i) s += " * ";
        s += PrintTypeAt(t->items[i], 2);
      }
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

std::string PrintPattern(const Pattern& p, const PrintOptions& opts) {
  if (!p.tuple) {
    if (opts.types && p.type) return "(" + p.var + ":" + PrintType(p.type) + ")";
    return p.var;
  }
  std::string s = "(";
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    if (i) s += ", ";
    Pattern item = p.items[i];
    if (!item.tuple && opts.types && item.type) {
      s += item.var + ":" + PrintType(item.type);
    } else {
      s += PrintPattern(item, opts);
    }
  }
  if (p.items.size() == 1) s += ",";
  return s + ")";
}

// prec 0: anything; 1: application head; 2: argument.
std::string PrintAt(const TermRef& t, int prec, const PrintOptions& opts) {
  switch (t->kind) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return t->name;
    case Term::Kind::kTuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t->items.size(); ++i) {
        if (i) s += ", ";
        s += PrintAt(t->items[i], 0, opts);
      }
      if (t->items.size() == 1) s += ",";
      return s + ")";
    }
    case Term::Kind::kProj: {
      std::string s = fmt::format("pi{} {}", t->index, PrintAt(t->body, 2, opts));
      return prec > 1 ? "(" + s + ")" : s;
    }
    case Term::Kind::kApp: {
      std::string s = PrintAt(t->fun, 1, opts) + " " + PrintAt(t->arg, 2, opts);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case Term::Kind::kLam: {
      std::string s = "\\" + PrintPattern(t->pat, opts) + "." +
                      PrintAt(t->body, 0, opts);
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string PrintType(const TypeRef& t) { return PrintTypeAt(t, 0); }

std::string PrintTerm(const TermRef& t, const PrintOptions& opts) {
  return PrintAt(t, 0, opts);
}

// Parsing.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  TermRef TermTop() {
    TermRef t = ParseTermExpr();
    Skip();
    if (pos_ != src_.size()) Fail("unexpected input");
    return t;
  }

  TypeRef TypeTop() {
    TypeRef t = ParseTypeExpr();
    Skip();
    if (pos_ != src_.size()) Fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) {
    throw Error(fmt::format("{} at offset {}", msg, pos_));
  }

  void Skip() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool Eat(std::string_view tok) {
    Skip();
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void Expect(std::string_view tok) {
    if (!Eat(tok)) Fail(fmt::format("expected '{}'", tok));
  }

  static bool IdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || (static_cast<unsigned char>(c) & 0x80);
  }

  bool PeekIdent() {
    Skip();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (src_.substr(pos_, 2) == "λ") return false;
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           (static_cast<unsigned char>(c) & 0x80);
  }

  std::string Ident() {
    Skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && IdentChar(src_[pos_])) ++pos_;
    if (start == pos_) Fail("expected identifier");
    return std::string(src_.substr(start, pos_ - start));
  }

  TypeRef ParseTypeExpr() {
    TypeRef left = ParseProduct();
    if (Eat("->")) return Arrow(left, ParseTypeExpr());
    return left;
  }

  TypeRef ParseProduct() {
    std::vector<TypeRef> items{ParseTypeAtom()};
    while (Eat("*")) items.push_back(ParseTypeAtom());
    if (items.size() == 1) return items[0];
    return Product(std::move(items));
  }

  TypeRef ParseTypeAtom() {
    if (Eat("(")) {
      TypeRef t = ParseTypeExpr();
      Expect(")");
      return t;
    }
    if (Eat("1")) return Product({});
    return Base(Ident());
  }

  Pattern ParsePattern() {
    if (Eat("(")) {
      if (Eat(")")) return TuplePattern({});
      std::vector<Pattern> items{ParsePattern()};
      bool tuple = false;
      while (Eat(",")) {
        tuple = true;
        Skip();
        if (pos_ < src_.size() && src_[pos_] == ')') break;
        items.push_back(ParsePattern());
      }
      Expect(")");
      if (!tuple) return items[0];
      return TuplePattern(std::move(items));
    }
    std::string x = Ident();
    TypeRef ty;
    if (Eat(":")) ty = ParseTypeExpr();
    return VarPattern(std::move(x), std::move(ty));
  }

  bool AtLambda() {
    Skip();
    return src_.substr(pos_, 1) == "\\" || src_.substr(pos_, 2) == "λ";
  }

  TermRef ParseTermExpr() {
    if (AtLambda()) {
      if (!Eat("\\")) Expect("λ");
      Pattern p = ParsePattern();
      Expect(".");
      return Lam(std::move(p), ParseTermExpr());
    }
    TermRef head = ParseAtom();
    while (true) {
      Skip();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (AtLambda()) {
        head = App(head, ParseTermExpr());
        break;
      }
      if (c == '(' || PeekIdent() || std::isdigit(static_cast<unsigned char>(c)) ||
          c == '-') {
        head = App(head, ParseAtom());
      } else {
        break;
      }
    }
    return head;
  }

  TermRef ParseAtom() {
    Skip();
    if (Eat("(")) {
      if (Eat(")")) return Tuple({});
      std::vector<TermRef> items{ParseTermExpr()};
      bool tuple = false;
      while (Eat(",")) {
        tuple = true;
        Skip();
        if (pos_ < src_.size() && src_[pos_] == ')') break;
        items.push_back(ParseTermExpr());
      }
      Expect(")");
      if (!tuple) return items[0];
      return Tuple(std::move(items));
    }
    if (pos_ < src_.size() &&
        (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
         src_[pos_] == '-')) {
      std::size_t start = pos_++;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      return Const(std::string(src_.substr(start, pos_ - start)));
    }
    std::string x = Ident();
    if (x == "true" || x == "false") return Const(x);
    if (x.size() > 2 && x.compare(0, 2, "pi") == 0 &&
        std::all_of(x.begin() + 2, x.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return Proj(std::stoi(x.substr(2)), ParseAtom());
    }
    return Var(std::move(x));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

TypeRef ParseType(std::string_view src) { return Parser(src).TypeTop(); }
TermRef ParseTerm(std::string_view src) { return Parser(src).TermTop(); }

// Generation.

std::size_t Size(const TermRef& t) {
  switch (t->kind) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return 1;
    case Term::Kind::kApp:
      return 1 + Size(t->fun) + Size(t->arg);
    case Term::Kind::kLam:
      return 1 + Size(t->body);
    case Term::Kind::kTuple: {
      std::size_t n = 1;
      for (const auto& i : t->items) n += Size(i);
      return n;
    }
    case Term::Kind::kProj:
      return 1 + Size(t->body);
  }
  return 1;
}

TypeRef RandomType(std::mt19937_64& rng, const GenOptions& opts, int depth) {
  auto pick = std::uniform_int_distribution<int>(0, 9)(rng);
  if (depth <= 0 || pick < 4) {
    return Base(opts.bases[std::uniform_int_distribution<std::size_t>(
        0, opts.bases.size() - 1)(rng)]);
  }
  if (pick < 8) {
    return Arrow(RandomType(rng, opts, depth - 1),
                 RandomType(rng, opts, depth - 1));
  }
  int n = std::uniform_int_distribution<int>(0, 3)(rng);
  if (n == 1) n = 2;
  std::vector<TypeRef> items;
  for (int i = 0; i < n; ++i) items.push_back(RandomType(rng, opts, depth - 1));
  return Product(std::move(items));
}

namespace {

class TermGen {
 public:
  TermGen(std::mt19937_64& rng, const GenOptions& opts)
      : rng_(rng), opts_(opts) {}

  TermRef Gen(std::vector<std::pair<std::string, TypeRef>>& ctx,
              const TypeRef& ty, int budget) {
    std::vector<std::size_t> exact;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (TypeEq(ctx[i].second, ty)) exact.push_back(i);
    }
    int r = Roll(100);
    if (!exact.empty() && (budget <= 1 || r < 30)) {
      return Var(ctx[exact[Pick(exact.size())]].first);
    }
    if (budget > 4 && r < 45) {
      // A redex or an application of a context function.
      std::vector<std::size_t> fns;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (ctx[i].second->kind == Type::Kind::kArrow &&
            TypeEq(ctx[i].second->cod, ty))
          fns.push_back(i);
      }
      if (!fns.empty() && Roll(2) == 0) {
        auto f = ctx[fns[Pick(fns.size())]];
        TermRef arg = Gen(ctx, f.second->dom, budget - 2);
        return App(Var(f.first), arg);
      }
      TypeRef x = RandomType(rng_, opts_, 1);
      int half = (budget - 1) / 2;
      TermRef fun = Gen(ctx, Arrow(x, ty), half);
      return App(fun, Gen(ctx, x, budget - 1 - half));
    }
    if (budget > 3 && r < 55) {
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        const TypeRef& ct = ctx[i].second;
        if (ct->kind != Type::Kind::kProduct) continue;
        for (std::size_t k = 0; k < ct->items.size(); ++k) {
          if (TypeEq(ct->items[k], ty))
            return Proj(static_cast<int>(k + 1), Var(ctx[i].first));
        }
      }
    }
    switch (ty->kind) {
      case Type::Kind::kArrow: {
        Pattern p = MakePattern(ty->dom);
        std::size_t mark = ctx.size();
        for (auto& v : PatternVars(p)) ctx.push_back(v);
        TermRef body = Gen(ctx, ty->cod, budget - 1);
        ctx.resize(mark);
        return Lam(std::move(p), body);
      }
      case Type::Kind::kProduct: {
        std::vector<TermRef> items;
        int share = std::max(1, (budget - 1) / std::max<int>(1, static_cast<int>(ty->items.size())));
        for (const auto& i : ty->items) items.push_back(Gen(ctx, i, share));
        return Tuple(std::move(items));
      }
      case Type::Kind::kBase: {
        if (!exact.empty()) return Var(ctx[exact[Pick(exact.size())]].first);
        // Every base type has a variable in the generated context.
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          auto f = ctx[i];
          if (f.second->kind == Type::Kind::kArrow && TypeEq(f.second->cod, ty)) {
            TermRef arg = Gen(ctx, f.second->dom, budget - 2);
            return App(Var(f.first), arg);
          }
        }
        throw Error("uninhabited base type " + ty->name);
      }
    }
    throw Error("unreachable");
  }

 private:
  int Roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::size_t Pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  Pattern MakePattern(const TypeRef& dom) {
    if (dom->kind == Type::Kind::kProduct && Roll(3) != 0) {
      std::vector<Pattern> items;
      for (const auto& i : dom->items) items.push_back(MakePattern(i));
      return TuplePattern(std::move(items));
    }
    return VarPattern(fmt::format("x{}", counter_++), dom);
  }

  std::mt19937_64& rng_;
  const GenOptions& opts_;
  int counter_ = 0;
};

}  // namespace

Generated RandomTerm(std::mt19937_64& rng, const GenOptions& opts) {
  for (int attempt = 0;; ++attempt) {
    Generated g;
    std::vector<std::pair<std::string, TypeRef>> ctx;
    for (const auto& b : opts.bases)
      ctx.emplace_back(fmt::format("{}0", std::string(1, static_cast<char>(std::tolower(b[0])))), Base(b));
    int extra = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < extra; ++i)
      ctx.emplace_back(fmt::format("g{}", i), RandomType(rng, opts, opts.type_depth));
    g.type = RandomType(rng, opts, opts.type_depth);
    TermGen gen(rng, opts);
    int budget = std::uniform_int_distribution<int>(1, opts.max_size)(rng);
    g.term = gen.Gen(ctx, g.type, budget);
    for (const auto& [x, t] : ctx) g.ctx[x] = t;
    if (static_cast<int>(Size(g.term)) <= opts.max_size || attempt > 50)
      return g;
  }
}

}  // namespace lam
}  // namespace fmc
