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

#include <fmt/core.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

#include "fmc/parser.h"

namespace fmc {

TypeError::TypeError(Kind kind, const std::string& message,
                     std::string expected, std::string found,
                     const TermNode* node)
    : std::runtime_error(message),
      kind_(kind),
      expected_(std::move(expected)),
      found_(std::move(found)),
      node_(node) {}

void Signature::AddConst(const std::string& name, TypeRef type) {
  consts_[name] = std::move(type);
}

const TypeRef* Signature::ConstType(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

TypeRef Signature::LiteralType(const ConstSym& sym) const {
  return BaseType(sym.kind == ConstSym::Kind::kBool ? "B" : "Z");
}

void Signature::Validate(const TypeRef& t) const {
  for (const auto& name : BaseNames(t)) {
    if (!HasBase(name)) {
      throw TypeError(TypeError::Kind::kMismatch,
                      fmt::format("undeclared base type {}", name));
    }
  }
}

const Signature& Signature::Default() {
  static const Signature sig = [] {
    Signature s;
    s.AddBase("Z");
    s.AddBase("B");
    s.AddConst("+", ParseType("Z Z > Z"));
    s.AddConst("mul", ParseType("Z Z > Z"));
    s.AddConst("if", ParseType("B 'a 'a > 'a"));
    return s;
  }();
  return sig;
}

Signature Signature::Parse(std::string_view src) {
  Signature s;
  s.AddBase("Z");
  s.AddBase("B");
  std::istringstream in{std::string(src)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string kw;
    if (!(words >> kw)) continue;
    if (kw == "base") {
      std::string name;
      if (!(words >> name)) {
        throw ParseError("missing base type name", SourceSpan{0, 0, lineno, 1},
                         {"identifier"});
      }
      s.AddBase(name);
    } else if (kw == "const") {
      auto colon = line.find(':');
      std::string name;
      words >> name;
      if (colon == std::string::npos || name.empty()) {
        throw ParseError("expected `const name : type`",
                         SourceSpan{0, 0, lineno, 1}, {"':'"});
      }
      s.AddConst(name, ParseType(std::string_view(line).substr(colon + 1)));
    } else {
      throw ParseError(fmt::format("unknown declaration '{}'", kw),
                       SourceSpan{0, 0, lineno, 1}, {"base", "const"});
    }
  }
  return s;
}

// Unifier.

namespace {

void MaxIds(const TypeRef& t, int& var, int& row) {
  if (t->kind == SimpleType::Kind::kVar) var = std::max(var, t->var);
  if (t->kind != SimpleType::Kind::kArrow) return;
  for (const MemoryType* m : {&t->in, &t->out}) {
    for (const auto& [l, v] : m->vecs) {
      row = std::max(row, v.row);
      for (const auto& i : v.items) MaxIds(i, var, row);
    }
  }
}

}  // namespace

void Unifier::Reserve(const TypeRef& t) {
  int var = -1, row = -1;
  MaxIds(t, var, row);
  next_var_ = std::max(next_var_, var + 1);
  next_row_ = std::max(next_row_, row + 1);
  std::function<void(const TypeRef&)> frames = [&](const TypeRef& s) {
    if (s->kind != SimpleType::Kind::kArrow) return;
    next_frame_ = std::max(next_frame_, s->frame + 1);
    for (const MemoryType* m : {&s->in, &s->out}) {
      for (const auto& [l, v] : m->vecs) {
        for (const auto& i : v.items) frames(i);
      }
    }
  };
  frames(t);
}

int Unifier::FrameRow(int f, const Location& l) {
  auto [it, fresh] = frame_rows_.emplace(std::make_pair(f, l), 0);
  if (fresh) it->second = FreshRow();
  return it->second;
}

TypeRef Unifier::Shallow(const TypeRef& t) const {
  TypeRef cur = t;
  while (cur->kind == SimpleType::Kind::kVar) {
    auto it = sub_.vars.find(cur->var);
    if (it == sub_.vars.end()) break;
    cur = it->second;
  }
  return cur;
}

TypeVector Unifier::Expand(const TypeVector& v) const {
  TypeVector cur = v;
  while (cur.has_row()) {
    auto it = sub_.rows.find(cur.row);
    if (it == sub_.rows.end()) break;
    TypeVector next = it->second;
    next.items.insert(next.items.end(), cur.items.begin(), cur.items.end());
    cur = std::move(next);
  }
  return cur;
}

TypeVector Unifier::ZonkVector(const TypeVector& v) const {
  TypeVector e = Expand(v);
  for (auto& i : e.items) i = Zonk(i);
  return e;
}

TypeRef Unifier::Zonk(const TypeRef& t) const {
  TypeRef s = Shallow(t);
  if (s->kind != SimpleType::Kind::kArrow) return s;
  MemoryType in, out;
  for (const auto& [l, v] : s->in.vecs) in.vecs[l] = ZonkVector(v);
  for (const auto& [l, v] : s->out.vecs) out.vecs[l] = ZonkVector(v);
  if (s->frame >= 0) {
    for (auto it = frame_rows_.begin(); it != frame_rows_.end(); ++it) {
      if (it->first.first != s->frame) continue;
      const Location& l = it->first.second;
      if (in.vecs.count(l) || out.vecs.count(l)) continue;
      TypeVector v;
      v.row = it->second;
      v = ZonkVector(v);
      if (v.row == it->second && v.items.empty()) continue;
      in.vecs[l] = v;
      out.vecs[l] = v;
    }
  }
  TypeRef z = Arrow(std::move(in), std::move(out));
  std::const_pointer_cast<SimpleType>(z)->frame = s->frame;
  return z;
}

std::vector<TypeVector> Unifier::FrameVectors(const TypeRef& s) const {
  std::vector<TypeVector> out;
  if (s->frame < 0) return out;
  for (const auto& [key, row] : frame_rows_) {
    if (key.first != s->frame) continue;
    if (s->in.vecs.count(key.second) || s->out.vecs.count(key.second)) continue;
    TypeVector v;
    v.row = row;
    out.push_back(v);
  }
  return out;
}

bool Unifier::OccursVar(int v, const TypeRef& t) const {
  TypeRef s = Shallow(t);
  if (s->kind == SimpleType::Kind::kVar) return s->var == v;
  if (s->kind != SimpleType::Kind::kArrow) return false;
  for (const MemoryType* m : {&s->in, &s->out}) {
    for (const auto& [l, vec] : m->vecs) {
      for (const auto& i : Expand(vec).items) {
        if (OccursVar(v, i)) return true;
      }
    }
  }
  for (const TypeVector& f : FrameVectors(s)) {
    for (const auto& i : Expand(f).items) {
      if (OccursVar(v, i)) return true;
    }
  }
  return false;
}

bool Unifier::OccursRowIn(int r, const TypeVector& v) const {
  TypeVector e = Expand(v);
  if (e.row == r) return true;
  for (const auto& i : e.items) {
    if (OccursRow(r, i)) return true;
  }
  return false;
}

bool Unifier::OccursRow(int r, const TypeRef& t) const {
  TypeRef s = Shallow(t);
  if (s->kind != SimpleType::Kind::kArrow) return false;
  for (const MemoryType* m : {&s->in, &s->out}) {
    for (const auto& [l, vec] : m->vecs) {
      if (OccursRowIn(r, vec)) return true;
    }
  }
  for (const TypeVector& f : FrameVectors(s)) {
    if (OccursRowIn(r, f)) return true;
  }
  return false;
}

void Unifier::BindVar(int v, const TypeRef& t) {
  if (OccursVar(v, t)) {
    throw UnifyError(UnifyError::Kind::kOccurs,
                     fmt::format("type variable 't{} occurs in {}", v,
                                 PrintType(Zonk(t))));
  }
  sub_.vars[v] = t;
}

void Unifier::BindRow(int r, const TypeVector& v) {
  if (OccursRowIn(r, v)) {
    throw UnifyError(UnifyError::Kind::kOccurs,
                     fmt::format("row ..r{} occurs in its own binding", r));
  }
  sub_.rows[r] = v;
}

void Unifier::Unify(const TypeRef& a0, const TypeRef& b0) {
  TypeRef a = Shallow(a0);
  TypeRef b = Shallow(b0);
  if (a == b) return;
  if (a->kind == SimpleType::Kind::kVar) {
    if (b->kind == SimpleType::Kind::kVar && b->var == a->var) return;
    BindVar(a->var, b);
    return;
  }
  if (b->kind == SimpleType::Kind::kVar) {
    BindVar(b->var, a);
    return;
  }
  auto clash = [&] {
    throw UnifyError(UnifyError::Kind::kClash,
                     fmt::format("cannot unify {} with {}", PrintType(Zonk(a)),
                                 PrintType(Zonk(b))));
  };
  if (a->kind != b->kind) clash();
  if (a->kind == SimpleType::Kind::kBase) {
    if (a->name != b->name) clash();
    return;
  }
  std::set<Location> locs = a->in.locations();
  for (const auto& l : a->out.locations()) locs.insert(l);
  for (const auto& l : b->in.locations()) locs.insert(l);
  for (const auto& l : b->out.locations()) locs.insert(l);
  for (const auto& l : locs) {
    auto side = [&](const TypeRef& t) -> std::pair<TypeVector, TypeVector> {
      bool present = t->in.vecs.count(l) || t->out.vecs.count(l);
      if (!present) {
        TypeVector frame;
        if (t->frame >= 0) frame.row = FrameRow(t->frame, l);
        return {frame, frame};
      }
      return {t->in.at(l), t->out.at(l)};
    };
    auto [ai, ao] = side(a);
    auto [bi, bo] = side(b);
    try {
      UnifyVector(ai, bi);
      UnifyVector(ao, bo);
    } catch (const UnifyError& e) {
      if (e.kind == UnifyError::Kind::kOccurs) throw;
      clash();
    }
  }
}

void Unifier::UnifyVector(const TypeVector& a0, const TypeVector& b0) {
  TypeVector a = Expand(a0);
  TypeVector b = Expand(b0);
  while (!a.items.empty() && !b.items.empty()) {
    TypeRef x = a.items.back();
    TypeRef y = b.items.back();
    a.items.pop_back();
    b.items.pop_back();
    Unify(x, y);
    a = Expand(a);
    b = Expand(b);
  }
  auto clash = [&] {
    throw UnifyError(
        UnifyError::Kind::kClash,
        fmt::format("cannot unify vectors [{}] and [{}]",
                    PrintVector(ZonkVector(a0), false),
                    PrintVector(ZonkVector(b0), false)));
  };
  if (a.items.empty() && b.items.empty()) {
    if (a.row == b.row) return;
    if (!a.has_row()) {
      BindRow(b.row, TypeVector{});
    } else if (!b.has_row()) {
      BindRow(a.row, TypeVector{});
    } else {
      TypeVector target;
      target.row = b.row;
      BindRow(a.row, target);
    }
    return;
  }
  if (a.items.empty()) {
    if (!a.has_row() || a.row == b.row) clash();
    BindRow(a.row, b);
    return;
  }
  if (!b.has_row() || b.row == a.row) clash();
  BindRow(b.row, a);
}

TypeRef Unifier::Instantiate(const TypeRef& t) {
  std::map<int, int> vars, rows;
  std::function<TypeRef(const TypeRef&)> go = [&](const TypeRef& s) -> TypeRef {
    if (s->kind == SimpleType::Kind::kVar) {
      auto [it, fresh] = vars.emplace(s->var, 0);
      if (fresh) it->second = FreshVar();
      return TypeVar(it->second);
    }
    if (s->kind != SimpleType::Kind::kArrow) return s;
    auto vec = [&](const TypeVector& v) {
      TypeVector out;
      if (v.has_row()) {
        auto [it, fresh] = rows.emplace(v.row, 0);
        if (fresh) it->second = FreshRow();
        out.row = it->second;
      }
      for (const auto& i : v.items) out.items.push_back(go(i));
      return out;
    };
    MemoryType in, out;
    for (const auto& [l, v] : s->in.vecs) in.vecs[l] = vec(v);
    for (const auto& [l, v] : s->out.vecs) out.vecs[l] = vec(v);
    return Arrow(std::move(in), std::move(out));
  };
  return go(t);
}

Substitution Unify(const TypeRef& a, const TypeRef& b) {
  Unifier u;
  u.Reserve(a);
  u.Reserve(b);
  u.Unify(a, b);
  return u.substitution();
}

// Inference.

namespace {

struct MutableDerivation {
  Term term;
  Context ctx;
  TypeRef type;
  struct Step {
    TermKind kind;
    TypeRef type;
    std::shared_ptr<MutableDerivation> arg;
  };
  std::vector<Step> steps;
};

class Inferencer {
 public:
  Inferencer(Unifier& u, const Signature& sig) : u_(u), sig_(sig) {}

  // Runs `t` symbolically. With `target` set, the initial stacks come from
  // its input side; otherwise every location starts as a fresh row.
  std::shared_ptr<MutableDerivation> Run(const Context& ctx, const Term& t,
                                         const TypeRef& target) {
    Machine m;
    m.target = target;
    auto d = std::make_shared<MutableDerivation>();
    d->term = t;
    d->ctx = ctx;
    Context local = ctx;
    for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
         n = n->cont.get()) {
      try {
        d->steps.push_back(Segment(m, local, n));
      } catch (TypeError& e) {
        if (!e.node()) e.set_node(n);
        throw;
      } catch (const UnifyError& e) {
        throw TypeError(e.kind == UnifyError::Kind::kOccurs
                            ? TypeError::Kind::kOccursCheck
                            : TypeError::Kind::kMismatch,
                        Where(n) + e.what(), "", "", n);
      }
    }
    MemoryType in, out;
    if (target) {
      std::set<Location> locs = target->out.locations();
      for (const auto& l : target->in.locations()) locs.insert(l);
      for (const auto& l : locs) Touch(m, l);
      for (const auto& [l, cur] : m.cur) {
        TypeVector expected = m.expected_out.count(l)
                                  ? m.expected_out.at(l)
                                  : target->out.at(l);
        try {
          u_.UnifyVector(cur, expected);
        } catch (const UnifyError&) {
          std::string want = PrintVector(u_.ZonkVector(expected), false);
          std::string got = PrintVector(u_.ZonkVector(cur), false);
          throw TypeError(
              TypeError::Kind::kMismatch,
              fmt::format("final stack at location {} is [{}], expected [{}]",
                          l.display(), got, want),
              want, got, LastNode(t));
        }
      }
      d->type = target;
    } else {
      for (const auto& [l, v] : m.input) in.vecs[l] = v;
      for (const auto& [l, v] : m.cur) out.vecs[l] = v;
      TypeRef ty = Arrow(std::move(in), std::move(out));
      std::const_pointer_cast<SimpleType>(ty)->frame = u_.FreshFrame();
      d->type = ty;
    }
    return d;
  }

 private:
  struct Machine {
    TypeRef target;
    std::map<Location, TypeVector> input;
    std::map<Location, TypeVector> cur;
    std::map<Location, TypeVector> expected_out;
  };

  static const TermNode* LastNode(const Term& t) {
    const TermNode* last = nullptr;
    for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
         n = n->cont.get())
      last = n;
    return last;
  }

  static std::string Where(const TermNode* n) {
    Term seg = WithCont(std::shared_ptr<const TermNode>(
                            std::shared_ptr<const TermNode>(), n),
                        Nil());
    return fmt::format("at `{}`: ", PrintTerm(seg));
  }

  void Touch(Machine& m, const Location& l) {
    if (m.cur.count(l)) return;
    if (m.target && (m.target->in.vecs.count(l) || m.target->out.vecs.count(l))) {
      m.input[l] = m.target->in.at(l);
      m.cur[l] = m.target->in.at(l);
      return;
    }
    TypeVector v;
    if (!m.target || m.target->frame >= 0) v.row = u_.FreshRow();
    m.input[l] = v;
    m.cur[l] = v;
    if (m.target) m.expected_out[l] = v;
  }

  TypeRef PopType(Machine& m, const Location& l, const TermNode* n) {
    Touch(m, l);
    TypeVector v = u_.Expand(m.cur[l]);
    if (!v.items.empty()) {
      TypeRef t = v.items.back();
      v.items.pop_back();
      m.cur[l] = v;
      return t;
    }
    if (v.has_row()) {
      TypeRef a = TypeVar(u_.FreshVar());
      TypeVector rest;
      rest.row = u_.FreshRow();
      TypeVector bound = rest;
      bound.items.push_back(a);
      u_.BindRow(v.row, bound);
      m.cur[l] = rest;
      return a;
    }
    throw TypeError(TypeError::Kind::kPopOnEmpty,
                    Where(n) + fmt::format("pop on empty stack at location {}",
                                           l.display()),
                    "a value", "nothing", n);
  }

  void Call(Machine& m, const TypeRef& callee, const TermNode* n) {
    TypeRef f = u_.Shallow(callee);
    std::set<Location> locs = f->in.locations();
    for (const auto& l : f->out.locations()) locs.insert(l);
    for (const auto& l : locs) {
      for (const TypeVector* side : {&f->in.at(l), &f->out.at(l)}) {
        TypeVector e = u_.Expand(*side);
        if (e.has_row()) u_.BindRow(e.row, TypeVector{});
      }
    }
    for (const auto& l : locs) {
      TypeVector in = u_.Expand(f->in.at(l));
      for (auto it = in.items.rbegin(); it != in.items.rend(); ++it) {
        TypeRef got = PopType(m, l, n);
        try {
          u_.Unify(*it, got);
        } catch (const UnifyError& e) {
          if (e.kind == UnifyError::Kind::kOccurs) throw;
          std::string want = PrintType(u_.Zonk(*it));
          std::string found = PrintType(u_.Zonk(got));
          throw TypeError(TypeError::Kind::kMismatch,
                          Where(n) + fmt::format("expected {} on location {}, "
                                                 "found {}",
                                                 want, l.display(), found),
                          want, found, n);
        }
      }
    }
    for (const auto& l : locs) {
      Touch(m, l);
      TypeVector out = u_.Expand(f->out.at(l));
      TypeVector& cur = m.cur[l];
      for (const auto& i : out.items) cur.items.push_back(i);
    }
  }

  std::pair<TypeRef, std::shared_ptr<MutableDerivation>> ArgType(
      const Context& ctx, const Term& arg) {
    if (arg->kind == TermKind::kVar && arg->cont->kind == TermKind::kNil) {
      auto it = ctx.find(arg->var);
      if (it == ctx.end()) {
        throw TypeError(TypeError::Kind::kUnboundVariable,
                        fmt::format("unbound variable {}", arg->var), "", "",
                        arg.get());
      }
      return {it->second, nullptr};
    }
    if (arg->kind == TermKind::kConst && arg->sym.is_literal() &&
        arg->cont->kind == TermKind::kNil) {
      return {sig_.LiteralType(arg->sym), nullptr};
    }
    auto d = Run(ctx, arg, nullptr);
    return {d->type, d};
  }

  MutableDerivation::Step Segment(Machine& m, Context& ctx,
                                  const TermNode* n) {
    MutableDerivation::Step step{n->kind, nullptr, nullptr};
    switch (n->kind) {
      case TermKind::kPop: {
        TypeRef t = PopType(m, n->loc, n);
        if (n->annot) {
          try {
            u_.Unify(n->annot, t);
          } catch (const UnifyError&) {
            std::string want = PrintType(u_.Zonk(n->annot));
            std::string found = PrintType(u_.Zonk(t));
            throw TypeError(TypeError::Kind::kMismatch,
                            Where(n) + fmt::format("binder annotated {} but "
                                                   "the stack holds {}",
                                                   want, found),
                            want, found, n);
          }
        }
        ctx[n->var] = t;
        step.type = t;
        return step;
      }
      case TermKind::kPush: {
        Touch(m, n->loc);
        auto [t, d] = ArgType(ctx, n->arg);
        m.cur[n->loc].items.push_back(t);
        step.type = t;
        step.arg = d;
        return step;
      }
      case TermKind::kVar: {
        auto it = ctx.find(n->var);
        if (it == ctx.end()) {
          throw TypeError(TypeError::Kind::kUnboundVariable,
                          Where(n) + fmt::format("unbound variable {}", n->var),
                          "", "", n);
        }
        TypeRef f = u_.Shallow(it->second);
        if (f->kind == SimpleType::Kind::kVar) {
          u_.BindVar(f->var, UnitArrow());
          f = u_.Shallow(f);
        }
        if (f->kind != SimpleType::Kind::kArrow) {
          throw TypeError(TypeError::Kind::kNotCallable,
                          Where(n) + fmt::format("variable {} of base type {} "
                                                 "cannot be run",
                                                 n->var, PrintType(f)),
                          "an implication", PrintType(f), n);
        }
        Call(m, f, n);
        step.type = f;
        return step;
      }
      case TermKind::kConst: {
        if (n->sym.is_literal()) {
          Touch(m, Location());
          TypeRef t = sig_.LiteralType(n->sym);
          m.cur[Location()].items.push_back(t);
          step.type = MainArrow({}, {t});
          return step;
        }
        const TypeRef* sig_type = sig_.ConstType(n->sym.name);
        if (!sig_type) {
          throw TypeError(TypeError::Kind::kUnknownConstant,
                          Where(n) + fmt::format("constant {} has no declared "
                                                 "type",
                                                 n->sym.name),
                          "", "", n);
        }
        TypeRef t = u_.Instantiate(*sig_type);
        int declared_in = 0;
        for (const auto& [l, v] : t->in.vecs)
          declared_in += static_cast<int>(v.items.size());
        if (declared_in != n->sym.arity_in) {
          throw TypeError(TypeError::Kind::kArityMismatch,
                          Where(n) + fmt::format("constant {} declared with "
                                                 "{} inputs, arity is {}",
                                                 n->sym.name, declared_in,
                                                 n->sym.arity_in),
                          "", "", n);
        }
        Call(m, t, n);
        step.type = t;
        return step;
      }
      case TermKind::kNil:
        break;
    }
    return step;
  }

  Unifier& u_;
  const Signature& sig_;
};

TypeVector GroundVector(const TypeVector& v) {
  TypeVector out;
  for (const auto& i : v.items) out.items.push_back(Ground(i));
  return out;
}

DerivRef Finish(const Unifier& u, const MutableDerivation& d, bool ground) {
  auto fix = [&](const TypeRef& t) {
    TypeRef z = u.Zonk(t);
    return ground ? Ground(z) : z;
  };
  auto out = std::make_shared<Derivation>();
  out->term = d.term;
  for (const auto& [x, t] : d.ctx) out->ctx[x] = fix(t);
  out->type = fix(d.type);
  for (const auto& s : d.steps) {
    DerivStep step;
    step.kind = s.kind;
    if (s.type) step.type = fix(s.type);
    if (s.arg) step.arg = Finish(u, *s.arg, ground);
    out->steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace

TypeRef Ground(const TypeRef& t) {
  switch (t->kind) {
    case SimpleType::Kind::kBase:
      return t;
    case SimpleType::Kind::kVar:
      return UnitArrow();
    case SimpleType::Kind::kArrow: {
      MemoryType in, out;
      for (const auto& [l, v] : t->in.vecs) in.vecs[l] = GroundVector(v);
      for (const auto& [l, v] : t->out.vecs) out.vecs[l] = GroundVector(v);
      return Normalize(Arrow(std::move(in), std::move(out)));
    }
  }
  return t;
}

InferResult Infer(const Context& ctx, const Term& t, const Signature& sig) {
  Unifier u;
  for (const auto& [x, ty] : ctx) u.Reserve(ty);
  Inferencer inf(u, sig);
  auto d = inf.Run(ctx, t, nullptr);
  InferResult r;
  r.derivation = Finish(u, *d, false);
  r.type = r.derivation->type;
  return r;
}

TypeRef GroundScheme(const InferResult& r) { return Ground(r.type); }

DerivRef Check(const Context& ctx, const Term& t, const TypeRef& ty,
               const Signature& sig) {
  Unifier u;
  u.Reserve(ty);
  for (const auto& [x, cty] : ctx) u.Reserve(cty);
  if (ty->kind != SimpleType::Kind::kArrow) {
    auto d = std::make_shared<Derivation>();
    d->term = t;
    d->ctx = ctx;
    d->type = ty;
    TypeRef found;
    if (t->kind == TermKind::kVar && t->cont->kind == TermKind::kNil) {
      auto it = ctx.find(t->var);
      if (it == ctx.end()) {
        throw TypeError(TypeError::Kind::kUnboundVariable,
                        fmt::format("unbound variable {}", t->var), "", "",
                        t.get());
      }
      found = it->second;
    } else if (t->kind == TermKind::kConst && t->sym.is_literal() &&
               t->cont->kind == TermKind::kNil) {
      found = sig.LiteralType(t->sym);
    } else {
      throw TypeError(TypeError::Kind::kNotAnImplication,
                      fmt::format("only a variable or literal has type {}",
                                  PrintType(ty)),
                      PrintType(ty), "a compound term", t.get());
    }
    try {
      u.Unify(ty, found);
    } catch (const UnifyError&) {
      throw TypeError(TypeError::Kind::kMismatch,
                      fmt::format("expected {}, found {}", PrintType(ty),
                                  PrintType(found)),
                      PrintType(ty), PrintType(found), t.get());
    }
    DerivStep step;
    step.kind = TermKind::kVar;
    step.type = Ground(u.Zonk(found));
    d->steps.push_back(step);
    return d;
  }
  Inferencer inf(u, sig);
  auto d = inf.Run(ctx, t, ty);
  return Finish(u, *d, true);
}

bool Typechecks(const Context& ctx, const Term& t, const TypeRef& ty,
                const Signature& sig) {
  try {
    Check(ctx, t, ty, sig);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace fmc
