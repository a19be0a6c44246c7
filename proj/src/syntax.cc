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

#include "fmc/syntax.h"

#include <fmt/core.h>

#include <cctype>
#include <map>
#include <stdexcept>
#include <utility>

namespace fmc {

ConstSym ConstSym::Int(std::int64_t v) {
  ConstSym s;
  s.kind = Kind::kInt;
  s.name = std::to_string(v);
  s.value = v;
  s.arity_in = 0;
  s.arity_out = 1;
  return s;
}

ConstSym ConstSym::Bool(bool b) {
  ConstSym s;
  s.kind = Kind::kBool;
  s.name = b ? "true" : "false";
  s.value = b ? 1 : 0;
  s.arity_in = 0;
  s.arity_out = 1;
  return s;
}

ConstSym ConstSym::Op(std::string name, int in, int out) {
  ConstSym s;
  s.kind = Kind::kOp;
  s.name = std::move(name);
  s.arity_in = in;
  s.arity_out = out;
  return s;
}

std::optional<ConstSym> BuiltinOperator(const std::string& name) {
  if (name == "+") return ConstSym::Op("+", 2, 1);
  if (name == "mul") return ConstSym::Op("mul", 2, 1);
  if (name == "if") return ConstSym::Op("if", 3, 1);
  return std::nullopt;
}

namespace {

const Term& NilSingleton() {
  static const Term nil = std::make_shared<TermNode>();
  return nil;
}

Term OrNil(Term t) { return t ? std::move(t) : NilSingleton(); }

}  // namespace

Term Nil() { return NilSingleton(); }

Term Var(std::string x, Term cont) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::kVar;
  n->var = std::move(x);
  n->cont = OrNil(std::move(cont));
  return n;
}

Term Push(Term arg, Location loc, Term cont) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::kPush;
  n->arg = OrNil(std::move(arg));
  n->loc = std::move(loc);
  n->cont = OrNil(std::move(cont));
  return n;
}

Term Pop(Location loc, std::string x, Term cont, TypeRef annot) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::kPop;
  n->loc = std::move(loc);
  n->var = std::move(x);
  n->cont = OrNil(std::move(cont));
  n->annot = std::move(annot);
  return n;
}

Term Const(ConstSym sym, Term cont) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::kConst;
  n->sym = std::move(sym);
  n->cont = OrNil(std::move(cont));
  return n;
}

Term WithCont(const Term& t, Term cont) {
  switch (t->kind) {
    case TermKind::kNil:
      return OrNil(std::move(cont));
    case TermKind::kVar:
      return Var(t->var, std::move(cont));
    case TermKind::kPush:
      return Push(t->arg, t->loc, std::move(cont));
    case TermKind::kPop:
      return Pop(t->loc, t->var, std::move(cont), t->annot);
    case TermKind::kConst:
      return Const(t->sym, std::move(cont));
  }
  return t;
}

namespace {

void CollectFree(const Term& t, std::vector<std::string>& bound,
                 VarSet& out) {
  const TermNode* n = t.get();
  std::size_t pushed = 0;
  while (n->kind != TermKind::kNil) {
    switch (n->kind) {
      case TermKind::kVar: {
        bool is_bound = false;
        for (const auto& b : bound) {
          if (b == n->var) {
            is_bound = true;
            break;
          }
        }
        if (!is_bound) out.insert(n->var);
        break;
      }
      case TermKind::kPush:
        CollectFree(n->arg, bound, out);
        break;
      case TermKind::kPop:
        bound.push_back(n->var);
        ++pushed;
        break;
      default:
        break;
    }
    n = n->cont.get();
  }
  bound.resize(bound.size() - pushed);
}

}  // namespace

VarSet FreeVars(const Term& t) {
  VarSet out;
  std::vector<std::string> bound;
  CollectFree(t, bound, out);
  return out;
}

bool IsClosed(const Term& t) { return FreeVars(t).empty(); }

bool OccursFree(const std::string& x, const Term& t) {
  for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
       n = n->cont.get()) {
    if (n->kind == TermKind::kVar && n->var == x) return true;
    if (n->kind == TermKind::kPush && OccursFree(x, n->arg)) return true;
    if (n->kind == TermKind::kPop && n->var == x) return false;
  }
  return false;
}

std::string Fresh(const std::string& base, const VarSet& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty()) stem = "v";
  if (!avoid.count(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

Term Rename(const Term& body, const std::string& from, const std::string& to);

Term ComposeImpl(const Term& n, const Term& m, const VarSet& fv_m) {
  switch (n->kind) {
    case TermKind::kNil:
      return m;
    case TermKind::kVar:
      return Var(n->var, ComposeImpl(n->cont, m, fv_m));
    case TermKind::kPush:
      return Push(n->arg, n->loc, ComposeImpl(n->cont, m, fv_m));
    case TermKind::kConst:
      return Const(n->sym, ComposeImpl(n->cont, m, fv_m));
    case TermKind::kPop: {
      if (!fv_m.count(n->var)) {
        return Pop(n->loc, n->var, ComposeImpl(n->cont, m, fv_m), n->annot);
      }
      VarSet avoid = fv_m;
      VarSet fv_c = FreeVars(n->cont);
      avoid.insert(fv_c.begin(), fv_c.end());
      std::string y = Fresh(n->var, avoid);
      Term renamed = Rename(n->cont, n->var, y);
      return Pop(n->loc, y, ComposeImpl(renamed, m, fv_m), n->annot);
    }
  }
  return n;
}

class Substituter {
 public:
  Substituter(const Term& p, std::string x)
      : p_(p), x_(std::move(x)), fv_p_(FreeVars(p)) {}

  Term Run(const Term& m) {
    switch (m->kind) {
      case TermKind::kNil:
        return m;
      case TermKind::kVar: {
        Term rest = Run(m->cont);
        if (m->var == x_) return ComposeImpl(p_, rest, FreeVars(rest));
        if (rest == m->cont) return m;
        return Var(m->var, rest);
      }
      case TermKind::kPush: {
        Term arg = Run(m->arg);
        Term rest = Run(m->cont);
        if (arg == m->arg && rest == m->cont) return m;
        return Push(arg, m->loc, rest);
      }
      case TermKind::kConst: {
        Term rest = Run(m->cont);
        if (rest == m->cont) return m;
        return Const(m->sym, rest);
      }
      case TermKind::kPop: {
        if (m->var == x_) return m;
        if (!fv_p_.count(m->var)) {
          Term rest = Run(m->cont);
          if (rest == m->cont) return m;
          return Pop(m->loc, m->var, rest, m->annot);
        }
        if (!OccursFree(x_, m->cont)) return m;
        VarSet avoid = fv_p_;
        VarSet fv_c = FreeVars(m->cont);
        avoid.insert(fv_c.begin(), fv_c.end());
        avoid.insert(x_);
        std::string y = Fresh(m->var, avoid);
        Term renamed = Rename(m->cont, m->var, y);
        return Pop(m->loc, y, Run(renamed), m->annot);
      }
    }
    return m;
  }

 private:
  Term p_;
  std::string x_;
  VarSet fv_p_;
};

Term Rename(const Term& body, const std::string& from, const std::string& to) {
  Substituter s(Var(to), from);
  return s.Run(body);
}

}  // namespace

Term Substitute(const Term& n, const std::string& x, const Term& m) {
  Substituter s(n, x);
  return s.Run(m);
}

Term Compose(const Term& n, const Term& m) {
  if (n->kind == TermKind::kNil) return m;
  if (m->kind == TermKind::kNil) return n;
  return ComposeImpl(n, m, FreeVars(m));
}

Term ComposeAll(const std::vector<Term>& terms) {
  Term acc = Nil();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    acc = Compose(*it, acc);
  }
  return acc;
}

namespace {

int Lookup(const std::vector<std::string>& env, const std::string& x) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == x) return static_cast<int>(i);
  }
  return -1;
}

bool AlphaEqImpl(const TermNode* a, const TermNode* b,
                 std::vector<std::string>& ea, std::vector<std::string>& eb) {
  std::size_t pushed = 0;
  bool result = true;
  while (true) {
    if (a->kind != b->kind) {
      result = false;
      break;
    }
    if (a->kind == TermKind::kNil) break;
    switch (a->kind) {
      case TermKind::kVar: {
        int la = Lookup(ea, a->var);
        int lb = Lookup(eb, b->var);
        if (la != lb || (la < 0 && a->var != b->var)) result = false;
        break;
      }
      case TermKind::kPush:
        if (a->loc != b->loc || !AlphaEqImpl(a->arg.get(), b->arg.get(), ea, eb))
          result = false;
        break;
      case TermKind::kPop:
        if (a->loc != b->loc) {
          result = false;
        } else {
          ea.push_back(a->var);
          eb.push_back(b->var);
          ++pushed;
        }
        break;
      case TermKind::kConst:
        if (!(a->sym == b->sym)) result = false;
        break;
      default:
        break;
    }
    if (!result) break;
    a = a->cont.get();
    b = b->cont.get();
  }
  ea.resize(ea.size() - pushed);
  eb.resize(eb.size() - pushed);
  return result;
}

void KeyImpl(const TermNode* n, std::vector<std::string>& env,
             std::string& out) {
  std::size_t pushed = 0;
  while (n->kind != TermKind::kNil) {
    switch (n->kind) {
      case TermKind::kVar: {
        int l = Lookup(env, n->var);
        if (l >= 0) {
          out += '#';
          out += std::to_string(l);
        } else {
          out += n->var;
        }
        break;
      }
      case TermKind::kPush:
        out += '[';
        KeyImpl(n->arg.get(), env, out);
        out += ']';
        out += n->loc.name();
        break;
      case TermKind::kPop:
        out += n->loc.name();
        out += "<>";
        env.push_back(n->var);
        ++pushed;
        break;
      case TermKind::kConst:
        out += n->sym.name;
        break;
      default:
        break;
    }
    out += '.';
    n = n->cont.get();
  }
  out += '*';
  env.resize(env.size() - pushed);
}

}  // namespace

bool AlphaEq(const Term& a, const Term& b) {
  std::vector<std::string> ea, eb;
  return AlphaEqImpl(a.get(), b.get(), ea, eb);
}

std::string CanonicalKey(const Term& t) {
  std::vector<std::string> env;
  std::string out;
  KeyImpl(t.get(), env, out);
  return out;
}

std::size_t Size(const Term& t) {
  std::size_t s = 0;
  for (const TermNode* n = t.get();; n = n->cont.get()) {
    ++s;
    if (n->kind == TermKind::kNil) break;
    if (n->kind == TermKind::kPush) s += Size(n->arg);
  }
  return s;
}

namespace {

void CollectLocations(const Term& t, std::set<Location>& out) {
  for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
       n = n->cont.get()) {
    if (n->kind == TermKind::kPush) {
      out.insert(n->loc);
      CollectLocations(n->arg, out);
    } else if (n->kind == TermKind::kPop) {
      out.insert(n->loc);
    }
  }
}

bool NoSequencing(const Term& t) {
  for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
       n = n->cont.get()) {
    if ((n->kind == TermKind::kVar || n->kind == TermKind::kConst) &&
        n->cont->kind != TermKind::kNil)
      return false;
    if (n->kind == TermKind::kPush && !NoSequencing(n->arg)) return false;
  }
  return true;
}

}  // namespace

std::set<Location> LocationsOf(const Term& t) {
  std::set<Location> out;
  CollectLocations(t, out);
  return out;
}

Fragment FragmentOf(const Term& t) {
  auto locs = LocationsOf(t);
  bool sequential = true;
  for (const auto& l : locs) {
    if (!l.is_main()) sequential = false;
  }
  if (sequential) return Fragment::kSequential;
  if (NoSequencing(t)) return Fragment::kPoly;
  return Fragment::kFull;
}

const char* FragmentName(Fragment f) {
  switch (f) {
    case Fragment::kSequential:
      return "sequential";
    case Fragment::kPoly:
      return "poly";
    case Fragment::kFull:
      return "full";
  }
  return "full";
}

VarSet HeadContext::BoundVars() const {
  VarSet out;
  for (const auto& f : frames) {
    if (f.kind == Frame::Kind::kPop) out.insert(f.var);
  }
  return out;
}

std::set<Location> HeadContext::Locations() const {
  std::set<Location> out;
  for (const auto& f : frames) out.insert(f.loc);
  return out;
}

VarSet HeadContext::FreeVarsOfArgs() const {
  VarSet out;
  for (const auto& f : frames) {
    if (f.kind == Frame::Kind::kPush) {
      VarSet fv = FreeVars(f.arg);
      out.insert(fv.begin(), fv.end());
    }
  }
  return out;
}

Term Plug(const HeadContext& h, const Term& m) {
  Term acc = m;
  for (auto it = h.frames.rbegin(); it != h.frames.rend(); ++it) {
    if (it->kind == Frame::Kind::kPush) {
      acc = Push(it->arg, it->loc, acc);
    } else {
      acc = Pop(it->loc, it->var, acc, it->annot);
    }
  }
  return acc;
}

std::optional<std::pair<HeadContext, Term>> Decompose(const Term& t,
                                                      std::size_t depth) {
  HeadContext h;
  Term cur = t;
  for (std::size_t i = 0; i < depth; ++i) {
    Frame f;
    if (cur->kind == TermKind::kPush) {
      f.kind = Frame::Kind::kPush;
      f.arg = cur->arg;
    } else if (cur->kind == TermKind::kPop) {
      f.kind = Frame::Kind::kPop;
      f.var = cur->var;
      f.annot = cur->annot;
    } else {
      return std::nullopt;
    }
    f.loc = cur->loc;
    h.frames.push_back(std::move(f));
    cur = cur->cont;
  }
  return std::make_pair(std::move(h), cur);
}

std::vector<Term> Segments(const Term& t) {
  std::vector<Term> out;
  for (Term n = t; n->kind != TermKind::kNil; n = n->cont) {
    out.push_back(WithCont(n, Nil()));
  }
  return out;
}

Term FromSegments(const std::vector<Term>& segs) {
  Term acc = Nil();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    acc = WithCont(*it, acc);
  }
  return acc;
}

}  // namespace fmc
