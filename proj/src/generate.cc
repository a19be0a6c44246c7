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


#include "fmc/generate.h"

#include <fmt/core.h>

#include <map>
#include <string>
#include <utility>

namespace fmc {

namespace {

int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Coin(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

struct Seg {
  TermKind kind;
  Location loc;
  std::string var;
  Term arg;
  TypeRef annot;
  ConstSym sym;
};

class TermGen {
 public:
  TermGen(Rng& rng, const GenOptions& opts) : rng_(rng), opts_(opts) {}

  TypedTerm Gen(const Context& ctx, std::size_t budget, int depth) {
    State s;
    s.ctx = ctx;
    std::size_t size = 1;
    while (size < budget) {
      int r = Uniform(rng_, 0, 99);
      std::vector<std::string> callable = Callable(s);
      if (r < 30 && !callable.empty()) {
        const std::string& f = Pick(rng_, callable);
        CallVar(s, s.ctx.at(f));
        s.segs.push_back({TermKind::kVar, {}, f, nullptr, nullptr, {}});
        size += 1;
      } else if (r < 55) {
        Location l = PopLocation(s);
        TypeRef t = PopFrom(s, l, nullptr, depth);
        std::string x = fmt::format("x{}", counter_++);
        s.ctx[x] = t;
        s.segs.push_back({TermKind::kPop, l, x, nullptr,
                          opts_.annotate ? t : nullptr, {}});
        size += 1;
      } else if (r < 88) {
        Location l = Pick(rng_, opts_.locations);
        auto [arg, t] = Argument(s, budget - size, depth);
        s.cur[l].push_back(t);
        s.segs.push_back({TermKind::kPush, l, {}, arg, nullptr, {}});
        size += 1 + Size(arg);
      } else if (opts_.constants && r < 95) {
        Location m = Location::Main();
        auto& st = s.cur[m];
        bool add = st.size() >= 2 && IsZ(st.back()) && IsZ(st[st.size() - 2]);
        if (add && Coin(rng_, 0.5)) {
          st.pop_back();
          st.back() = BaseType("Z");
          s.segs.push_back({TermKind::kConst, {}, {}, nullptr, nullptr,
                            *BuiltinOperator("+")});
        } else {
          st.push_back(BaseType("Z"));
          s.segs.push_back({TermKind::kConst, {}, {}, nullptr, nullptr,
                            ConstSym::Int(Uniform(rng_, 0, 2))});
        }
        size += 1;
      } else {
        break;
      }
    }
    Term acc = Nil();
    for (auto it = s.segs.rbegin(); it != s.segs.rend(); ++it) {
      switch (it->kind) {
        case TermKind::kVar:
          acc = Var(it->var, acc);
          break;
        case TermKind::kPop:
          acc = Pop(it->loc, it->var, acc, it->annot);
          break;
        case TermKind::kPush:
          acc = Push(it->arg, it->loc, acc);
          break;
        case TermKind::kConst:
          acc = Const(it->sym, acc);
          break;
        case TermKind::kNil:
          break;
      }
    }
    MemoryType in, out;
    for (auto& [l, v] : s.input) {
      if (!v.empty()) in.vecs[l].items = v;
    }
    for (auto& [l, v] : s.cur) {
      if (!v.empty()) out.vecs[l].items = v;
    }
    return {acc, Arrow(std::move(in), std::move(out)), ctx};
  }

 private:
  struct State {
    Context ctx;
    std::map<Location, std::vector<TypeRef>> cur;
    std::map<Location, std::vector<TypeRef>> input;
    std::vector<Seg> segs;
  };

  static bool IsZ(const TypeRef& t) {
    return t->kind == SimpleType::Kind::kBase && t->name == "Z";
  }

  Location PopLocation(State& s) {
    std::vector<Location> ready;
    for (const auto& l : opts_.locations) {
      if (!s.cur[l].empty()) ready.push_back(l);
    }
    if (!ready.empty() && Coin(rng_, 0.85)) return Pick(rng_, ready);
    return Pick(rng_, opts_.locations);
  }

  TypeRef PopFrom(State& s, const Location& l, const TypeRef& want,
                  int depth) {
    auto& st = s.cur[l];
    if (!st.empty()) {
      TypeRef t = st.back();
      st.pop_back();
      return t;
    }
    TypeRef t = want ? want : RandomType(rng_, opts_, depth - 1);
    auto& in = s.input[l];
    in.insert(in.begin(), t);
    return t;
  }

  // Variables whose inputs are either on the current stacks or can be
  // drawn from the term's own input.
  std::vector<std::string> Callable(State& s) {
    std::vector<std::string> out;
    for (const auto& [x, t] : s.ctx) {
      if (t->kind != SimpleType::Kind::kArrow) continue;
      bool ok = true;
      for (const auto& [l, v] : t->in.vecs) {
        const auto& st = s.cur[l];
        for (std::size_t k = 0; k < v.items.size() && k < st.size(); ++k) {
          if (!TypeEq(v.items[v.items.size() - 1 - k],
                      st[st.size() - 1 - k])) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) out.push_back(x);
    }
    return out;
  }

  void CallVar(State& s, const TypeRef& t) {
    for (const auto& [l, v] : t->in.vecs) {
      for (auto it = v.items.rbegin(); it != v.items.rend(); ++it)
        PopFrom(s, l, *it, 0);
    }
    for (const auto& [l, v] : t->out.vecs) {
      for (const auto& i : v.items) s.cur[l].push_back(i);
    }
  }

  std::pair<Term, TypeRef> Argument(State& s, std::size_t room, int depth) {
    if (!s.ctx.empty() && Coin(rng_, 0.4)) {
      std::vector<std::string> names;
      for (const auto& [x, t] : s.ctx) names.push_back(x);
      const std::string& y = Pick(rng_, names);
      return {Var(y), s.ctx.at(y)};
    }
    if (opts_.constants && Coin(rng_, 0.2)) {
      return {Const(ConstSym::Int(Uniform(rng_, 0, 2))), BaseType("Z")};
    }
    if (depth <= 0 || room < 3) return {Nil(), UnitArrow()};
    std::size_t sub = static_cast<std::size_t>(
        Uniform(rng_, 1, static_cast<int>(std::max<std::size_t>(1, room / 2))));
    TypedTerm t = Gen(s.ctx, sub, depth - 1);
    return {AsThunk(t.term), t.type};
  }

  Rng& rng_;
  const GenOptions& opts_;
  int counter_ = 0;
};

}  // namespace

Term AsThunk(const Term& t) {
  if (t->kind == TermKind::kConst && t->sym.is_literal() &&
      t->cont->kind == TermKind::kNil)
    return Push(Const(t->sym), Location::Main());
  return t;
}

TypeRef RandomType(Rng& rng, const GenOptions& opts, int depth) {
  if (opts.constants && (depth <= 0 || Coin(rng, 0.35))) return BaseType("Z");
  if (depth <= 0) return UnitArrow();
  return RandomArrow(rng, opts, depth);
}

TypeRef RandomArrow(Rng& rng, const GenOptions& opts, int depth) {
  MemoryType in, out;
  for (const auto& l : opts.locations) {
    if (!l.is_main() && Coin(rng, 0.5)) continue;
    int max_len = l.is_main() ? opts.vector_len : std::min(1, opts.vector_len);
    int ni = Uniform(rng, 0, max_len);
    int no = Uniform(rng, 0, max_len);
    for (int i = 0; i < ni; ++i)
      in.vecs[l].items.push_back(RandomType(rng, opts, depth - 1));
    for (int i = 0; i < no; ++i)
      out.vecs[l].items.push_back(RandomType(rng, opts, depth - 1));
  }
  return Normalize(Arrow(std::move(in), std::move(out)));
}

TypedTerm RandomTypedTerm(Rng& rng, const GenOptions& opts,
                          const Context& ctx) {
  TermGen g(rng, opts);
  std::size_t budget = static_cast<std::size_t>(
      Uniform(rng, 1, static_cast<int>(std::max<std::size_t>(1, opts.max_size))));
  TypedTerm t = g.Gen(ctx, budget, opts.type_depth);
  t.type = Normalize(t.type);
  return t;
}

Term LeastTerm(const TypeRef& t) {
  if (t->kind == SimpleType::Kind::kBase) {
    return Const(t->name == "B" ? ConstSym::Bool(false) : ConstSym::Int(0));
  }
  if (t->kind != SimpleType::Kind::kArrow) return Nil();
  std::vector<std::pair<Location, Term>> pushes;
  for (const auto& [l, v] : t->out.vecs) {
    for (const auto& i : v.items) pushes.emplace_back(l, LeastTerm(i));
  }
  Term acc = Nil();
  for (auto it = pushes.rbegin(); it != pushes.rend(); ++it)
    acc = Push(it->second, it->first, acc);
  std::vector<Location> pops;
  for (const auto& [l, v] : t->in.vecs) {
    for (std::size_t k = 0; k < v.items.size(); ++k) pops.push_back(l);
  }
  for (std::size_t k = pops.size(); k-- > 0;)
    acc = Pop(pops[k], fmt::format("a{}", k + 1), acc);
  return acc;
}

Memory LeastMemory(const TypeRef& t) {
  Memory m;
  if (t->kind != SimpleType::Kind::kArrow) return m;
  for (const auto& [l, v] : t->in.vecs) {
    Stack s;
    for (const auto& i : v.items) s.push_back(LeastTerm(i));
    m.set(l, std::move(s));
  }
  return m;
}

namespace {

const std::string& VarName(int i) {
  static std::vector<std::string> names;
  while (static_cast<int>(names.size()) <= i)
    names.push_back(fmt::format("x{}", names.size()));
  return names[static_cast<std::size_t>(i)];
}

void EnumExact(std::size_t n, int depth, const EnumOptions& o,
               const std::function<void(const Term&)>& k) {
  if (n == 0) return;
  if (n == 1) {
    k(Nil());
    return;
  }
  for (int i = 0; i < depth; ++i) {
    EnumExact(n - 1, depth, o, [&](const Term& c) { k(Var(VarName(i), c)); });
  }
  for (const auto& lit : o.literals) {
    EnumExact(n - 1, depth, o, [&](const Term& c) { k(Const(lit, c)); });
  }
  for (const auto& l : o.locations) {
    EnumExact(n - 1, depth + 1, o,
              [&](const Term& c) { k(Pop(l, VarName(depth), c)); });
  }
  for (const auto& l : o.locations) {
    for (std::size_t a = 1; a + 1 < n; ++a) {
      EnumExact(a, depth, o, [&](const Term& arg) {
        EnumExact(n - 1 - a, depth, o,
                  [&](const Term& c) { k(Push(arg, l, c)); });
      });
    }
  }
}

struct EnoughInhabitants {};

}  // namespace

void EnumerateClosedTerms(std::size_t max_size, const EnumOptions& opts,
                          const std::function<void(const Term&)>& visit) {
  for (std::size_t n = 1; n <= max_size; ++n) EnumExact(n, 0, opts, visit);
}

std::vector<Term> Inhabitants(const TypeRef& t, std::size_t max_size,
                              std::size_t limit) {
  static std::map<std::string, std::vector<Term>> cache;
  std::string key = fmt::format("{}|{}|{}", PrintType(t), max_size, limit);
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;
  std::vector<Term> out;
  if (t->kind == SimpleType::Kind::kBase) {
    if (t->name == "B") {
      out = {Const(ConstSym::Bool(false)), Const(ConstSym::Bool(true))};
    } else {
      for (int i = 0; i < 3; ++i) out.push_back(Const(ConstSym::Int(i)));
    }
    if (out.size() > limit) out.resize(limit);
  } else {
    EnumOptions o;
    std::set<Location> locs = TypeLocations(t);
    locs.insert(Location::Main());
    o.locations.assign(locs.begin(), locs.end());
    std::set<std::string> bases = BaseNames(t);
    if (bases.count("Z")) {
      o.literals.push_back(ConstSym::Int(0));
      o.literals.push_back(ConstSym::Int(1));
    }
    if (bases.count("B")) {
      o.literals.push_back(ConstSym::Bool(false));
      o.literals.push_back(ConstSym::Bool(true));
    }
    try {
      EnumerateClosedTerms(max_size, o, [&](const Term& m) {
        if (Typechecks({}, m, t)) {
          out.push_back(m);
          if (out.size() >= limit) throw EnoughInhabitants{};
        }
      });
    } catch (const EnoughInhabitants&) {
    }
  }
  cache.emplace(std::move(key), out);
  return out;
}

}  // namespace fmc
