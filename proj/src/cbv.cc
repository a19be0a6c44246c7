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


#include "fmc/cbv.h"

#include <fmt/core.h>

#include <cctype>
#include <utility>

#include "fmc/parser.h"

namespace fmc {
namespace cbv {

namespace {

CbvTerm Make(Node::Kind kind, std::string name = {}, CbvTerm l = nullptr,
             CbvTerm r = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

}  // namespace

CbvTerm Var(std::string x) { return Make(Node::Kind::kVar, std::move(x)); }

CbvTerm Int(std::int64_t n) {
  auto t = std::make_shared<Node>();
  t->kind = Node::Kind::kInt;
  t->value = n;
  return t;
}

CbvTerm App(CbvTerm fun, CbvTerm arg) {
  return Make(Node::Kind::kApp, {}, std::move(fun), std::move(arg));
}

CbvTerm Lam(std::string x, CbvTerm body) {
  return Make(Node::Kind::kLam, std::move(x), std::move(body));
}

CbvTerm Read() { return Make(Node::Kind::kRead); }

CbvTerm Write(CbvTerm value, CbvTerm then) {
  return Make(Node::Kind::kWrite, {}, std::move(value), std::move(then));
}

CbvTerm Assign(std::string cell, CbvTerm value, CbvTerm then) {
  return Make(Node::Kind::kAssign, std::move(cell), std::move(value),
              std::move(then));
}

CbvTerm Deref(std::string cell) {
  return Make(Node::Kind::kDeref, std::move(cell));
}

CbvTerm ProbSum(CbvTerm l, CbvTerm r) {
  return Make(Node::Kind::kProbSum, {}, std::move(l), std::move(r));
}

CbvTerm NondetSum(CbvTerm l, CbvTerm r) {
  return Make(Node::Kind::kNondetSum, {}, std::move(l), std::move(r));
}

// Parsing.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  CbvTerm Top() {
    CbvTerm t = Expr();
    Skip();
    if (pos_ != src_.size()) Fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) {
    throw Error(fmt::format("{} at offset {}", msg, pos_));
  }

  void Skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool Peek(std::string_view tok) {
    Skip();
    return src_.substr(pos_, tok.size()) == tok;
  }

  bool Eat(std::string_view tok) {
    if (!Peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void Expect(std::string_view tok) {
    if (!Eat(tok)) Fail(fmt::format("expected '{}'", tok));
  }

  static bool IdentStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool IdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  // The identifier at the cursor without consuming it.
  std::string PeekIdent() {
    Skip();
    std::size_t p = pos_;
    if (p >= src_.size() || !IdentStart(src_[p])) return {};
    while (p < src_.size() && IdentChar(src_[p])) ++p;
    return std::string(src_.substr(pos_, p - pos_));
  }

  std::string Ident() {
    std::string x = PeekIdent();
    if (x.empty()) Fail("expected identifier");
    pos_ += x.size();
    return x;
  }

  bool AtLambda() { return Peek("\\") || Peek("λ"); }

  bool AtAssign() {
    std::string x = PeekIdent();
    if (x.empty() || x == "read" || x == "write") return false;
    std::size_t save = pos_;
    pos_ += x.size();
    bool yes = Peek(":=");
    pos_ = save;
    return yes;
  }

  CbvTerm Expr() {
    if (AtLambda()) {
      if (!Eat("\\")) Expect("λ");
      std::string x = Ident();
      Expect(".");
      return Lam(std::move(x), Expr());
    }
    if (PeekIdent() == "write") {
      pos_ += 5;
      CbvTerm v = Expr();
      Expect(";");
      return Write(std::move(v), Expr());
    }
    if (AtAssign()) {
      std::string c = Ident();
      Expect(":=");
      CbvTerm v = Expr();
      Expect(";");
      return Assign(std::move(c), std::move(v), Expr());
    }
    CbvTerm t = Application();
    while (true) {
      if (Eat("(+)")) {
        t = ProbSum(t, Application());
      } else if (Eat("+")) {
        t = NondetSum(t, Application());
      } else {
        return t;
      }
    }
  }

  bool AtAtom() {
    Skip();
    if (pos_ >= src_.size()) return false;
    if (Peek("(+)")) return false;
    char c = src_[pos_];
    if (c == '(' || c == '!' || std::isdigit(static_cast<unsigned char>(c)))
      return true;
    std::string x = PeekIdent();
    return !x.empty() && x != "write" && !AtAssign();
  }

  CbvTerm Application() {
    CbvTerm t = Atom();
    while (true) {
      if (AtLambda()) return App(t, Expr());
      if (!AtAtom()) return t;
      t = App(t, Atom());
    }
  }

  CbvTerm Atom() {
    Skip();
    if (Eat("(")) {
      CbvTerm t = Expr();
      Expect(")");
      return t;
    }
    if (Eat("!")) return Deref(Ident());
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      try {
        return Int(std::stoll(std::string(src_.substr(start, pos_ - start))));
      } catch (const std::out_of_range&) {
        Fail("integer out of range");
      }
    }
    std::string x = Ident();
    if (x == "read") return Read();
    if (x == "write") Fail("unexpected 'write'");
    return Var(std::move(x));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// 0: anything; 1: a sum; 2: an application; 3: an atom.
std::string PrintAt(const CbvTerm& t, int prec) {
  auto wrap = [&](int level, std::string s) {
    return prec > level ? "(" + s + ")" : s;
  };
  switch (t->kind) {
    case Node::Kind::kVar:
      return t->name;
    case Node::Kind::kInt:
      return std::to_string(t->value);
    case Node::Kind::kRead:
      return "read";
    case Node::Kind::kDeref:
      return "!" + t->name;
    case Node::Kind::kLam:
      return wrap(0, "\\" + t->name + "." + PrintAt(t->left, 0));
    case Node::Kind::kWrite:
      return wrap(0, "write " + PrintAt(t->left, 0) + "; " + PrintAt(t->right, 0));
    case Node::Kind::kAssign:
      return wrap(0, t->name + " := " + PrintAt(t->left, 0) + "; " +
                         PrintAt(t->right, 0));
    case Node::Kind::kProbSum:
      return wrap(1, PrintAt(t->left, 1) + " (+) " + PrintAt(t->right, 2));
    case Node::Kind::kNondetSum:
      return wrap(1, PrintAt(t->left, 1) + " + " + PrintAt(t->right, 2));
    case Node::Kind::kApp:
      return wrap(2, PrintAt(t->left, 2) + " " + PrintAt(t->right, 3));
  }
  return "?";
}

void CollectCells(const CbvTerm& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Node::Kind::kAssign || t->kind == Node::Kind::kDeref)
    out.insert(t->name);
  CollectCells(t->left, out);
  CollectCells(t->right, out);
}

}  // namespace

CbvTerm Parse(std::string_view src) { return Parser(src).Top(); }

std::string Print(const CbvTerm& t) { return PrintAt(t, 0); }

std::set<std::string> Cells(const CbvTerm& t) {
  std::set<std::string> out;
  CollectCells(t, out);
  return out;
}

// Encoding.

namespace {

const Location kMain;

class Encoder {
 public:
  explicit Encoder(const std::optional<std::set<std::string>>& declared)
      : declared_(declared) {}

  Term Val(const CbvTerm& t) {
    switch (t->kind) {
      case Node::Kind::kVar:
        return Push(fmc::Var(t->name), kMain, Nil());
      case Node::Kind::kInt:
        return Push(Const(ConstSym::Int(t->value)), kMain, Nil());
      case Node::Kind::kLam:
        return Push(Pop(kMain, t->name, Val(t->left)), kMain, Nil());
      case Node::Kind::kApp:
        return ComposeAll({Val(t->right), Val(t->left),
                           Pop(kMain, "x", fmc::Var("x"))});
      case Node::Kind::kRead:
        return Pop(Location(kIn), "x", Push(fmc::Var("x"), kMain, Nil()));
      case Node::Kind::kDeref: {
        Location c = Cell(t->name);
        return Pop(c, "x",
                   Push(fmc::Var("x"), c, Push(fmc::Var("x"), kMain, Nil())));
      }
      case Node::Kind::kWrite:
        return ComposeAll({Val(t->left),
                           Pop(kMain, "x", Push(fmc::Var("x"), Location(kOut))),
                           Val(t->right)});
      case Node::Kind::kAssign: {
        Location c = Cell(t->name);
        return ComposeAll(
            {Val(t->left),
             Pop(kMain, "x", Pop(c, "_", Push(fmc::Var("x"), c))),
             Val(t->right)});
      }
      case Node::Kind::kProbSum:
        return Choice(kRnd, t);
      case Node::Kind::kNondetSum:
        return Choice(kNd, t);
    }
    throw Error("unreachable");
  }

 private:
  Location Cell(const std::string& c) {
    if (c == kIn || c == kOut || c == kRnd || c == kNd)
      throw Error("cell name " + c + " is a reserved location");
    if (declared_ && !declared_->count(c))
      throw Error("undeclared cell " + c);
    return Location(c);
  }

  // The chosen branch is run after `if` selects it.
  Term Choice(const char* stream, const CbvTerm& t) {
    Term n = Val(t->left);
    Term m = Val(t->right);
    VarSet avoid = FreeVars(n);
    for (const auto& y : FreeVars(m)) avoid.insert(y);
    std::string x = Fresh("x", avoid);
    Term tail = Const(*BuiltinOperator("if"), Pop(kMain, "k", fmc::Var("k")));
    return Pop(Location(stream), x,
               Push(n, kMain, Push(m, kMain, Push(fmc::Var(x), kMain, tail))));
  }

  const std::optional<std::set<std::string>>& declared_;
};

}  // namespace

Term Encode(const CbvTerm& t,
            const std::optional<std::set<std::string>>& declared) {
  return Encoder(declared).Val(t);
}

bool IsValue(const CbvTerm& t) {
  return t->kind == Node::Kind::kInt || t->kind == Node::Kind::kLam;
}

Term EncodeValue(const CbvTerm& v) {
  switch (v->kind) {
    case Node::Kind::kInt:
      return Const(ConstSym::Int(v->value));
    case Node::Kind::kLam:
      return Pop(kMain, v->name, Encode(v->left));
    default:
      throw Error("not a value: " + Print(v));
  }
}

// Reference semantics.

namespace {

// Substitutes a closed value.
CbvTerm Subst(const CbvTerm& t, const std::string& x, const CbvTerm& v) {
  switch (t->kind) {
    case Node::Kind::kVar:
      return t->name == x ? v : t;
    case Node::Kind::kInt:
    case Node::Kind::kRead:
    case Node::Kind::kDeref:
      return t;
    case Node::Kind::kLam:
      if (t->name == x) return t;
      return Lam(t->name, Subst(t->left, x, v));
    default: {
      auto n = std::make_shared<Node>(*t);
      n->left = Subst(t->left, x, v);
      n->right = Subst(t->right, x, v);
      return n;
    }
  }
}

struct Stop {
  Outcome::Status status;
  std::string why;
};

class Evaluator {
 public:
  Evaluator(const Config& cfg, std::size_t fuel) : cfg_(cfg), fuel_(fuel) {
    store_ = cfg.store;
  }

  CbvTerm Eval(const CbvTerm& t) {
    if (steps_++ >= fuel_) throw Stop{Outcome::Status::kFuelExhausted, "fuel"};
    switch (t->kind) {
      case Node::Kind::kVar:
        throw Stop{Outcome::Status::kStuck, "free variable " + t->name};
      case Node::Kind::kInt:
      case Node::Kind::kLam:
        return t;
      case Node::Kind::kApp: {
        CbvTerm arg = Eval(t->right);
        CbvTerm fun = Eval(t->left);
        if (fun->kind != Node::Kind::kLam)
          throw Stop{Outcome::Status::kStuck, "applying " + Print(fun)};
        return Eval(Subst(fun->left, fun->name, arg));
      }
      case Node::Kind::kRead:
        if (in_ >= cfg_.input.size())
          throw Stop{Outcome::Status::kStuck, "input exhausted"};
        return cfg_.input[in_++];
      case Node::Kind::kWrite:
        output_.push_back(Eval(t->left));
        return Eval(t->right);
      case Node::Kind::kAssign: {
        CbvTerm v = Eval(t->left);
        if (!store_.count(t->name))
          throw Stop{Outcome::Status::kStuck, "uninitialized cell " + t->name};
        store_[t->name] = v;
        return Eval(t->right);
      }
      case Node::Kind::kDeref: {
        auto it = store_.find(t->name);
        if (it == store_.end())
          throw Stop{Outcome::Status::kStuck, "uninitialized cell " + t->name};
        return it->second;
      }
      case Node::Kind::kProbSum:
      case Node::Kind::kNondetSum: {
        bool prob = t->kind == Node::Kind::kProbSum;
        const auto& stream = prob ? cfg_.rnd : cfg_.nd;
        std::size_t& pos = prob ? rnd_ : nd_;
        if (pos >= stream.size())
          throw Stop{Outcome::Status::kStuck,
                     std::string(prob ? kRnd : kNd) + " exhausted"};
        return Eval(stream[pos++] ? t->left : t->right);
      }
    }
    throw Stop{Outcome::Status::kStuck, "unreachable"};
  }

  std::vector<CbvTerm> output_;
  std::map<std::string, CbvTerm> store_;
  std::size_t in_ = 0;

 private:
  const Config& cfg_;
  std::size_t fuel_;
  std::size_t steps_ = 0;
  std::size_t rnd_ = 0;
  std::size_t nd_ = 0;
};

}  // namespace

Outcome Evaluate(const CbvTerm& t, const Config& cfg, std::size_t fuel) {
  Evaluator ev(cfg, fuel);
  Outcome out;
  try {
    out.value = ev.Eval(t);
  } catch (const Stop& s) {
    out.status = s.status;
    out.error = s.why;
  }
  out.output = ev.output_;
  out.store = ev.store_;
  out.remaining_input = cfg.input.size() - ev.in_;
  return out;
}

Memory ToMemory(const Config& cfg) {
  Memory m;
  for (auto it = cfg.input.rbegin(); it != cfg.input.rend(); ++it)
    m.mut(Location(kIn)).push_back(EncodeValue(*it));
  for (auto it = cfg.rnd.rbegin(); it != cfg.rnd.rend(); ++it)
    m.mut(Location(kRnd)).push_back(Const(ConstSym::Bool(*it)));
  for (auto it = cfg.nd.rbegin(); it != cfg.nd.rend(); ++it)
    m.mut(Location(kNd)).push_back(Const(ConstSym::Bool(*it)));
  for (const auto& [c, v] : cfg.store) m.mut(Location(c)).push_back(EncodeValue(v));
  return m;
}

std::optional<std::string> CompareWithMachine(const CbvTerm& t,
                                              const Config& cfg) {
  Outcome ref = Evaluate(t, cfg);
  RunResult run = Run(ToMemory(cfg), Encode(t));
  if (ref.status != Outcome::Status::kValue) {
    if (run.ok())
      return "reference stopped (" + ref.error + ") but the machine terminated";
    return std::nullopt;
  }
  if (!run.ok()) {
    return "machine did not terminate: " +
           (run.reason ? run.reason->Describe() : std::string("fuel"));
  }
  const Memory& m = run.final();
  auto same_stack = [](const Stack& s, const std::vector<CbvTerm>& vs) {
    if (s.size() != vs.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!AlphaEq(s[i], EncodeValue(vs[i]))) return false;
    }
    return true;
  };
  if (!same_stack(m.at(kMain), {ref.value}))
    return "result differs: machine " + PrintStack(m.at(kMain)) +
           ", reference " + Print(ref.value);
  if (!same_stack(m.at(Location(kOut)), ref.output))
    return "output differs: machine " + PrintStack(m.at(Location(kOut)));
  for (const auto& [c, v] : ref.store) {
    if (!same_stack(m.at(Location(c)), {v}))
      return "cell " + c + " differs: machine " + PrintStack(m.at(Location(c)));
  }
  if (m.at(Location(kIn)).size() != ref.remaining_input)
    return "input consumption differs";
  return std::nullopt;
}

// Generation.

namespace {

struct Ty;
using TyRef = std::shared_ptr<const Ty>;
struct Ty {
  TyRef dom, cod;  // both null for integers
};

bool TyEq(const TyRef& a, const TyRef& b) {
  if (!a->dom || !b->dom) return !a->dom && !b->dom;
  return TyEq(a->dom, b->dom) && TyEq(a->cod, b->cod);
}

class ProgramGen {
 public:
  ProgramGen(std::mt19937_64& rng, const GenOptions& opts)
      : rng_(rng), opts_(opts) {}

  CbvTerm Gen(const TyRef& ty, int budget) {
    std::vector<std::string> matches;
    for (const auto& [x, t] : env_) {
      if (TyEq(t, ty)) matches.push_back(x);
    }
    int r = Roll(100);
    if (!matches.empty() && (budget <= 1 || r < 25))
      return Var(matches[Pick(matches.size())]);
    if (budget <= 1 || r < 35) return Leaf(ty);
    if (r < 55) {
      TyRef s = Roll(3) == 0 ? Fun(Integer(), Integer()) : Integer();
      int half = (budget - 1) / 2;
      CbvTerm f = Gen(Fun(s, ty), half);
      return App(f, Gen(s, budget - 1 - half));
    }
    if (r < 65) {
      int half = (budget - 1) / 2;
      CbvTerm v = Gen(Integer(), half);
      return Write(v, Gen(ty, budget - 1 - half));
    }
    if (r < 75 && !opts_.cells.empty()) {
      int half = (budget - 1) / 2;
      std::string c = opts_.cells[Pick(opts_.cells.size())];
      CbvTerm v = Gen(Integer(), half);
      return Assign(c, v, Gen(ty, budget - 1 - half));
    }
    if (r < 85) {
      int half = (budget - 1) / 2;
      CbvTerm l = Gen(ty, half);
      CbvTerm rr = Gen(ty, budget - 1 - half);
      return Roll(2) ? ProbSum(l, rr) : NondetSum(l, rr);
    }
    if (ty->dom) return Abstraction(ty, budget);
    return Leaf(ty);
  }

 private:
  static TyRef Integer() { return std::make_shared<Ty>(); }
  static TyRef Fun(TyRef a, TyRef b) {
    auto t = std::make_shared<Ty>();
    t->dom = std::move(a);
    t->cod = std::move(b);
    return t;
  }

  CbvTerm Leaf(const TyRef& ty) {
    if (ty->dom) return Abstraction(ty, 1);
    int r = Roll(4);
    if (r == 0) return Read();
    if (r == 1 && !opts_.cells.empty())
      return Deref(opts_.cells[Pick(opts_.cells.size())]);
    return Int(Roll(10));
  }

  CbvTerm Abstraction(const TyRef& ty, int budget) {
    std::string x = fmt::format("x{}", counter_++);
    env_.emplace_back(x, ty->dom);
    CbvTerm body = Gen(ty->cod, budget - 1);
    env_.pop_back();
    return Lam(x, body);
  }

  int Roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::size_t Pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937_64& rng_;
  const GenOptions& opts_;
  std::vector<std::pair<std::string, TyRef>> env_;
  int counter_ = 0;
};

}  // namespace

Program RandomProgram(std::mt19937_64& rng, const GenOptions& opts) {
  Program p;
  ProgramGen gen(rng, opts);
  int budget = std::uniform_int_distribution<int>(
      1, static_cast<int>(opts.max_size))(rng);
  p.term = gen.Gen(std::make_shared<Ty>(), budget);
  std::uniform_int_distribution<int> digit(0, 9), coin(0, 1);
  for (int i = 0; i < 64; ++i) {
    p.config.input.push_back(Int(digit(rng)));
    p.config.rnd.push_back(coin(rng));
    p.config.nd.push_back(coin(rng));
  }
  for (const auto& c : opts.cells) p.config.store[c] = Int(digit(rng));
  return p;
}

}  // namespace cbv
}  // namespace fmc
