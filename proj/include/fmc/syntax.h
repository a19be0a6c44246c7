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

#ifndef FMC_SYNTAX_H_
#define FMC_SYNTAX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fmc/location.h"

namespace fmc {

struct SimpleType;
using TypeRef = std::shared_ptr<const SimpleType>;

// A constant symbol: an integer or boolean literal, or an operator.
struct ConstSym {
  enum class Kind { kInt, kBool, kOp };

  Kind kind = Kind::kOp;
  std::string name;
  std::int64_t value = 0;
  int arity_in = 0;
  int arity_out = 0;

  static ConstSym Int(std::int64_t v);
  static ConstSym Bool(bool b);
  static ConstSym Op(std::string name, int in, int out);

  bool is_literal() const { return kind != Kind::kOp; }
  bool operator==(const ConstSym& other) const {
    return kind == other.kind && name == other.name;
  }
};

// Operators known to the parser: "+", "mul" and "if".
std::optional<ConstSym> BuiltinOperator(const std::string& name);

enum class TermKind { kNil, kVar, kPush, kPop, kConst };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind = TermKind::kNil;
  std::string var;  // kVar, kPop
  Location loc;     // kPush, kPop
  Term arg;         // kPush
  TypeRef annot;    // kPop, may be null
  ConstSym sym;     // kConst
  Term cont;        // every kind except kNil
};

Term Nil();
Term Var(std::string x, Term cont = nullptr);
Term Push(Term arg, Location loc, Term cont = nullptr);
Term Pop(Location loc, std::string x, Term cont = nullptr,
         TypeRef annot = nullptr);
Term Const(ConstSym sym, Term cont = nullptr);

using VarSet = std::set<std::string>;

VarSet FreeVars(const Term& t);
bool IsClosed(const Term& t);
bool OccursFree(const std::string& x, const Term& t);

// A variable name based on `base` that is not in `avoid`.
std::string Fresh(const std::string& base, const VarSet& avoid);

// {n/x}m
Term Substitute(const Term& n, const std::string& x, const Term& m);

// n;m
Term Compose(const Term& n, const Term& m);

// Composition of a list of terms, left to right.
Term ComposeAll(const std::vector<Term>& terms);

bool AlphaEq(const Term& a, const Term& b);

// A string that is equal for two terms iff they are alpha-equivalent.
std::string CanonicalKey(const Term& t);

std::size_t Size(const Term& t);

std::set<Location> LocationsOf(const Term& t);

enum class Fragment { kSequential, kPoly, kFull };
Fragment FragmentOf(const Term& t);
const char* FragmentName(Fragment f);

// A sequence of push and pop frames terminating in a hole.
struct Frame {
  enum class Kind { kPush, kPop };
  Kind kind = Kind::kPush;
  Term arg;  // kPush
  Location loc;
  std::string var;  // kPop
  TypeRef annot;    // kPop
};

struct HeadContext {
  std::vector<Frame> frames;

  VarSet BoundVars() const;
  std::set<Location> Locations() const;
  VarSet FreeVarsOfArgs() const;
};

Term Plug(const HeadContext& h, const Term& m);

// Splits off the first `depth` segments as a head context. Returns nothing if
// one of them is not a push or a pop.
std::optional<std::pair<HeadContext, Term>> Decompose(const Term& t,
                                                      std::size_t depth);

// The segments of the top-level sequence of `t`, each with a Nil
// continuation.
std::vector<Term> Segments(const Term& t);

// Rebuilds a term from single segments.
Term FromSegments(const std::vector<Term>& segs);

// A copy of the head node of `t` with continuation `cont`.
Term WithCont(const Term& t, Term cont);

}  // namespace fmc

#endif  // FMC_SYNTAX_H_
