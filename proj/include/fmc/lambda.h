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


#ifndef FMC_LAMBDA_H_
#define FMC_LAMBDA_H_

#include <cstddef>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fmc {
namespace lam {

struct Type;
using TypeRef = std::shared_ptr<const Type>;

// Base types, functions and n-ary products; the empty product is the unit.
struct Type {
  enum class Kind { kBase, kArrow, kProduct };
  Kind kind = Kind::kBase;
  std::string name;             // kBase
  TypeRef dom, cod;             // kArrow
  std::vector<TypeRef> items;   // kProduct
};

TypeRef Base(std::string name);
TypeRef Arrow(TypeRef dom, TypeRef cod);
TypeRef Product(std::vector<TypeRef> items);

bool TypeEq(const TypeRef& a, const TypeRef& b);
// Leaves of the product structure, left to right; functions are leaves.
std::vector<TypeRef> Flatten(const TypeRef& t);

struct Pattern {
  bool tuple = false;
  std::string var;              // !tuple
  TypeRef type;                 // !tuple, may be null before checking
  std::vector<Pattern> items;   // tuple
};

Pattern VarPattern(std::string x, TypeRef type = nullptr);
Pattern TuplePattern(std::vector<Pattern> items);
TypeRef PatternType(const Pattern& p);
// Variables in left-to-right order.
std::vector<std::pair<std::string, TypeRef>> PatternVars(const Pattern& p);

struct Term;
using TermRef = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { kVar, kConst, kApp, kLam, kTuple, kProj };
  Kind kind = Kind::kVar;
  std::string name;             // kVar, kConst
  TermRef fun, arg;             // kApp
  Pattern pat;                  // kLam
  TermRef body;                 // kLam, kProj
  std::vector<TermRef> items;   // kTuple
  int index = 0;                // kProj, 1-based
};

TermRef Var(std::string x);
TermRef Const(std::string c);
TermRef App(TermRef f, TermRef a);
TermRef Lam(Pattern p, TermRef body);
TermRef Tuple(std::vector<TermRef> items);
TermRef Proj(int index, TermRef t);

// A single term is its own 1-tuple; other counts build a tuple.
TermRef TupleOrSingle(std::vector<TermRef> items);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Context = std::map<std::string, TypeRef>;

// Types of integer literals are Z, of true/false B.
TypeRef TypeOf(const Context& ctx, const TermRef& t);

std::vector<std::string> FreeVars(const TermRef& t);

// Capture-avoiding simultaneous substitution.
TermRef Substitute(const TermRef& t,
                   const std::map<std::string, TermRef>& sub);

struct NormalizeResult {
  TermRef term;
  std::size_t steps = 0;
  bool fuel_exhausted = false;
};

// Normal-order pattern beta: (\x.M)N and (\(p1..pn).M)(N1..Nn), plus
// projections of tuples.
NormalizeResult Normalize(const TermRef& t, std::size_t fuel = 10000);

// Beta-eta long normal form computed by evaluation; products are compared
// up to associativity and unit laws.
TermRef LongNormalForm(const Context& ctx, const TermRef& t,
                       const TypeRef& type);
bool BetaEtaEq(const Context& ctx, const TermRef& a, const TermRef& b,
               const TypeRef& type);

// Components of `t` at the leaves of its product type, using projections.
std::vector<TermRef> FlatComponents(const TermRef& t, const TypeRef& type);

TypeRef ParseType(std::string_view src);
TermRef ParseTerm(std::string_view src);

struct PrintOptions {
  bool types = true;
};
std::string PrintType(const TypeRef& t);
std::string PrintTerm(const TermRef& t, const PrintOptions& opts = {});

struct GenOptions {
  int type_depth = 2;
  int max_size = 15;
  std::vector<std::string> bases{"A", "B"};
};

struct Generated {
  Context ctx;
  TermRef term;
  TypeRef type;
};

TypeRef RandomType(std::mt19937_64& rng, const GenOptions& opts, int depth);
Generated RandomTerm(std::mt19937_64& rng, const GenOptions& opts);
std::size_t Size(const TermRef& t);

}  // namespace lam
}  // namespace fmc

#endif  // FMC_LAMBDA_H_
