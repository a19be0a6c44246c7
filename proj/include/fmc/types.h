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

#ifndef FMC_TYPES_H_
#define FMC_TYPES_H_

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fmc/syntax.h"
#include "fmc/type_syntax.h"

namespace fmc {

using Context = std::map<std::string, TypeRef>;

class TypeError : public std::runtime_error {
 public:
  enum class Kind {
    kMismatch,
    kOccursCheck,
    kUnboundVariable,
    kArityMismatch,
    kPopOnEmpty,
    kNotCallable,
    kUnknownConstant,
    kNotAnImplication,
  };

  TypeError(Kind kind, const std::string& message, std::string expected = {},
            std::string found = {}, const TermNode* node = nullptr);

  Kind kind() const { return kind_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }
  // The segment at which checking failed, if known.
  const TermNode* node() const { return node_; }
  void set_node(const TermNode* n) { node_ = n; }

 private:
  Kind kind_;
  std::string expected_;
  std::string found_;
  const TermNode* node_;
};

// Base types and constant types. Literals are typed by the built-in bases Z
// and B.
class Signature {
 public:
  static const Signature& Default();

  // Lines `base Name` and `const name : type`; `#` starts a comment.
  static Signature Parse(std::string_view src);

  void AddBase(const std::string& name) { bases_.insert(name); }
  void AddConst(const std::string& name, TypeRef type);

  bool HasBase(const std::string& name) const { return bases_.count(name); }
  const TypeRef* ConstType(const std::string& name) const;
  TypeRef LiteralType(const ConstSym& sym) const;

  // Throws TypeError naming the first undeclared base type in `t`.
  void Validate(const TypeRef& t) const;

 private:
  std::set<std::string> bases_;
  std::map<std::string, TypeRef> consts_;
};

struct Substitution {
  std::unordered_map<int, TypeRef> vars;
  std::unordered_map<int, TypeVector> rows;
};

class UnifyError : public std::runtime_error {
 public:
  enum class Kind { kClash, kOccurs };
  UnifyError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind(kind) {}
  Kind kind;
};

// Most general unifiers over base types, arrows and vectors with row tails.
class Unifier {
 public:
  Unifier() = default;

  // Makes fresh ids larger than every id occurring in `t`.
  void Reserve(const TypeRef& t);

  int FreshVar() { return next_var_++; }
  int FreshRow() { return next_row_++; }
  int FreshFrame() { return next_frame_++; }
  // The row standing for location `l` of frame `f`.
  int FrameRow(int f, const Location& l);

  TypeRef Shallow(const TypeRef& t) const;
  TypeVector Expand(const TypeVector& v) const;
  TypeRef Zonk(const TypeRef& t) const;
  TypeVector ZonkVector(const TypeVector& v) const;

  void Unify(const TypeRef& a, const TypeRef& b);
  void UnifyVector(const TypeVector& a, const TypeVector& b);

  void BindVar(int v, const TypeRef& t);
  void BindRow(int r, const TypeVector& v);

  const Substitution& substitution() const { return sub_; }

  // A copy of `t` with every variable and row renamed apart.
  TypeRef Instantiate(const TypeRef& t);

 private:
  // The rows of `s`'s frame at locations `s` leaves out.
  std::vector<TypeVector> FrameVectors(const TypeRef& s) const;
  bool OccursVar(int v, const TypeRef& t) const;
  bool OccursRow(int r, const TypeRef& t) const;
  bool OccursRowIn(int r, const TypeVector& v) const;

  Substitution sub_;
  int next_var_ = 0;
  int next_row_ = 0;
  int next_frame_ = 0;
  std::map<std::pair<int, Location>, int> frame_rows_;
};

Substitution Unify(const TypeRef& a, const TypeRef& b);

// A typing derivation following the structure of the term: one step per
// segment of the top-level sequence.
struct Derivation;
using DerivRef = std::shared_ptr<const Derivation>;

struct DerivStep {
  TermKind kind = TermKind::kNil;
  // Push: the argument's type. Pop: the binder's type. Var: the callee's
  // type. Const: the instance of the constant's type.
  TypeRef type;
  // Push with an argument other than a bare variable or literal.
  DerivRef arg;
};

struct Derivation {
  Term term;
  Context ctx;
  TypeRef type;
  std::vector<DerivStep> steps;
};

struct InferResult {
  TypeRef type;
  DerivRef derivation;
};

// Principal-style inference with per-location row variables.
InferResult Infer(const Context& ctx, const Term& t,
                  const Signature& sig = Signature::Default());

// Checks `t` against `ty` and returns a derivation whose types are ground:
// leftover rows become empty and leftover type variables become `>`.
DerivRef Check(const Context& ctx, const Term& t, const TypeRef& ty,
               const Signature& sig = Signature::Default());

// Replaces rows by the empty vector and type variables by `>`.
TypeRef Ground(const TypeRef& t);
TypeRef GroundScheme(const InferResult& r);

bool Typechecks(const Context& ctx, const Term& t, const TypeRef& ty,
                const Signature& sig = Signature::Default());

}  // namespace fmc

#endif  // FMC_TYPES_H_
