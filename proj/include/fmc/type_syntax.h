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

#ifndef FMC_TYPE_SYNTAX_H_
#define FMC_TYPE_SYNTAX_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fmc/location.h"
#include "fmc/syntax.h"

namespace fmc {

// A sequence of types in stack order: items.front() is the bottom and
// items.back() the top. An optional row variable stands for an unknown
// segment below the items.
struct TypeVector {
  int row = -1;
  std::vector<TypeRef> items;

  bool has_row() const { return row >= 0; }
  bool empty() const { return row < 0 && items.empty(); }
};

// A family of type vectors indexed by location; absent locations are empty.
struct MemoryType {
  std::map<Location, TypeVector> vecs;

  const TypeVector& at(const Location& l) const;
  TypeVector& mut(const Location& l) { return vecs[l]; }
  std::set<Location> locations() const;
};

// A simple type: a base type, a type variable (inference only), or an
// implication between memory types. The input of an implication is stored in
// stack order like every other vector; the written form reverses it.
struct SimpleType {
  enum class Kind { kBase, kVar, kArrow };

  Kind kind = Kind::kBase;
  std::string name;  // kBase
  int var = -1;      // kVar
  MemoryType in;
  MemoryType out;
  // kArrow produced by inference: locations absent from `in` and `out` are
  // passed through unchanged. Otherwise absent locations are empty.
  int frame = -1;
};

TypeRef BaseType(std::string name);
TypeRef TypeVar(int id);
TypeRef Arrow(MemoryType in, MemoryType out);

// An implication touching only the main location.
TypeRef MainArrow(std::vector<TypeRef> in, std::vector<TypeRef> out);

// The empty implication ">".
TypeRef UnitArrow();

// Structural equality; vectors with no row and no items equal absent ones.
bool TypeEq(const TypeRef& a, const TypeRef& b);
bool VectorEq(const TypeVector& a, const TypeVector& b);
bool MemoryEq(const MemoryType& a, const MemoryType& b);

bool IsGround(const TypeRef& t);

// Drops entries that are empty on both sides of every implication.
TypeRef Normalize(const TypeRef& t);

std::set<Location> TypeLocations(const TypeRef& t);
std::set<std::string> BaseNames(const TypeRef& t);

// Written form: `rnd(Z) c(Z) > c(Z)`. Type variables print as 't<n> and row
// variables as ..r<n>.
std::string PrintType(const TypeRef& t);
std::string PrintVector(const TypeVector& v, bool input);

}  // namespace fmc

#endif  // FMC_TYPE_SYNTAX_H_
