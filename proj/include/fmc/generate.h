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


#ifndef FMC_GENERATE_H_
#define FMC_GENERATE_H_

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "fmc/machine.h"
#include "fmc/syntax.h"
#include "fmc/type_syntax.h"
#include "fmc/types.h"

namespace fmc {

using Rng = std::mt19937_64;

struct GenOptions {
  std::vector<Location> locations{Location::Main()};
  // Nesting depth of implications in generated types.
  int type_depth = 2;
  // Longest vector generated per location.
  int vector_len = 2;
  // Allow the base type Z and integer literals.
  bool constants = false;
  // Annotate pop binders with their types.
  bool annotate = true;
  // Rough bound on the size of generated terms.
  std::size_t max_size = 20;
};

TypeRef RandomType(Rng& rng, const GenOptions& opts, int depth);
TypeRef RandomArrow(Rng& rng, const GenOptions& opts, int depth);

struct TypedTerm {
  Term term;
  TypeRef type;
  Context ctx;
};

// A term together with a ground type it checks against. Variables of `ctx`
// may occur free.
TypedTerm RandomTypedTerm(Rng& rng, const GenOptions& opts,
                          const Context& ctx = {});

// `t` itself, except that a bare literal `n` becomes `[n]`: as a push
// argument the former is the value, the latter a term producing it.
Term AsThunk(const Term& t);

// The closed term that stands for the least element of `t`: pop every input,
// push the least term of every output. `*` at `>`, the literal 0 at Z.
Term LeastTerm(const TypeRef& t);

// Input stacks of least terms for the input side of `t`.
Memory LeastMemory(const TypeRef& t);

struct EnumOptions {
  std::vector<Location> locations{Location::Main()};
  // Literals available as constants; empty for constant-free terms.
  std::vector<ConstSym> literals;
};

// Every closed term with Size at most `max_size`, binders named x0, x1, ...
// by depth. Terms of smaller size come first.
void EnumerateClosedTerms(std::size_t max_size, const EnumOptions& opts,
                          const std::function<void(const Term&)>& visit);

// Closed terms of size at most `max_size` checking against `t`, in
// enumeration order and at most `limit` of them. At base type Z the literals
// 0, 1, 2; at B both booleans.
std::vector<Term> Inhabitants(const TypeRef& t, std::size_t max_size,
                              std::size_t limit);

}  // namespace fmc

#endif  // FMC_GENERATE_H_
