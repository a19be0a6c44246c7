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


#ifndef FMC_MEASURE_H_
#define FMC_MEASURE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fmc/generate.h"
#include "fmc/type_syntax.h"
#include "fmc/types.h"

namespace fmc {

// Counts saturate at the maximum value instead of wrapping.
using Count = std::uint64_t;
Count SatAdd(Count a, Count b);

struct SnValue;
using SemStack = std::vector<SnValue>;
using SemMemory = std::map<Location, SemStack>;

// An element of the domain of a type: the single point for base types, or a
// functional that consumes its inputs from a memory, leaves its outputs there
// and returns its count.
struct SnValue {
  enum class Kind { kUnit, kFunctional };
  using Fn = std::function<Count(SemMemory&)>;

  Kind kind = Kind::kUnit;
  TypeRef type;
  std::shared_ptr<const Fn> fn;

  static SnValue Unit(TypeRef t);
  static SnValue Functional(TypeRef t, Fn fn);

  // Runs the functional on `m` in place; Unit values count 0.
  Count Apply(SemMemory& m) const;
};

using Valuation = std::map<std::string, SnValue>;

enum class PushClause {
  // A push adds one plus the collapse of the pushed value.
  kCollapse,
  // A push adds one.
  kRunLength,
};

SnValue Least(const TypeRef& t);
// Least values for the input side of an implication.
SemMemory LeastInputs(const TypeRef& t);
Valuation LeastValuation(const Context& ctx);

SnValue Interpret(const DerivRef& d, const Valuation& v,
                  PushClause clause = PushClause::kCollapse);

struct Applied {
  Count count = 0;
  SemMemory out;
};
Applied Apply(const SnValue& f, SemMemory in);

// The count of `f` on least inputs.
Count Collapse(const SnValue& f);

// Collapse of the interpretation under the least valuation.
Count Measure(const DerivRef& d);
Count MeasureVariant(const DerivRef& d);

// Sampled elements: least values, constant shifts, counting functionals and
// interpretations of small inhabitants with a shift.
SnValue SampleValue(const TypeRef& t, Rng& rng, int depth);
SemMemory SampleInputs(const TypeRef& t, Rng& rng, int depth);

// Equality and order tested at sampled inputs, recursing into outputs up to
// `depth` levels of implication.
bool SampledEqual(const SnValue& a, const SnValue& b, Rng& rng, int samples,
                  int depth);
bool SampledMemoryEqual(const SemMemory& a, const SemMemory& b, Rng& rng,
                        int samples, int depth);
bool SampledLeq(const SnValue& a, const SnValue& b, Rng& rng, int samples,
                int depth);
bool SampledMemoryLeq(const SemMemory& a, const SemMemory& b, Rng& rng,
                      int samples, int depth);

// Sampled checks of the interpretation's algebraic lemmas on one random
// instance each. `ok` is false on the first sampled point that differs.
struct LemmaOutcome {
  bool ok = true;
  // Sampled points compared.
  int points = 0;
  std::string instance;
};

// ⟦N;M⟧(s) against ⟦N⟧ then ⟦M⟧ with the counts added.
LemmaOutcome CheckSequencing(Rng& rng, const GenOptions& opts, int samples);
// ⟦{N/x}M⟧ against ⟦M⟧ with x valued at ⟦N⟧.
LemmaOutcome CheckSubstitution(Rng& rng, const GenOptions& opts, int samples);
// ⟦M⟧ against ⟦M'⟧ for M' obtained by swapping independent segments on
// distinct locations.
LemmaOutcome CheckPermutation(Rng& rng, const GenOptions& opts, int samples);

}  // namespace fmc

#endif  // FMC_MEASURE_H_
