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


#ifndef FMC_EQUIVALENCE_H_
#define FMC_EQUIVALENCE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmc/generate.h"
#include "fmc/machine.h"
#include "fmc/syntax.h"
#include "fmc/types.h"

namespace fmc {

// Stack types on the main location, bottom first.
using Vec = std::vector<TypeRef>;

namespace ccc {

Term Bang(const Vec& t);                  // <?x>              : ?t >
Term Delta(const Vec& t);                 // <?x>.[!x].[!x]    : ?t > !t!t
Term Pi1(const Vec& u, const Vec& t);     // <?x>.<?y>.[!x]    : ?t?u > !t
Term Pi2(const Vec& u, const Vec& t);     // <?x>.<?y>.[!y]    : ?t?u > !u
Term Eps(const Vec& s, const Vec& t);     // <z>.z             : (?s>!t)?s > !t
Term EtaCurry(const Vec& s, const Vec& t);  // <?x>.[[!x]]     : ?t > (?s>!s!t)
Term Hom(const Term& m, const Term& n, const Vec& s, const Vec& t);
// Δ ; (N × M): N's outputs end up on top.
Term Pair(const Term& n, const Term& m, const Vec& s, const Vec& t_of_n);
// <?x>.[[!x].M] with x : r.
Term Curry(const Term& m, const Vec& r);
// M acting on the top of the stack.
Term TensorLeft(const Term& m, const Vec& t);
// <?x>.M.[!x]: M acting below the top items t.
Term TensorRight(const Vec& t, const Term& m);

}  // namespace ccc

enum class Law {
  kBeta,
  kInterchange,
  kDiagonal,
  kTerminal,
  kEtaFirstOrder,
  kEtaHigherOrder,
};

enum class DerivedLaw {
  kPairFirst,
  kPairSecond,
  kProductUniqueness,
  kExponentExistence,
  kExponentUniqueness,
};

const char* LawName(Law law);
const char* DerivedLawName(DerivedLaw law);
std::vector<Law> AllLaws();
std::vector<DerivedLaw> AllDerivedLaws();

struct LawInstance {
  std::string name;
  Term lhs;
  Term rhs;
  TypeRef type;
};

// Instances with closed random bindings drawn with `opts`. Locations other
// than the main one are not used.
LawInstance RandomLawInstance(Law law, Rng& rng, const GenOptions& opts);
LawInstance RandomDerivedInstance(DerivedLaw law, Rng& rng,
                                  const GenOptions& opts);

struct TestBudget {
  // Size bound for enumerated input terms.
  std::size_t k = 7;
  // Input memories tried per comparison.
  std::size_t max_inputs = 64;
  // Candidates per input item.
  std::size_t per_item = 8;
  // Nesting of comparisons at implication type.
  int depth = 2;
  std::size_t fuel = 100000;
  std::uint64_t seed = 0;
};

struct EquivResult {
  enum class Verdict { kNotDistinguished, kDistinguished, kIllTyped };

  Verdict verdict = Verdict::kNotDistinguished;
  std::size_t tests = 0;
  // For Distinguished: the input memory and both observations.
  std::string witness;
  std::string left;
  std::string right;
};

const char* VerdictName(EquivResult::Verdict v);

EquivResult MachineEquiv(const Term& a, const Term& b, const TypeRef& type,
                         const TestBudget& budget = {},
                         const Signature& sig = Signature::Default());

struct EqnResult {
  enum class Verdict { kProved, kRefuted, kUnknown };

  Verdict verdict = Verdict::kUnknown;
  // How a proof was found, or why none was.
  std::string trace;
  EquivResult equiv;
};

const char* EqnVerdictName(EqnResult::Verdict v);

EqnResult EqnCheck(const Term& a, const Term& b, const TypeRef& type,
                   const TestBudget& budget = {},
                   const Signature& sig = Signature::Default());

}  // namespace fmc

#endif  // FMC_EQUIVALENCE_H_
