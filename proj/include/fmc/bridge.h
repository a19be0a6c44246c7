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


#ifndef FMC_BRIDGE_H_
#define FMC_BRIDGE_H_

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmc/lambda.h"
#include "fmc/syntax.h"
#include "fmc/types.h"

namespace fmc {

class BridgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Types. An FMC implication `?s > !t` on the main location becomes
// `S -> T` where S and T are the products of the items, bottom first; a
// single item stands for itself and no items for the unit.
lam::TypeRef ToLambdaType(const TypeRef& t);
lam::TypeRef ToLambdaVector(const std::vector<TypeRef>& items);

// A λ-type as a sequence of FMC stack items, bottom first.
std::vector<TypeRef> ToFmcVector(const lam::TypeRef& t);
TypeRef ToFmcType(const lam::TypeRef& t);

// Assigns a λ-term to each FMC variable in scope.
using LambdaValuation = std::map<std::string, lam::TermRef>;

// Runs a main-location derivation symbolically. `stack` holds λ-terms for
// the input items, bottom first; the result is the output stack.
std::vector<lam::TermRef> RunToLambda(const Derivation& d,
                                      const LambdaValuation& v,
                                      std::vector<lam::TermRef> stack);

// The output stack of `d` as one λ-term.
lam::TermRef FmcToLambda(const Derivation& d, const LambdaValuation& v,
                         std::vector<lam::TermRef> stack);

// A closed term at a ground main-location implication, as an open λ-term
// over variables s1, s2, ... for the input items (s1 at the bottom).
struct LambdaImage {
  lam::Context ctx;
  std::vector<std::string> inputs;
  lam::TermRef term;
  lam::TypeRef type;
};

LambdaImage FmcToLambda(const Term& t, const TypeRef& type,
                        const Signature& sig = Signature::Default());

// A λ-context in order; entries later in the list sit deeper in the FMC
// stack.
using OrderedContext = std::vector<std::pair<std::string, lam::TypeRef>>;

// The stack type of a context, bottom first.
std::vector<TypeRef> ContextVector(const OrderedContext& ctx);

// Γ ⊢ M : A as a closed FMC term of type ⟦Γ⟧ > ⟦A⟧. With `annotate`, every
// binder carries its type.
Term LambdaToFmc(const OrderedContext& ctx, const lam::TermRef& m,
                 bool annotate = false);

// The λ-terms for the stack items of a context, bottom first.
std::vector<lam::TermRef> ContextStack(const OrderedContext& ctx);

// Translates Γ ⊢ M : A to the FMC and back, and compares with M.
struct RoundTrip {
  Term fmc;
  lam::TermRef back;
  bool equal = false;
};

RoundTrip LambdaRoundTrip(const OrderedContext& ctx, const lam::TermRef& m);

// A signature declaring every base type of the λ-types involved.
Signature SignatureFor(const std::vector<lam::TypeRef>& types);

}  // namespace fmc

#endif  // FMC_BRIDGE_H_
