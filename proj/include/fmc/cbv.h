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


#ifndef FMC_CBV_H_
#define FMC_CBV_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/machine.h"
#include "fmc/syntax.h"

namespace fmc {
namespace cbv {

// A call-by-value language with input/output, global cells and two kinds of
// binary choice.
struct Node;
using CbvTerm = std::shared_ptr<const Node>;

struct Node {
  enum class Kind {
    kVar,
    kInt,
    kApp,        // left right
    kLam,        // \name.left
    kRead,
    kWrite,      // write left; right
    kAssign,     // name := left; right
    kDeref,      // !name
    kProbSum,    // left (+) right
    kNondetSum,  // left + right
  };

  Kind kind = Kind::kVar;
  std::string name;
  std::int64_t value = 0;
  CbvTerm left;
  CbvTerm right;
};

CbvTerm Var(std::string x);
CbvTerm Int(std::int64_t n);
CbvTerm App(CbvTerm fun, CbvTerm arg);
CbvTerm Lam(std::string x, CbvTerm body);
CbvTerm Read();
CbvTerm Write(CbvTerm value, CbvTerm then);
CbvTerm Assign(std::string cell, CbvTerm value, CbvTerm then);
CbvTerm Deref(std::string cell);
CbvTerm ProbSum(CbvTerm l, CbvTerm r);
CbvTerm NondetSum(CbvTerm l, CbvTerm r);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `\x.M`, `M N`, integers, `read`, `write N; M`, `c := N; M`, `!c`,
// `N (+) M` and `N + M`. Sums associate to the left and bind looser than
// application.
CbvTerm Parse(std::string_view src);
std::string Print(const CbvTerm& t);

// Cells mentioned by `!c` or `c := ...`.
std::set<std::string> Cells(const CbvTerm& t);

// Reserved locations of the encoding.
inline const char* const kIn = "in";
inline const char* const kOut = "out";
inline const char* const kRnd = "rnd";
inline const char* const kNd = "nd";

// The value encoding. When `declared` is given, every cell must be in it;
// cells may never reuse a reserved location name.
Term Encode(const CbvTerm& t,
            const std::optional<std::set<std::string>>& declared = std::nullopt);

// The machine term a value is pushed as: `n` for an integer, `<x>.M'` for
// an abstraction. Throws for non-values.
Term EncodeValue(const CbvTerm& v);

bool IsValue(const CbvTerm& t);

// Inputs to a run. Streams list their head first; `true` on rnd or nd picks
// the left operand.
struct Config {
  std::vector<CbvTerm> input;
  std::vector<bool> rnd;
  std::vector<bool> nd;
  std::map<std::string, CbvTerm> store;
};

struct Outcome {
  enum class Status { kValue, kStuck, kFuelExhausted };

  Status status = Status::kValue;
  CbvTerm value;
  std::vector<CbvTerm> output;
  std::map<std::string, CbvTerm> store;
  std::size_t remaining_input = 0;
  std::string error;
};

// Big-step reference semantics by substitution.
Outcome Evaluate(const CbvTerm& t, const Config& cfg,
                 std::size_t fuel = 100000);

// The machine memory corresponding to `cfg`.
Memory ToMemory(const Config& cfg);

// Runs the encoding on the machine and compares result, output and store
// with the reference semantics. Empty on agreement, otherwise a description
// of the first difference.
std::optional<std::string> CompareWithMachine(const CbvTerm& t,
                                              const Config& cfg);

struct GenOptions {
  std::size_t max_size = 12;
  std::vector<std::string> cells{"c", "d"};
};

// A closed program of integer type together with inputs that are long
// enough for any run.
struct Program {
  CbvTerm term;
  Config config;
};

Program RandomProgram(std::mt19937_64& rng, const GenOptions& opts);

}  // namespace cbv
}  // namespace fmc

#endif  // FMC_CBV_H_
