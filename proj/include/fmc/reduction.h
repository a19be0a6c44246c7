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

#ifndef FMC_REDUCTION_H_
#define FMC_REDUCTION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmc/syntax.h"

namespace fmc {

// Directions from the root: kCont follows the continuation, kArg enters the
// argument of a push.
enum class Dir : unsigned char { kCont, kArg };
using Path = std::vector<Dir>;

struct Redex {
  enum class Kind { kBeta, kEta };

  Kind kind = Kind::kBeta;
  // Position of the push (beta) or the pop (eta) opening the redex.
  Path path;
  // Number of frames strictly between the two ends.
  std::size_t head_len = 0;
  Location loc;
  // Beta: the variable bound by the closing pop. Eta: the opening binder.
  std::string var;
};

class StaleRedex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Redexes in pre-order: a node, then its argument, then its continuation.
std::vector<Redex> BetaRedexes(const Term& t);
std::vector<Redex> EtaRedexes(const Term& t);

// The redex opening at `node`, if any.
std::optional<Redex> BetaAt(const Term& node);
std::optional<Redex> EtaAt(const Term& node);

const Term& SubtermAt(const Term& t, const Path& p);
Term ReplaceAt(const Term& t, const Path& p, const Term& replacement);

// Contracts `r` in `t`. Binders of the head context that would capture a
// free variable of the argument are renamed first.
Term ReduceAt(const Term& t, const Redex& r);

enum class Strategy { kLeftmostOutermost, kRightmostInnermost };

struct NormalizeResult {
  enum class Status { kNormalForm, kFuelExhausted };
  Status status = Status::kNormalForm;
  Term term;
  std::size_t steps = 0;
  bool ok() const { return status == Status::kNormalForm; }
};

NormalizeResult Normalize(const Term& t,
                          Strategy s = Strategy::kLeftmostOutermost,
                          std::size_t fuel = 1000, bool eta = false);

struct ReductionGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Redex redex;
  };

  // nodes[0] is the root.
  std::vector<Term> nodes;
  std::vector<Edge> edges;
  std::map<std::string, std::size_t> index;

  std::vector<std::size_t> NormalForms() const;
  std::vector<std::vector<std::size_t>> Successors() const;
};

// Exhaustive one-step beta expansion up to `node_bound` distinct nodes.
ReductionGraph BuildReductionGraph(const Term& t, std::size_t node_bound,
                                   bool eta = false);

// Every node reaches one and the same normal form.
bool ConfluentOn(const ReductionGraph& g);

// Length of the longest path from the root; nullopt when the graph has a
// cycle.
std::optional<std::size_t> LongestPath(const ReductionGraph& g);

std::string ToDot(const ReductionGraph& g);

// Equality up to alpha and swapping adjacent frames on distinct locations,
// closed under contexts.
bool PermEq(const Term& a, const Term& b);

// Renames every binder to a distinct fresh name.
Term RenameApart(const Term& t);

}  // namespace fmc

#endif  // FMC_REDUCTION_H_
