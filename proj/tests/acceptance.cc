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

// One line per acceptance criterion. Exit status is nonzero if any criterion
// fails, except the ones listed in kKnownFailures.

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fmc/bridge.h"
#include "fmc/cbv.h"
#include "fmc/equivalence.h"
#include "fmc/generate.h"
#include "fmc/lambda.h"
#include "fmc/machine.h"
#include "fmc/measure.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"
#include "fmc/types.h"

namespace fmc {
namespace {

// Budgets and tolerances.
constexpr auto kGoldenRunBudget = std::chrono::milliseconds(10);
constexpr std::size_t kCbvFuel = 1000;
constexpr int kSnTerms = 1000;
constexpr std::size_t kSnMaxSize = 20;
constexpr std::size_t kFinitenessBound = 100000;
constexpr std::size_t kConfluenceBound = 10000;
constexpr double kSnSeconds = 60.0;
constexpr int kLemmaInstances = 200;
constexpr int kLemmaPoints = 50;
constexpr std::size_t kRunLengthMaxSize = 12;
constexpr int kLawInstances = 200;
constexpr int kDerivedInstances = 100;
constexpr std::size_t kLawBudget = 7;
constexpr int kRoundTrips = 500;
constexpr int kLambdaMaxSize = 15;
constexpr double kRoundTripSeconds = 120.0;
constexpr int kFuzzTerms = 10000;

// Criterion ids whose failure is analysed and expected; see README.
const std::set<std::string> kKnownFailures = {"4b"};

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Report {
  int failures = 0;

  void Line(const std::string& id, bool ok, const std::string& what) {
    bool known = kKnownFailures.count(id) > 0;
    fmt::print("{} {:<3} {}{}\n", ok ? "PASS" : "FAIL", id, what,
               !ok && known ? "  [expected failure]" : "");
    std::fflush(stdout);
    if (!ok && !known) ++failures;
  }
};

const char kEx2[] = "rnd<x>.[x].c<y>.[y].+.<z>.[z]c";
const char kCounter[] = "[<x>.[x]out.[x].[1].+].<f>.[0].f.f.f";

void Criterion1(Report& r) {
  Memory m = ParseMemory("rnd = 9 7 3 ; c = 5");
  Term t = ParseTerm(kEx2);
  auto t0 = Clock::now();
  Trace tr = TraceRun(m, t);
  auto elapsed = Clock::now() - t0;
  const Memory& fin = tr.states.back().memory;
  bool ok = tr.status == RunResult::Status::kTerminal &&
            tr.states.size() == 8 && PrintStack(fin.at(Location("c"))) == "8" &&
            fin.at(Location::Main()).empty() &&
            PrintStack(fin.at(Location("rnd"))) == "9 7" &&
            elapsed < kGoldenRunBudget;
  r.Line("1", ok,
         fmt::format("golden run: {} transitions, final {}, {:.3f} ms",
                     tr.states.size() - 1, PrintMemory(fin),
                     std::chrono::duration<double, std::milli>(elapsed).count()));
}

void Criterion2(Report& r) {
  RunResult run = Run(Memory{}, ParseTerm("[4].[3].[2].+.mul.[1].+"));
  std::string fin = PrintMemory(run.final());
  r.Line("2", run.ok() && fin == "λ = 21", "arithmetic: " + fin);
}

void Criterion3(Report& r) {
  bool golden =
      Typechecks({}, ParseTerm(kEx2), ParseType("rnd(Z) c(Z) > c(Z)")) &&
      Typechecks({}, ParseTerm(kCounter), ParseType("> out(Z Z Z) Z"));
  struct Mutant {
    const char* term;
    const char* type;
  };
  const Mutant mutants[] = {
      {"c<x>.[x].c<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)"},
      {"rnd<x>.[x].rnd<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)"},
      {"rnd<x>.[x].c<y>.[y].+.<z>.[z]rnd", "rnd(Z) c(Z) > c(Z)"},
      {"rnd<x>.[x].c<y>.[y].+.[z]c", "rnd(Z) c(Z) > c(Z)"},
      {"[x].c<y>.[y].+.<z>.[z]c", "rnd(Z) c(Z) > c(Z)"},
      {"rnd<x>.[x].c<y>.[y].+.<z>", "rnd(Z) c(Z) > c(Z)"},
      {"[<x>.[x]c.[x].[1].+].<f>.[0].f.f.f", "> out(Z Z Z) Z"},
      {"[<x>.[x]out.[1].+].<f>.[0].f.f.f", "> out(Z Z Z) Z"},
      {"[<x>.[x]out.[x].[1].+].[0].f.f.f", "> out(Z Z Z) Z"},
  };
  int rejected = 0;
  int positioned = 0;
  for (const auto& m : mutants) {
    ParsedTerm p = ParseTermWithSpans(m.term);
    try {
      Check({}, p.term, ParseType(m.type));
    } catch (const TypeError& e) {
      ++rejected;
      if (e.node() && p.spans.count(e.node())) ++positioned;
    }
  }
  int n = static_cast<int>(std::size(mutants));
  r.Line("3", golden && rejected == n && positioned == n,
         fmt::format("typing goldens {}, mutants rejected {}/{}, "
                     "positioned {}/{}",
                     golden ? "accepted" : "REJECTED", rejected, n, positioned,
                     n));
}

void Criterion4(Report& r) {
  cbv::CbvTerm src = cbv::Parse("(\\f. f (f 0)) (\\x. write x; !c)");
  Term enc = cbv::Encode(src);
  NormalizeResult nf = Normalize(enc, Strategy::kLeftmostOutermost, kCbvFuel);
  bool alpha = nf.ok() && AlphaEq(nf.term, ParseTerm("[0]out.c<y>.[y]out.[y]c.[y]"));
  r.Line("4a", alpha,
         fmt::format("CBV normal form in {} steps: {}", nf.steps,
                     PrintTerm(nf.term)));
  auto want = [](const RunResult& run) {
    const Memory& m = run.final();
    return run.ok() && PrintStack(m.at(Location("out"))) == "0 0" &&
           PrintStack(m.at(Location("c"))) == "0";
  };
  RunResult empty = Run(Memory{}, enc);
  r.Line("4b", want(empty),
         fmt::format("run from empty memory: {}, memory {}",
                     empty.ok() ? "terminal" : empty.reason->Describe(),
                     PrintMemory(empty.final())));
  RunResult seeded = Run(ParseMemory("c = 0"), enc);
  r.Line("4c", want(seeded),
         fmt::format("run from c = 0: memory {}", PrintMemory(seeded.final())));
}

void Criteria5And6(Report& r) {
  Rng rng(2026);
  GenOptions opts;
  opts.max_size = kSnMaxSize;
  auto t0 = Clock::now();
  int decrease_fail = 0, depth_fail = 0, infinite = 0, confluence_fail = 0;
  int confluence_checked = 0, with_redex = 0;
  std::size_t max_nodes = 0, edges = 0;
  for (int i = 0; i < kSnTerms; ++i) {
    TypedTerm t = RandomTypedTerm(rng, opts);
    ReductionGraph g;
    try {
      g = BuildReductionGraph(t.term, kFinitenessBound);
    } catch (const BoundExceeded&) {
      ++infinite;
      continue;
    }
    max_nodes = std::max(max_nodes, g.nodes.size());
    edges += g.edges.size();
    if (!g.edges.empty()) ++with_redex;
    std::vector<Count> m;
    m.reserve(g.nodes.size());
    for (const auto& n : g.nodes) m.push_back(Measure(Check({}, n, t.type)));
    bool dec = true;
    for (const auto& e : g.edges) dec = dec && m[e.to] < m[e.from];
    if (!dec) ++decrease_fail;
    auto depth = LongestPath(g);
    if (!depth) {
      ++infinite;
    } else if (*depth > m[0]) {
      ++depth_fail;
    }
    if (g.nodes.size() <= kConfluenceBound) {
      ++confluence_checked;
      if (!ConfluentOn(g)) ++confluence_fail;
    }
  }
  double secs = Since(t0);
  bool in_time = secs < kSnSeconds;
  r.Line("5a", decrease_fail == 0 && in_time,
         fmt::format("{} terms ({} reducible, {} beta edges): {} with a "
                     "non-decreasing beta step",
                     kSnTerms, with_redex, edges, decrease_fail));
  r.Line("5b", depth_fail == 0 && in_time,
         fmt::format("graph depth above measure: {}", depth_fail));
  r.Line("5c", infinite == 0 && in_time,
         fmt::format("infinite or cyclic graphs: {}, largest {} nodes, {:.1f} s",
                     infinite, max_nodes, secs));
  r.Line("6", confluence_fail == 0 && confluence_checked > 0,
         fmt::format("{} graphs checked, {} with more than one normal form",
                     confluence_checked, confluence_fail));
}

void Criterion7(Report& r) {
  GenOptions opts;
  using Fn = std::function<LemmaOutcome(Rng&, const GenOptions&, int)>;
  const std::pair<const char*, Fn> lemmas[] = {
      {"sequencing", CheckSequencing},
      {"substitution", CheckSubstitution},
      {"permutation", CheckPermutation},
  };
  std::string detail;
  bool all = true;
  for (const auto& [name, fn] : lemmas) {
    Rng rng(42);
    int fails = 0;
    long points = 0;
    for (int i = 0; i < kLemmaInstances; ++i) {
      LemmaOutcome o = fn(rng, opts, kLemmaPoints);
      points += o.points;
      if (!o.ok) {
        ++fails;
        if (fails == 1) fmt::print("  {} counterexample: {}\n", name, o.instance);
      }
    }
    all = all && fails == 0 && points >= long{kLemmaInstances} * kLemmaPoints;
    detail += fmt::format("{}{} {} fails/{} points", detail.empty() ? "" : ", ",
                          name, fails, points);
  }
  r.Line("7", all, "measure lemmas: " + detail);
}

void Criterion8(Report& r) {
  auto t0 = Clock::now();
  std::size_t total = 0, typed = 0, mismatches = 0;
  EnumerateClosedTerms(kRunLengthMaxSize, {}, [&](const Term& t) {
    ++total;
    InferResult inf;
    try {
      inf = Infer({}, t);
    } catch (const TypeError&) {
      return;
    }
    ++typed;
    TypeRef ty = GroundScheme(inf);
    RunResult run = Run(LeastMemory(ty), t);
    if (!run.ok() || run.steps != MeasureVariant(Check({}, t, ty))) {
      if (++mismatches == 1) fmt::print("  mismatch: {}\n", PrintTerm(t));
    }
  });
  r.Line("8", mismatches == 0 && typed > 0,
         fmt::format("run length: {} terms enumerated, {} typed, {} "
                     "mismatches, {:.1f} s",
                     total, typed, mismatches, Since(t0)));
}

void Criterion9(Report& r) {
  GenOptions opts;
  opts.constants = true;
  TestBudget budget;
  budget.k = kLawBudget;
  Rng rng(9);
  auto t0 = Clock::now();
  std::string bad;
  for (Law law : AllLaws()) {
    int fails = 0;
    for (int i = 0; i < kLawInstances; ++i) {
      LawInstance li = RandomLawInstance(law, rng, opts);
      EquivResult v = MachineEquiv(li.lhs, li.rhs, li.type, budget);
      if (v.verdict != EquivResult::Verdict::kNotDistinguished) ++fails;
    }
    if (fails) bad += fmt::format(" {}:{}", LawName(law), fails);
  }
  for (DerivedLaw law : AllDerivedLaws()) {
    int fails = 0;
    for (int i = 0; i < kDerivedInstances; ++i) {
      LawInstance li = RandomDerivedInstance(law, rng, opts);
      EquivResult v = MachineEquiv(li.lhs, li.rhs, li.type, budget);
      if (v.verdict != EquivResult::Verdict::kNotDistinguished) ++fails;
    }
    if (fails) bad += fmt::format(" {}:{}", DerivedLawName(law), fails);
  }
  r.Line("9", bad.empty(),
         fmt::format("laws {}x{}, derived {}x{} at k={}: {}, {:.1f} s",
                     AllLaws().size(), kLawInstances, AllDerivedLaws().size(),
                     kDerivedInstances, kLawBudget,
                     bad.empty() ? "none distinguished" : "failed" + bad,
                     Since(t0)));
}

void Criterion10(Report& r) {
  std::mt19937_64 rng(10);
  lam::GenOptions opts;
  opts.max_size = kLambdaMaxSize;
  auto t0 = Clock::now();
  int fails = 0;
  for (int i = 0; i < kRoundTrips; ++i) {
    lam::Generated g = lam::RandomTerm(rng, opts);
    OrderedContext ctx(g.ctx.begin(), g.ctx.end());
    try {
      if (!LambdaRoundTrip(ctx, g.term).equal) ++fails;
    } catch (const std::exception&) {
      ++fails;
    }
  }
  double secs = Since(t0);
  r.Line("10", fails == 0 && secs < kRoundTripSeconds,
         fmt::format("{} lambda round trips, {} failures, {:.1f} s",
                     kRoundTrips, fails, secs));
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Arbitrary, usually ill-typed, terms.
class RawTerms {
 public:
  explicit RawTerms(Rng& rng) : rng_(rng) {}

  Term Gen(int budget) {
    Term acc = Nil();
    int n = Int(0, 5);
    for (int i = 0; i < n && budget > 0; ++i) {
      switch (Int(0, 3)) {
        case 0:
          acc = Var(Name(), acc);
          break;
        case 1:
          acc = Pop(Loc(), Name(), acc, Int(0, 3) == 0 ? Type(2) : nullptr);
          break;
        case 2:
          acc = Push(Gen(budget / 2), Loc(), acc);
          break;
        default:
          acc = Const(Sym(), acc);
          break;
      }
      --budget;
    }
    return acc;
  }

 private:
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::string Name() {
    static const char* names[] = {"x", "y", "f", "x1", "g2", "arg"};
    return names[Int(0, 5)];
  }
  Location Loc() {
    static const char* locs[] = {"c", "out", "rnd", "in"};
    int i = Int(0, 5);
    return i < 4 ? Location(locs[i]) : Location::Main();
  }
  ConstSym Sym() {
    switch (Int(0, 3)) {
      case 0:
        return ConstSym::Int(Int(-3, 40));
      case 1:
        return ConstSym::Bool(Int(0, 1));
      case 2:
        return *BuiltinOperator("+");
      default:
        return *BuiltinOperator("mul");
    }
  }
  TypeRef Type(int depth) {
    if (depth <= 0 || Int(0, 2) == 0) return BaseType(Int(0, 1) ? "Z" : "B");
    MemoryType in, out;
    for (int k = Int(0, 2); k > 0; --k)
      in.vecs[Loc()].items.push_back(Type(depth - 1));
    for (int k = Int(0, 2); k > 0; --k)
      out.vecs[Loc()].items.push_back(Type(depth - 1));
    return Normalize(Arrow(std::move(in), std::move(out)));
  }

  Rng& rng_;
};

void Criterion11(Report& r, const std::filesystem::path& corpus) {
  int files = 0, corpus_fail = 0;
  for (const auto& e : std::filesystem::directory_iterator(corpus)) {
    std::string ext = e.path().extension().string();
    std::string src = Slurp(e.path());
    bool ok = true;
    try {
      if (ext == ".fmc") {
        std::string once = PrintTerm(ParseTerm(src), PrintOptions{true});
        ok = PrintTerm(ParseTerm(once), PrintOptions{true}) == once;
      } else if (ext == ".lam") {
        std::string once = lam::PrintTerm(lam::ParseTerm(src));
        ok = lam::PrintTerm(lam::ParseTerm(once)) == once;
      } else if (ext == ".cbv") {
        std::string once = cbv::Print(cbv::Parse(src));
        ok = cbv::Print(cbv::Parse(once)) == once;
      } else {
        continue;
      }
    } catch (const std::exception& ex) {
      fmt::print("  {}: {}\n", e.path().filename().string(), ex.what());
      ok = false;
    }
    ++files;
    if (!ok) ++corpus_fail;
  }
  Rng rng(11);
  RawTerms raw(rng);
  GenOptions typed;
  typed.locations = {Location::Main(), Location("c"), Location("out")};
  typed.constants = true;
  int fuzz_fail = 0;
  for (int i = 0; i < kFuzzTerms; ++i) {
    Term t = i % 2 ? raw.Gen(12) : RandomTypedTerm(rng, typed).term;
    for (bool annotate : {false, true}) {
      std::string once = PrintTerm(t, PrintOptions{annotate});
      try {
        Term back = ParseTerm(once);
        if (PrintTerm(back, PrintOptions{annotate}) != once ||
            (annotate && !AlphaEq(back, t))) {
          if (++fuzz_fail == 1) fmt::print("  not a fixpoint: {}\n", once);
        }
      } catch (const ParseError& e) {
        if (++fuzz_fail == 1) fmt::print("  {}: {}\n", once, e.what());
      }
    }
  }
  r.Line("11", files > 0 && corpus_fail == 0 && fuzz_fail == 0,
         fmt::format("print/parse fixpoint: corpus {}/{} files, fuzz {} "
                     "terms with {} failures",
                     files - corpus_fail, files, kFuzzTerms, fuzz_fail));
}

}  // namespace
}  // namespace fmc

int main(int argc, char** argv) {
  std::filesystem::path corpus = argc > 1 ? argv[1] : FMC_CORPUS;
  fmc::Report r;
  fmc::Criterion1(r);
  fmc::Criterion2(r);
  fmc::Criterion3(r);
  fmc::Criterion4(r);
  fmc::Criteria5And6(r);
  fmc::Criterion7(r);
  fmc::Criterion8(r);
  fmc::Criterion9(r);
  fmc::Criterion10(r);
  fmc::Criterion11(r, corpus);
  return r.failures == 0 ? 0 : 1;
}
