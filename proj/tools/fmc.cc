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

// Command-line front end: one subcommand per invocation.
//
// Exit codes: 0 success, 1 a negative answer (e.g. `equiv` found a
// witness), 2 usage, 3 parse or type error, 4 stuck or out of fuel.

#include <fmt/core.h>

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fmc/bridge.h"
#include "fmc/cbv.h"
#include "fmc/equivalence.h"
#include "fmc/lambda.h"
#include "fmc/machine.h"
#include "fmc/measure.h"
#include "fmc/parser.h"
#include "fmc/reduction.h"
#include "fmc/types.h"

namespace fmc {
namespace {

constexpr int kUsage = 2;
constexpr int kInvalid = 3;
constexpr int kNoResult = 4;

struct UsageError {
  std::string message;
};

std::string Slurp(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw UsageError{fmt::format("cannot read {}", path)};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A positional source: a file path, `-` for stdin, or the text itself with
// `--expr`.
struct Source {
  std::string arg;
  bool expr = false;

  std::string Text() const { return expr ? arg : Slurp(arg); }
  std::string Name() const { return expr ? "<expr>" : arg; }
};

struct Common {
  std::size_t fuel = 1000000;
  std::uint64_t seed = 0;
  std::string sig_path;

  Signature Sig() const {
    if (sig_path.empty()) return Signature::Default();
    return Signature::Parse(Slurp(sig_path));
  }
};

std::string Where(const std::string& name, const SourceSpan& s) {
  return fmt::format("{}:{}:{}", name, s.line, s.column);
}

struct Loaded {
  std::string text;
  ParsedTerm parsed;
};

Loaded LoadTerm(const Source& src) {
  Loaded l;
  l.text = src.Text();
  l.parsed = ParseTermWithSpans(l.text);
  return l;
}

// Reports a type error at the segment it names.
int ReportType(const Source& src, const Loaded& l, const TypeError& e) {
  std::string at = src.Name();
  if (e.node()) {
    auto it = l.parsed.spans.find(e.node());
    if (it != l.parsed.spans.end()) at = Where(src.Name(), it->second);
  }
  std::cerr << at << ": type error: " << e.what() << "\n";
  return kInvalid;
}

DerivRef Typed(const Loaded& l, const std::string& type,
               const Signature& sig) {
  TypeRef ty = type.empty() ? GroundScheme(Infer({}, l.parsed.term, sig))
                            : ParseType(type);
  return Check({}, l.parsed.term, ty, sig);
}

Strategy ParseStrategy(const std::string& s) {
  if (s == "lo" || s == "leftmost-outermost") return Strategy::kLeftmostOutermost;
  if (s == "ri" || s == "rightmost-innermost")
    return Strategy::kRightmostInnermost;
  throw UsageError{fmt::format("unknown strategy {}", s)};
}

int Fmt(const Source& src) {
  std::cout << PrintTerm(LoadTerm(src).parsed.term, PrintOptions{true}) << "\n";
  return 0;
}

int CheckCmd(const Source& src, const std::string& type, const Common& c) {
  Loaded l = LoadTerm(src);
  try {
    Check({}, l.parsed.term, ParseType(type), c.Sig());
  } catch (const TypeError& e) {
    return ReportType(src, l, e);
  }
  std::cout << "ok\n";
  return 0;
}

int InferCmd(const Source& src, bool ground, const Common& c) {
  Loaded l = LoadTerm(src);
  try {
    InferResult r = Infer({}, l.parsed.term, c.Sig());
    std::cout << PrintType(ground ? GroundScheme(r) : r.type) << "\n";
  } catch (const TypeError& e) {
    return ReportType(src, l, e);
  }
  return 0;
}

int RunCmd(const Source& src, const std::string& mem, bool trace,
           const Common& c) {
  Term t = LoadTerm(src).parsed.term;
  Memory m = ParseMemory(mem);
  if (trace) {
    Trace tr = TraceRun(m, t, DeltaRegistry::Default(), c.fuel);
    std::cout << FormatTrace(tr);
    if (tr.status != RunResult::Status::kTerminal) return kNoResult;
    std::cout << "final: " << PrintMemory(tr.states.back().memory) << "\n";
    std::cout << "steps: " << tr.states.size() - 1 << "\n";
    return 0;
  }
  RunResult r = Run(m, t, DeltaRegistry::Default(), c.fuel);
  switch (r.status) {
    case RunResult::Status::kTerminal:
      std::cout << PrintMemory(r.final()) << "\n";
      std::cout << "steps: " << r.steps << "\n";
      return 0;
    case RunResult::Status::kStuck:
      std::cout << "Stuck after " << r.steps << " steps: "
                << r.reason->Describe() << "\n";
      return kNoResult;
    case RunResult::Status::kFuelExhausted:
      std::cout << "FuelExhausted after " << r.steps << " steps\n";
      return kNoResult;
  }
  return kNoResult;
}

int NormalizeCmd(const Source& src, const std::string& strategy, bool eta,
                 const Common& c) {
  Term t = LoadTerm(src).parsed.term;
  NormalizeResult r = Normalize(t, ParseStrategy(strategy), c.fuel, eta);
  if (!r.ok()) {
    std::cout << "FuelExhausted after " << r.steps << " steps\n";
    return kNoResult;
  }
  std::cout << PrintTerm(r.term) << "\n";
  std::cerr << "steps: " << r.steps << "\n";
  return 0;
}

int GraphCmd(const Source& src, bool dot, bool eta, std::size_t bound) {
  Term t = LoadTerm(src).parsed.term;
  ReductionGraph g;
  try {
    g = BuildReductionGraph(t, bound, eta);
  } catch (const BoundExceeded& e) {
    std::cout << "BoundExceeded: " << e.what() << "\n";
    return kNoResult;
  }
  if (dot) {
    std::cout << ToDot(g);
    return 0;
  }
  auto nfs = g.NormalForms();
  auto longest = LongestPath(g);
  std::cout << "nodes: " << g.nodes.size() << "\n";
  std::cout << "edges: " << g.edges.size() << "\n";
  std::cout << "normal forms: " << nfs.size() << "\n";
  for (std::size_t n : nfs) std::cout << "  " << PrintTerm(g.nodes[n]) << "\n";
  std::cout << "longest path: "
            << (longest ? std::to_string(*longest) : std::string("cyclic"))
            << "\n";
  std::cout << "confluent: " << (ConfluentOn(g) ? "yes" : "no") << "\n";
  return 0;
}

int MeasureCmd(const Source& src, const std::string& type, bool variant,
               const Common& c) {
  Loaded l = LoadTerm(src);
  DerivRef d;
  try {
    d = Typed(l, type, c.Sig());
  } catch (const TypeError& e) {
    return ReportType(src, l, e);
  }
  std::cout << (variant ? MeasureVariant(d) : Measure(d)) << "\n";
  return 0;
}

int EquivCmd(const Source& a, const Source& b, const std::string& type,
             std::size_t k, bool prove, const Common& c) {
  Term ta = LoadTerm(a).parsed.term;
  Term tb = LoadTerm(b).parsed.term;
  TestBudget budget;
  budget.k = k;
  budget.seed = c.seed;
  budget.fuel = c.fuel;
  Signature sig = c.Sig();
  TypeRef ty = ParseType(type);
  EquivResult r;
  if (prove) {
    EqnResult e = EqnCheck(ta, tb, ty, budget, sig);
    std::cout << EqnVerdictName(e.verdict) << "\n" << e.trace << "\n";
    r = e.equiv;
    if (e.verdict == EqnResult::Verdict::kProved) return 0;
  } else {
    r = MachineEquiv(ta, tb, ty, budget, sig);
    std::cout << VerdictName(r.verdict) << " (" << r.tests
              << (r.tests == 1 ? " test)\n" : " tests)\n");
  }
  switch (r.verdict) {
    case EquivResult::Verdict::kNotDistinguished:
      return 0;
    case EquivResult::Verdict::kDistinguished:
      std::cout << "input: " << (r.witness.empty() ? "ε" : r.witness) << "\n";
      std::cout << "left:  " << r.left << "\n";
      std::cout << "right: " << r.right << "\n";
      return 1;
    case EquivResult::Verdict::kIllTyped:
      return kUsage;
  }
  return kUsage;
}

int ToLambdaCmd(const Source& src, const std::string& type, const Common& c) {
  Loaded l = LoadTerm(src);
  LambdaImage img;
  try {
    img = FmcToLambda(l.parsed.term, ParseType(type), c.Sig());
  } catch (const TypeError& e) {
    return ReportType(src, l, e);
  }
  std::string ctx;
  for (const auto& x : img.inputs) {
    if (!ctx.empty()) ctx += ", ";
    ctx += x + ":" + lam::PrintType(img.ctx.at(x));
  }
  std::cout << ctx << (ctx.empty() ? "" : " ") << "|- "
            << lam::PrintTerm(img.term) << " : " << lam::PrintType(img.type)
            << "\n";
  return 0;
}

// `x:A, y:B -> B` splits at top-level commas.
OrderedContext ParseContext(const std::string& s) {
  OrderedContext ctx;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    auto colon = cur.find(':');
    if (colon == std::string::npos) {
      if (cur.find_first_not_of(" \t") != std::string::npos)
        throw UsageError{fmt::format("bad context entry `{}`", cur)};
      cur.clear();
      return;
    }
    std::string name = cur.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    ctx.emplace_back(name, lam::ParseType(cur.substr(colon + 1)));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += ch;
  }
  flush();
  return ctx;
}

int FromLambdaCmd(const Source& src, const std::string& ctx_text,
                  bool annotate) {
  lam::TermRef m = lam::ParseTerm(src.Text());
  OrderedContext ctx = ParseContext(ctx_text);
  lam::Context map(ctx.begin(), ctx.end());
  lam::TypeOf(map, m);
  std::cout << PrintTerm(LambdaToFmc(ctx, m, annotate),
                         PrintOptions{annotate})
            << "\n";
  return 0;
}

int EncodeCbvCmd(const Source& src, bool run, const std::string& mem,
                 const Common& c) {
  cbv::CbvTerm t = cbv::Parse(src.Text());
  Term enc = cbv::Encode(t);
  std::cout << PrintTerm(enc) << "\n";
  if (!run) return 0;
  RunResult r = fmc::Run(ParseMemory(mem), enc, DeltaRegistry::Default(),
                         c.fuel);
  if (!r.ok()) {
    std::cout << (r.status == RunResult::Status::kStuck
                      ? "Stuck: " + r.reason->Describe()
                      : std::string("FuelExhausted"))
              << "\n";
    return kNoResult;
  }
  std::cout << PrintMemory(r.final()) << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Functional machine calculus lab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Common c;
  bool expr = false;
  app.add_option("--fuel", c.fuel, "Step bound")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for sampled inputs");
  app.add_option("--sig", c.sig_path, "Signature file");
  app.add_flag("-e,--expr", expr, "Sources are given inline, not as files");

  auto source = [&](CLI::App* sub, Source& s, const char* name = "input") {
    sub->add_option(name, s.arg, "Source file, - for stdin")->required();
  };

  Source src, other;
  std::string type, mem, strategy = "lo", ctx;
  bool trace = false, ground = false, eta = false, dot = false,
       variant = false, prove = false, annotate = false, run = false;
  std::size_t budget = 7, bound = 10000;

  auto* fmt_cmd = app.add_subcommand("fmt", "Print a term in canonical form");
  source(fmt_cmd, src);

  auto* check = app.add_subcommand("check", "Check a term against a type");
  source(check, src);
  check->add_option("--type", type, "Expected type")->required();

  auto* infer = app.add_subcommand("infer", "Infer a principal type");
  source(infer, src);
  infer->add_flag("--ground", ground, "Instantiate rows and variables");

  auto* run_cmd = app.add_subcommand("run", "Run on the machine");
  source(run_cmd, src);
  run_cmd->add_option("--mem", mem, "Initial memory, e.g. \"c = 5 ; rnd = 3\"");
  run_cmd->add_flag("--trace", trace, "Print every configuration");

  auto* trace_cmd = app.add_subcommand("trace", "Run and print the trace");
  source(trace_cmd, src);
  trace_cmd->add_option("--mem", mem, "Initial memory");

  auto* norm = app.add_subcommand("normalize", "Reduce to normal form");
  source(norm, src);
  norm->add_option("--strategy", strategy, "lo or ri")->capture_default_str();
  norm->add_flag("--eta", eta, "Also contract eta redexes");

  auto* graph = app.add_subcommand("graph", "Explore the reduction graph");
  source(graph, src);
  graph->add_flag("--dot", dot, "Emit Graphviz");
  graph->add_flag("--eta", eta, "Include eta steps");
  graph->add_option("--bound", bound, "Node bound")->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Collapsed measure");
  source(measure, src);
  measure->add_option("--type", type, "Type; inferred and grounded if absent");
  measure->add_flag("--variant", variant, "Run-length variant");

  auto* equiv = app.add_subcommand("equiv", "Test machine equivalence");
  source(equiv, src, "left");
  source(equiv, other, "right");
  equiv->add_option("--type", type, "Common type")->required();
  equiv->add_option("--budget", budget, "Size bound for test inputs")
      ->capture_default_str();
  equiv->add_flag("--prove", prove, "Try an equational proof first");

  auto* to_lam = app.add_subcommand("to-lambda", "Translate to a λ-term");
  source(to_lam, src);
  to_lam->add_option("--type", type, "Main-location type")->required();

  auto* from_lam = app.add_subcommand("from-lambda", "Translate a λ-term");
  source(from_lam, src);
  from_lam->add_option("--ctx", ctx, "Context, e.g. \"x:A, f:A -> B\"");
  from_lam->add_flag("--annotate", annotate, "Annotate binders");

  auto* enc = app.add_subcommand("encode-cbv", "Encode a CBV program");
  source(enc, src);
  enc->add_flag("--run", run, "Run the encoding");
  enc->add_option("--mem", mem, "Initial memory for --run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  src.expr = other.expr = expr;

  try {
    if (*fmt_cmd) return Fmt(src);
    if (*check) return CheckCmd(src, type, c);
    if (*infer) return InferCmd(src, ground, c);
    if (*run_cmd) return RunCmd(src, mem, trace, c);
    if (*trace_cmd) return RunCmd(src, mem, true, c);
    if (*norm) return NormalizeCmd(src, strategy, eta, c);
    if (*graph) return GraphCmd(src, dot, eta, bound);
    if (*measure) return MeasureCmd(src, type, variant, c);
    if (*equiv) return EquivCmd(src, other, type, budget, prove, c);
    if (*to_lam) return ToLambdaCmd(src, type, c);
    if (*from_lam) return FromLambdaCmd(src, ctx, annotate);
    if (*enc) return EncodeCbvCmd(src, run, mem, c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << Where(src.Name(), e.span()) << ": parse error: "
              << e.message() << "\n";
    return kInvalid;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kInvalid;
  } catch (const lam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const cbv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BridgeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}

}  // namespace
}  // namespace fmc

int main(int argc, char** argv) { return fmc::Main(argc, argv); }
