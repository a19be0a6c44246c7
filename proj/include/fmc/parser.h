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

#ifndef FMC_PARSER_H_
#define FMC_PARSER_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/machine.h"
#include "fmc/syntax.h"
#include "fmc/type_syntax.h"

namespace fmc {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span,
             std::vector<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

struct ParsedTerm {
  Term term;
  // Span of every segment node created by the parser.
  std::map<const TermNode*, SourceSpan> spans;
};

struct TermParseOptions {
  // If set, location names outside this set are rejected.
  std::optional<std::set<std::string>> locations;
};

Term ParseTerm(std::string_view src, const TermParseOptions& opts = {});
ParsedTerm ParseTermWithSpans(std::string_view src,
                              const TermParseOptions& opts = {});

// Type variables and rows written 'name and ..name are numbered in order of
// appearance starting from zero.
TypeRef ParseType(std::string_view src);

// `c = 5 ; rnd = 3 7 1`, top of stack rightmost; the main location is written
// λ or `lambda`, and `ε` denotes an empty stack.
Memory ParseMemory(std::string_view src);

struct PrintOptions {
  bool annotations = false;
};

std::string PrintTerm(const Term& t, const PrintOptions& opts = {});

// Elements separated by spaces, top rightmost.
std::string PrintStack(const std::vector<Term>& s);
std::string PrintMemory(const Memory& m);

// Span helpers.
SourceSpan SpanAt(std::string_view src, std::size_t start, std::size_t end);

}  // namespace fmc

#endif  // FMC_PARSER_H_
