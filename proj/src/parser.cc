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

#include "fmc/parser.h"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

namespace fmc {

ParseError::ParseError(const std::string& message, SourceSpan span,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string s = fmt::format("{}:{}: {}", span.line, span.column,
                                    message);
        if (!expected.empty()) {
          s += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) s += ", ";
            s += expected[i];
          }
          s += ")";
        }
        return s;
      }()),
      message_(message),
      span_(span),
      expected_(std::move(expected)) {}

SourceSpan SpanAt(std::string_view src, std::size_t start, std::size_t end) {
  SourceSpan s;
  s.start = std::min(start, src.size());
  s.end = std::max(s.start, std::min(end, src.size()));
  int line = 1, col = 1;
  for (std::size_t i = 0; i < s.start; ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  s.line = line;
  s.column = col;
  return s;
}

namespace {

enum class Tok {
  kIdent,
  kInt,
  kStar,
  kDot,
  kLBrack,
  kRBrack,
  kLt,
  kGt,
  kColon,
  kLParen,
  kRParen,
  kPlus,
  kTypeVar,
  kRow,
  kEof,
};

const char* TokName(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kInt:
      return "integer";
    case Tok::kStar:
      return "'*'";
    case Tok::kDot:
      return "'.'";
    case Tok::kLBrack:
      return "'['";
    case Tok::kRBrack:
      return "']'";
    case Tok::kLt:
      return "'<'";
    case Tok::kGt:
      return "'>'";
    case Tok::kColon:
      return "':'";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kPlus:
      return "'+'";
    case Tok::kTypeVar:
      return "type variable";
    case Tok::kRow:
      return "row variable";
    case Tok::kEof:
      return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
};

bool IdentStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool IdentChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

std::vector<Token> Lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](std::size_t at, const std::string& msg) {
    throw ParseError(msg, SpanAt(src, at, at + 1));
  };
  while (i < src.size()) {
    unsigned char c = src[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t;
    t.start = i;
    if (IdentStart(c)) {
      std::size_t j = i;
      while (j < src.size() && IdentChar(src[j])) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (std::isdigit(c) ||
               (c == '-' && i + 1 < src.size() && std::isdigit(src[i + 1]))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(src[j])) ++j;
      t.kind = Tok::kInt;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (c == '\'') {
      std::size_t j = i + 1;
      while (j < src.size() && IdentChar(src[j])) ++j;
      if (j == i + 1) error(i, "empty type variable name");
      t.kind = Tok::kTypeVar;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      i = j;
    } else if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      std::size_t j = i + 2;
      while (j < src.size() && IdentChar(src[j])) ++j;
      if (j == i + 2) error(i, "empty row variable name");
      t.kind = Tok::kRow;
      t.text = std::string(src.substr(i + 2, j - i - 2));
      i = j;
    } else {
      switch (c) {
        case '*':
          t.kind = Tok::kStar;
          break;
        case '.':
          t.kind = Tok::kDot;
          break;
        case '[':
          t.kind = Tok::kLBrack;
          break;
        case ']':
          t.kind = Tok::kRBrack;
          break;
        case '<':
          t.kind = Tok::kLt;
          break;
        case '>':
          t.kind = Tok::kGt;
          break;
        case ':':
          t.kind = Tok::kColon;
          break;
        case '(':
          t.kind = Tok::kLParen;
          break;
        case ')':
          t.kind = Tok::kRParen;
          break;
        case '+':
          t.kind = Tok::kPlus;
          break;
        default:
          error(i, fmt::format("unexpected character '{}'", src[i]));
      }
      t.text = std::string(1, static_cast<char>(c));
      ++i;
    }
    t.end = i;
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = Tok::kEof;
  eof.start = eof.end = src.size();
  out.push_back(eof);
  return out;
}

bool IsKeyword(const std::string& s) {
  return s == "mul" || s == "if" || s == "true" || s == "false";
}

class Parser {
 public:
  Parser(std::string_view src, const TermParseOptions* opts)
      : src_(src), toks_(Lex(src)), opts_(opts) {}

  ParsedTerm TermTop() {
    ParsedTerm out;
    spans_ = &out.spans;
    out.term = Sequence();
    Expect(Tok::kEof, {"'.'", "end of input"});
    return out;
  }

  TypeRef TypeTop() {
    TypeRef t = Type();
    Expect(Tok::kEof, {"end of input"});
    return t;
  }

 private:
  struct Seg {
    Term node;  // with Nil continuation; null for '*'
    std::size_t start, end;
  };

  const Token& Peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& Next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool At(Tok k) const { return Peek().kind == k; }

  [[noreturn]] void Fail(const Token& t, const std::string& msg,
                         std::vector<std::string> expected = {}) {
    throw ParseError(msg, SpanAt(src_, t.start, t.end), std::move(expected));
  }

  const Token& Expect(Tok k, std::vector<std::string> expected = {}) {
    if (!At(k)) {
      if (expected.empty()) expected.push_back(TokName(k));
      Fail(Peek(), fmt::format("unexpected {}", TokName(Peek().kind)),
           std::move(expected));
    }
    return Next();
  }

  Location Loc(const Token& t) {
    if (t.text == "λ" || t.text == "lambda") return Location();
    if (IsKeyword(t.text)) Fail(t, "keyword used as location name");
    if (opts_ && opts_->locations && !opts_->locations->count(t.text)) {
      Fail(t, fmt::format("undeclared location '{}'", t.text));
    }
    return Location(t.text);
  }

  Term Sequence() {
    std::vector<Seg> segs;
    segs.push_back(Segment());
    while (At(Tok::kDot)) {
      Next();
      segs.push_back(Segment());
    }
    Term acc = Nil();
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
      if (!it->node) continue;
      acc = WithCont(it->node, acc);
      if (spans_) (*spans_)[acc.get()] = SpanAt(src_, it->start, it->end);
    }
    return acc;
  }

  Seg Segment() {
    const Token& t = Peek();
    std::size_t start = t.start;
    switch (t.kind) {
      case Tok::kStar:
        Next();
        return {nullptr, start, t.end};
      case Tok::kLBrack: {
        Next();
        Term arg = Sequence();
        const Token& close = Expect(Tok::kRBrack, {"']'", "'.'"});
        std::size_t end = close.end;
        Location loc;
        if (At(Tok::kIdent)) {
          const Token& lt = Next();
          loc = Loc(lt);
          end = lt.end;
        }
        return {Push(arg, loc), start, end};
      }
      case Tok::kLt:
        return PopSeg(Location(), start);
      case Tok::kIdent: {
        if (Peek(1).kind == Tok::kLt) {
          const Token& lt = Next();
          return PopSeg(Loc(lt), start);
        }
        const Token& id = Next();
        if (id.text == "true" || id.text == "false") {
          return {Const(ConstSym::Bool(id.text == "true")), start, id.end};
        }
        if (auto op = BuiltinOperator(id.text)) {
          return {Const(*op), start, id.end};
        }
        return {Var(id.text), start, id.end};
      }
      case Tok::kInt: {
        const Token& it = Next();
        std::int64_t v = 0;
        auto [p, ec] =
            std::from_chars(it.text.data(), it.text.data() + it.text.size(), v);
        if (ec != std::errc()) Fail(it, "integer literal out of range");
        return {Const(ConstSym::Int(v)), start, it.end};
      }
      case Tok::kPlus:
        Next();
        return {Const(*BuiltinOperator("+")), start, t.end};
      default:
        Fail(t, fmt::format("unexpected {}", TokName(t.kind)),
             {"'*'", "variable", "'['", "'<'", "constant"});
    }
  }

  Seg PopSeg(Location loc, std::size_t start) {
    Expect(Tok::kLt);
    const Token& id = Expect(Tok::kIdent, {"variable"});
    if (IsKeyword(id.text)) Fail(id, "keyword used as variable");
    std::string x = id.text;
    TypeRef annot;
    if (At(Tok::kColon)) {
      Next();
      annot = Atom();
    }
    const Token& close = Expect(Tok::kGt, {"'>'", "':'"});
    return {Pop(loc, x, nullptr, annot), start, close.end};
  }

  // Types.

  int VarId(const std::string& name) {
    auto [it, inserted] = tvars_.emplace(name, static_cast<int>(tvars_.size()));
    return it->second;
  }
  int RowId(const std::string& name) {
    auto [it, inserted] = rows_.emplace(name, static_cast<int>(rows_.size()));
    return it->second;
  }

  TypeRef Atom() {
    const Token& t = Peek();
    if (t.kind == Tok::kIdent) {
      Next();
      return BaseType(t.text);
    }
    if (t.kind == Tok::kTypeVar) {
      Next();
      return TypeVar(VarId(t.text));
    }
    if (t.kind == Tok::kLParen) {
      Next();
      TypeRef inner = Type();
      Expect(Tok::kRParen);
      return inner;
    }
    Fail(t, fmt::format("unexpected {}", TokName(t.kind)),
         {"base type", "type variable", "'('"});
  }

  struct Written {
    std::vector<TypeRef> items;
    int row = -1;
    bool row_last = true;  // no item after the row
    bool row_first = true;  // no item before the row
    Token row_tok;
  };

  void AddItem(Written& w, TypeRef item) {
    if (w.row >= 0) w.row_last = false;
    w.items.push_back(std::move(item));
  }
  void AddRow(Written& w, const Token& t) {
    if (w.row >= 0) Fail(t, "two row variables on one location");
    if (!w.items.empty()) w.row_first = false;
    w.row = RowId(t.text);
    w.row_tok = t;
  }

  bool StartsItem() const {
    switch (Peek().kind) {
      case Tok::kIdent:
      case Tok::kTypeVar:
      case Tok::kRow:
      case Tok::kLParen:
        return true;
      default:
        return false;
    }
  }

  std::map<Location, Written> Side() {
    std::map<Location, Written> side;
    while (StartsItem()) {
      const Token& t = Peek();
      if (t.kind == Tok::kIdent && Peek(1).kind == Tok::kLParen &&
          Peek(1).start == t.end) {
        Next();
        Next();
        Location loc = Loc(t);
        Written& w = side[loc];
        while (!At(Tok::kRParen)) {
          if (At(Tok::kRow)) {
            AddRow(w, Next());
          } else {
            AddItem(w, Atom());
          }
        }
        Next();
      } else if (t.kind == Tok::kRow) {
        AddRow(side[Location()], Next());
      } else {
        AddItem(side[Location()], Atom());
      }
    }
    return side;
  }

  MemoryType ToMemory(const std::map<Location, Written>& side, bool input) {
    MemoryType m;
    for (const auto& [loc, w] : side) {
      TypeVector v;
      v.row = w.row;
      if (w.row >= 0) {
        if (input && !w.row_last)
          Fail(w.row_tok, "row variable must come last on the input side");
        if (!input && !w.row_first)
          Fail(w.row_tok, "row variable must come first on the output side");
      }
      v.items = w.items;
      if (input) std::reverse(v.items.begin(), v.items.end());
      m.vecs[loc] = std::move(v);
    }
    return m;
  }

  TypeRef Type() {
    const Token& first = Peek();
    auto in = Side();
    if (!At(Tok::kGt)) {
      auto it = in.find(Location());
      if (in.size() == 1 && it != in.end() && it->second.items.size() == 1 &&
          it->second.row < 0) {
        return it->second.items[0];
      }
      Fail(Peek(), "expected a single type or an implication", {"'>'"});
    }
    (void)first;
    Next();
    auto out = Side();
    return Arrow(ToMemory(in, true), ToMemory(out, false));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const TermParseOptions* opts_;
  std::map<const TermNode*, SourceSpan>* spans_ = nullptr;
  std::map<std::string, int> tvars_;
  std::map<std::string, int> rows_;
};

std::string AtomString(const TypeRef& t) {
  if (t->kind == SimpleType::Kind::kArrow) return "(" + PrintType(t) + ")";
  return PrintType(t);
}

void PrintImpl(const Term& t, const PrintOptions& opts, std::string& out) {
  if (t->kind == TermKind::kNil) {
    out += '*';
    return;
  }
  bool first = true;
  for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
       n = n->cont.get()) {
    if (!first) out += '.';
    first = false;
    switch (n->kind) {
      case TermKind::kVar:
        out += n->var;
        break;
      case TermKind::kPush:
        out += '[';
        PrintImpl(n->arg, opts, out);
        out += ']';
        out += n->loc.name();
        break;
      case TermKind::kPop:
        out += n->loc.name();
        out += '<';
        out += n->var;
        if (opts.annotations && n->annot) {
          out += ':';
          out += AtomString(n->annot);
        }
        out += '>';
        break;
      case TermKind::kConst:
        out += n->sym.name;
        break;
      default:
        break;
    }
  }
}

}  // namespace

ParsedTerm ParseTermWithSpans(std::string_view src,
                              const TermParseOptions& opts) {
  Parser p(src, &opts);
  return p.TermTop();
}

Term ParseTerm(std::string_view src, const TermParseOptions& opts) {
  return ParseTermWithSpans(src, opts).term;
}

TypeRef ParseType(std::string_view src) {
  Parser p(src, nullptr);
  return p.TypeTop();
}

std::string PrintTerm(const Term& t, const PrintOptions& opts) {
  std::string out;
  PrintImpl(t, opts, out);
  return out;
}

std::string PrintStack(const std::vector<Term>& s) {
  if (s.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += PrintTerm(s[i]);
  }
  return out;
}

std::string PrintMemory(const Memory& m) {
  std::string out;
  std::vector<Location> locs;
  for (const auto& l : m.locations()) {
    if (!l.is_main()) locs.push_back(l);
  }
  if (!m.at(Location()).empty()) locs.push_back(Location());
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (i) out += " ; ";
    out += locs[i].display() + " = " + PrintStack(m.at(locs[i]));
  }
  return out;
}

Memory ParseMemory(std::string_view src) {
  Memory m;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t semi = src.find(';', pos);
    if (semi == std::string_view::npos) semi = src.size();
    std::string_view part = src.substr(pos, semi - pos);
    std::size_t eq = part.find('=');
    bool blank = part.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (!blank) {
      if (eq == std::string_view::npos) {
        throw ParseError("expected 'location = stack'",
                         SpanAt(src, pos, semi), {"'='"});
      }
      std::string_view name = part.substr(0, eq);
      std::size_t b = name.find_first_not_of(" \t\r\n");
      std::size_t e = name.find_last_not_of(" \t\r\n");
      if (b == std::string_view::npos) {
        throw ParseError("missing location name", SpanAt(src, pos, pos + eq),
                         {"identifier"});
      }
      std::string loc_name(name.substr(b, e - b + 1));
      Location loc;
      if (loc_name != "λ" && loc_name != "lambda") {
        for (unsigned char c : loc_name) {
          if (!IdentChar(c)) {
            throw ParseError("bad location name",
                             SpanAt(src, pos + b, pos + e + 1),
                             {"identifier"});
          }
        }
        loc = Location(loc_name);
      }
      Stack& stack = m.mut(loc);
      std::size_t i = eq + 1;
      while (i < part.size()) {
        while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i])))
          ++i;
        if (i >= part.size()) break;
        std::size_t j = i;
        while (j < part.size() &&
               !std::isspace(static_cast<unsigned char>(part[j])))
          ++j;
        std::string_view elem = part.substr(i, j - i);
        if (elem != "ε") {
          try {
            Term t = ParseTerm(elem);
            if (!IsClosed(t)) {
              throw ParseError("memory elements must be closed",
                               SpanAt(src, pos + i, pos + j));
            }
            stack.push_back(t);
          } catch (const ParseError& err) {
            SourceSpan s = SpanAt(src, pos + i + err.span().start,
                                  pos + i + err.span().end);
            throw ParseError(err.message(), s, err.expected());
          }
        }
        i = j;
      }
    }
    if (semi == src.size()) break;
    pos = semi + 1;
  }
  return m;
}

}  // namespace fmc
