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

#include "fmc/type_syntax.h"

#include <fmt/core.h>

#include <utility>

namespace fmc {

const TypeVector& MemoryType::at(const Location& l) const {
  static const TypeVector empty;
  auto it = vecs.find(l);
  return it == vecs.end() ? empty : it->second;
}

std::set<Location> MemoryType::locations() const {
  std::set<Location> out;
  for (const auto& [l, v] : vecs) out.insert(l);
  return out;
}

TypeRef BaseType(std::string name) {
  auto t = std::make_shared<SimpleType>();
  t->kind = SimpleType::Kind::kBase;
  t->name = std::move(name);
  return t;
}

TypeRef TypeVar(int id) {
  auto t = std::make_shared<SimpleType>();
  t->kind = SimpleType::Kind::kVar;
  t->var = id;
  return t;
}

TypeRef Arrow(MemoryType in, MemoryType out) {
  auto t = std::make_shared<SimpleType>();
  t->kind = SimpleType::Kind::kArrow;
  t->in = std::move(in);
  t->out = std::move(out);
  return t;
}

TypeRef MainArrow(std::vector<TypeRef> in, std::vector<TypeRef> out) {
  MemoryType mi, mo;
  if (!in.empty()) mi.vecs[Location::Main()].items = std::move(in);
  if (!out.empty()) mo.vecs[Location::Main()].items = std::move(out);
  return Arrow(std::move(mi), std::move(mo));
}

TypeRef UnitArrow() { return Arrow({}, {}); }

bool VectorEq(const TypeVector& a, const TypeVector& b) {
  if (a.row != b.row || a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (!TypeEq(a.items[i], b.items[i])) return false;
  }
  return true;
}

bool MemoryEq(const MemoryType& a, const MemoryType& b) {
  std::set<Location> locs = a.locations();
  for (const auto& l : b.locations()) locs.insert(l);
  for (const auto& l : locs) {
    if (!VectorEq(a.at(l), b.at(l))) return false;
  }
  return true;
}

bool TypeEq(const TypeRef& a, const TypeRef& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SimpleType::Kind::kBase:
      return a->name == b->name;
    case SimpleType::Kind::kVar:
      return a->var == b->var;
    case SimpleType::Kind::kArrow:
      return MemoryEq(a->in, b->in) && MemoryEq(a->out, b->out);
  }
  return false;
}

namespace {

bool VectorGround(const TypeVector& v) {
  if (v.has_row()) return false;
  for (const auto& t : v.items) {
    if (!IsGround(t)) return false;
  }
  return true;
}

TypeVector NormalizeVector(const TypeVector& v) {
  TypeVector out;
  out.row = v.row;
  for (const auto& t : v.items) out.items.push_back(Normalize(t));
  return out;
}

}  // namespace

bool IsGround(const TypeRef& t) {
  switch (t->kind) {
    case SimpleType::Kind::kBase:
      return true;
    case SimpleType::Kind::kVar:
      return false;
    case SimpleType::Kind::kArrow:
      for (const auto& [l, v] : t->in.vecs) {
        if (!VectorGround(v)) return false;
      }
      for (const auto& [l, v] : t->out.vecs) {
        if (!VectorGround(v)) return false;
      }
      return true;
  }
  return false;
}

TypeRef Normalize(const TypeRef& t) {
  if (t->kind != SimpleType::Kind::kArrow) return t;
  std::set<Location> locs = t->in.locations();
  for (const auto& l : t->out.locations()) locs.insert(l);
  MemoryType in, out;
  for (const auto& l : locs) {
    const TypeVector& vi = t->in.at(l);
    const TypeVector& vo = t->out.at(l);
    if (vi.empty() && vo.empty()) continue;
    in.vecs[l] = NormalizeVector(vi);
    out.vecs[l] = NormalizeVector(vo);
  }
  return Arrow(std::move(in), std::move(out));
}

namespace {

void CollectTypeLocations(const TypeRef& t, std::set<Location>& out) {
  if (t->kind != SimpleType::Kind::kArrow) return;
  for (const MemoryType* m : {&t->in, &t->out}) {
    for (const auto& [l, v] : m->vecs) {
      if (!v.empty()) out.insert(l);
      for (const auto& item : v.items) CollectTypeLocations(item, out);
    }
  }
}

void CollectBaseNames(const TypeRef& t, std::set<std::string>& out) {
  if (t->kind == SimpleType::Kind::kBase) {
    out.insert(t->name);
    return;
  }
  if (t->kind != SimpleType::Kind::kArrow) return;
  for (const MemoryType* m : {&t->in, &t->out}) {
    for (const auto& [l, v] : m->vecs) {
      for (const auto& item : v.items) CollectBaseNames(item, out);
    }
  }
}

std::string PrintAtom(const TypeRef& t) {
  switch (t->kind) {
    case SimpleType::Kind::kBase:
      return t->name;
    case SimpleType::Kind::kVar:
      return fmt::format("'t{}", t->var);
    case SimpleType::Kind::kArrow:
      return "(" + PrintType(t) + ")";
  }
  return "?";
}

std::string RowName(int r) { return fmt::format("..r{}", r); }

// True if location `l` only threads one row variable through unchanged.
bool IsFrame(const TypeRef& t, const Location& l) {
  const TypeVector& vi = t->in.at(l);
  const TypeVector& vo = t->out.at(l);
  if (vi.empty() && vo.empty()) return true;
  return vi.items.empty() && vo.items.empty() && vi.row == vo.row;
}

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::string PrintSide(const TypeRef& t, const MemoryType& m, bool input) {
  std::vector<std::string> parts;
  std::string main_part;
  std::set<Location> locs = t->in.locations();
  for (const auto& l : t->out.locations()) locs.insert(l);
  for (const auto& l : locs) {
    if (IsFrame(t, l) || m.at(l).empty()) continue;
    std::string body = PrintVector(m.at(l), input);
    if (l.is_main()) {
      main_part = body;
    } else {
      parts.push_back(l.name() + "(" + body + ")");
    }
  }
  parts.push_back(main_part);
  return Join(parts);
}

}  // namespace

std::set<Location> TypeLocations(const TypeRef& t) {
  std::set<Location> out;
  CollectTypeLocations(t, out);
  return out;
}

std::set<std::string> BaseNames(const TypeRef& t) {
  std::set<std::string> out;
  CollectBaseNames(t, out);
  return out;
}

std::string PrintVector(const TypeVector& v, bool input) {
  std::vector<std::string> parts;
  if (input) {
    for (auto it = v.items.rbegin(); it != v.items.rend(); ++it)
      parts.push_back(PrintAtom(*it));
    if (v.has_row()) parts.push_back(RowName(v.row));
  } else {
    if (v.has_row()) parts.push_back(RowName(v.row));
    for (const auto& item : v.items) parts.push_back(PrintAtom(item));
  }
  return Join(parts);
}

std::string PrintType(const TypeRef& t) {
  if (t->kind != SimpleType::Kind::kArrow) return PrintAtom(t);
  std::string in = PrintSide(t, t->in, true);
  std::string out = PrintSide(t, t->out, false);
  std::string s = in;
  if (!s.empty()) s += ' ';
  s += '>';
  if (!out.empty()) {
    s += ' ';
    s += out;
  }
  return s;
}

}  // namespace fmc
