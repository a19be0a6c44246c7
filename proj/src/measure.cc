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


#include "fmc/measure.h"

#include <limits>
#include <stdexcept>
#include <utility>

namespace fmc {

Count SatAdd(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) return std::numeric_limits<Count>::max();
  return r;
}

SnValue SnValue::Unit(TypeRef t) {
  SnValue v;
  v.kind = Kind::kUnit;
  v.type = std::move(t);
  return v;
}

SnValue SnValue::Functional(TypeRef t, Fn fn) {
  SnValue v;
  v.kind = Kind::kFunctional;
  v.type = std::move(t);
  v.fn = std::make_shared<const Fn>(std::move(fn));
  return v;
}

Count SnValue::Apply(SemMemory& m) const {
  return kind == Kind::kFunctional ? (*fn)(m) : 0;
}

namespace {

SnValue PopValue(SemMemory& m, const Location& l) {
  auto it = m.find(l);
  if (it == m.end() || it->second.empty()) {
    throw std::logic_error("semantic memory lacks an input at " + l.display());
  }
  SnValue v = std::move(it->second.back());
  it->second.pop_back();
  return v;
}

void PopInputs(const TypeRef& t, SemMemory& m, std::vector<SnValue>* popped) {
  for (const auto& [l, v] : t->in.vecs) {
    for (std::size_t k = 0; k < v.items.size(); ++k) {
      SnValue x = PopValue(m, l);
      if (popped) popped->push_back(std::move(x));
    }
  }
}

void PushLeastOutputs(const TypeRef& t, SemMemory& m) {
  for (const auto& [l, v] : t->out.vecs) {
    for (const auto& i : v.items) m[l].push_back(Least(i));
  }
}

Count RunDerivation(const Derivation& d, Valuation v, SemMemory& m,
                    PushClause clause) {
  Count count = 0;
  const TermNode* node = d.term.get();
  for (const DerivStep& step : d.steps) {
    switch (node->kind) {
      case TermKind::kPop:
        v[node->var] = PopValue(m, node->loc);
        count = SatAdd(count, 1);
        break;
      case TermKind::kPush: {
        SnValue value;
        if (step.arg) {
          value = Interpret(step.arg, v, clause);
        } else if (node->arg->kind == TermKind::kVar) {
          value = v.at(node->arg->var);
        } else {
          value = SnValue::Unit(step.type);
        }
        count = SatAdd(count, 1);
        if (clause == PushClause::kCollapse)
          count = SatAdd(count, Collapse(value));
        m[node->loc].push_back(std::move(value));
        break;
      }
      case TermKind::kVar:
        count = SatAdd(count, v.at(node->var).Apply(m));
        break;
      case TermKind::kConst:
        if (node->sym.is_literal()) {
          m[Location::Main()].push_back(SnValue::Unit(BaseType("Z")));
        } else {
          PopInputs(step.type, m, nullptr);
          PushLeastOutputs(step.type, m);
        }
        count = SatAdd(count, 1);
        break;
      case TermKind::kNil:
        break;
    }
    node = node->cont.get();
  }
  return count;
}

}  // namespace

SnValue Least(const TypeRef& t) {
  if (t->kind != SimpleType::Kind::kArrow) return SnValue::Unit(t);
  return SnValue::Functional(t, [t](SemMemory& m) -> Count {
    PopInputs(t, m, nullptr);
    PushLeastOutputs(t, m);
    return 0;
  });
}

SemMemory LeastInputs(const TypeRef& t) {
  SemMemory m;
  if (t->kind != SimpleType::Kind::kArrow) return m;
  for (const auto& [l, v] : t->in.vecs) {
    for (const auto& i : v.items) m[l].push_back(Least(i));
  }
  return m;
}

Valuation LeastValuation(const Context& ctx) {
  Valuation v;
  for (const auto& [x, t] : ctx) v[x] = Least(t);
  return v;
}

SnValue Interpret(const DerivRef& d, const Valuation& v, PushClause clause) {
  return SnValue::Functional(d->type, [d, v, clause](SemMemory& m) {
    return RunDerivation(*d, v, m, clause);
  });
}

Applied Apply(const SnValue& f, SemMemory in) {
  Applied a;
  a.count = f.Apply(in);
  a.out = std::move(in);
  return a;
}

Count Collapse(const SnValue& f) {
  if (f.kind != SnValue::Kind::kFunctional) return 0;
  SemMemory m = LeastInputs(f.type);
  return f.Apply(m);
}

Count Measure(const DerivRef& d) {
  return Collapse(Interpret(d, LeastValuation(d->ctx), PushClause::kCollapse));
}

Count MeasureVariant(const DerivRef& d) {
  return Collapse(
      Interpret(d, LeastValuation(d->ctx), PushClause::kRunLength));
}

SnValue SampleValue(const TypeRef& t, Rng& rng, int depth) {
  if (t->kind != SimpleType::Kind::kArrow) return SnValue::Unit(t);
  int choice = std::uniform_int_distribution<int>(0, 3)(rng);
  Count shift = std::uniform_int_distribution<Count>(0, 4)(rng);
  switch (choice) {
    case 0:
      return Least(t);
    case 1:
      return SnValue::Functional(t, [t, shift](SemMemory& m) -> Count {
        PopInputs(t, m, nullptr);
        PushLeastOutputs(t, m);
        return shift;
      });
    case 2: {
      std::vector<std::pair<Location, SnValue>> outs;
      for (const auto& [l, v] : t->out.vecs) {
        for (const auto& i : v.items)
          outs.emplace_back(l, depth > 0 ? SampleValue(i, rng, depth - 1)
                                         : Least(i));
      }
      return SnValue::Functional(t, [t, shift, outs](SemMemory& m) -> Count {
        std::vector<SnValue> popped;
        PopInputs(t, m, &popped);
        Count c = shift;
        for (const auto& p : popped) c = SatAdd(c, Collapse(p));
        for (const auto& [l, v] : outs) m[l].push_back(v);
        return c;
      });
    }
    default: {
      std::vector<Term> inh = Inhabitants(t, 6, 16);
      if (inh.empty()) return Least(t);
      const Term& pick = inh[std::uniform_int_distribution<std::size_t>(
          0, inh.size() - 1)(rng)];
      SnValue inner = Interpret(Check({}, pick, t), {});
      return SnValue::Functional(t, [inner, shift](SemMemory& m) -> Count {
        return SatAdd(inner.Apply(m), shift);
      });
    }
  }
}

SemMemory SampleInputs(const TypeRef& t, Rng& rng, int depth) {
  SemMemory m;
  if (t->kind != SimpleType::Kind::kArrow) return m;
  for (const auto& [l, v] : t->in.vecs) {
    for (const auto& i : v.items) m[l].push_back(SampleValue(i, rng, depth));
  }
  return m;
}

namespace {

template <typename Cmp>
bool CompareMemory(const SemMemory& a, const SemMemory& b, Cmp cmp) {
  std::set<Location> locs;
  for (const auto& [l, s] : a) {
    if (!s.empty()) locs.insert(l);
  }
  for (const auto& [l, s] : b) {
    if (!s.empty()) locs.insert(l);
  }
  static const SemStack kEmpty;
  for (const auto& l : locs) {
    auto ia = a.find(l);
    auto ib = b.find(l);
    const SemStack& sa = ia == a.end() ? kEmpty : ia->second;
    const SemStack& sb = ib == b.end() ? kEmpty : ib->second;
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (!cmp(sa[i], sb[i])) return false;
    }
  }
  return true;
}

template <typename CountCmp>
bool Compare(const SnValue& a, const SnValue& b, Rng& rng, int samples,
             int depth, CountCmp count_cmp, bool leq) {
  if (a.kind != b.kind) return false;
  if (a.kind == SnValue::Kind::kUnit) return true;
  for (int i = 0; i < samples; ++i) {
    SemMemory in = SampleInputs(a.type, rng, 1);
    Applied ra = Apply(a, in);
    Applied rb = Apply(b, in);
    if (!count_cmp(ra.count, rb.count)) return false;
    if (depth > 0) {
      int sub = std::max(1, samples / 8);
      bool ok = leq ? SampledMemoryLeq(ra.out, rb.out, rng, sub, depth - 1)
                    : SampledMemoryEqual(ra.out, rb.out, rng, sub, depth - 1);
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace

bool SampledEqual(const SnValue& a, const SnValue& b, Rng& rng, int samples,
                  int depth) {
  return Compare(a, b, rng, samples, depth,
                 [](Count x, Count y) { return x == y; }, false);
}

bool SampledLeq(const SnValue& a, const SnValue& b, Rng& rng, int samples,
                int depth) {
  return Compare(a, b, rng, samples, depth,
                 [](Count x, Count y) { return x <= y; }, true);
}

bool SampledMemoryEqual(const SemMemory& a, const SemMemory& b, Rng& rng,
                        int samples, int depth) {
  return CompareMemory(a, b, [&](const SnValue& x, const SnValue& y) {
    return SampledEqual(x, y, rng, samples, depth);
  });
}

bool SampledMemoryLeq(const SemMemory& a, const SemMemory& b, Rng& rng,
                      int samples, int depth) {
  return CompareMemory(a, b, [&](const SnValue& x, const SnValue& y) {
    return SampledLeq(x, y, rng, samples, depth);
  });
}

}  // namespace fmc
