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


#include "fmc/reduction.h"

#include <fmt/core.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <utility>

#include "fmc/parser.h"

namespace fmc {

namespace {

bool IsFrame(const TermNode* n) {
  return n->kind == TermKind::kPush || n->kind == TermKind::kPop;
}

bool IsBareVar(const Term& t, const std::string& x) {
  return t->kind == TermKind::kVar && t->var == x &&
         t->cont->kind == TermKind::kNil;
}

Term ContractBeta(const Term& cur, std::size_t remaining, const Term& n,
                  const VarSet& fv_n) {
  if (remaining == 0) return Substitute(n, cur->var, cur->cont);
  if (cur->kind == TermKind::kPush) {
    return Push(cur->arg, cur->loc,
                ContractBeta(cur->cont, remaining - 1, n, fv_n));
  }
  std::string y = cur->var;
  Term body = cur->cont;
  if (fv_n.count(y)) {
    VarSet avoid = fv_n;
    for (const auto& v : FreeVars(body)) avoid.insert(v);
    std::string fresh = Fresh(y, avoid);
    body = Substitute(Var(fresh), y, body);
    y = fresh;
  }
  return Pop(cur->loc, y, ContractBeta(body, remaining - 1, n, fv_n),
             cur->annot);
}

Term ContractEta(const Term& cur, std::size_t remaining) {
  if (remaining == 0) return cur->cont;
  return WithCont(cur, ContractEta(cur->cont, remaining - 1));
}

void Collect(const Term& t, Path& path, bool beta, bool eta,
             std::vector<Redex>& out) {
  const Term* cur = &t;
  std::size_t depth = 0;
  while ((*cur)->kind != TermKind::kNil) {
    const Term& node = *cur;
    std::optional<Redex> r;
    if (beta && node->kind == TermKind::kPush) r = BetaAt(node);
    if (eta && node->kind == TermKind::kPop) r = EtaAt(node);
    if (r) {
      r->path = path;
      out.push_back(std::move(*r));
    }
    if (node->kind == TermKind::kPush) {
      path.push_back(Dir::kArg);
      Collect(node->arg, path, beta, eta, out);
      path.pop_back();
    }
    path.push_back(Dir::kCont);
    ++depth;
    cur = &node->cont;
  }
  path.resize(path.size() - depth);
}

}  // namespace

std::optional<Redex> BetaAt(const Term& node) {
  if (node->kind != TermKind::kPush) return std::nullopt;
  const TermNode* cur = node->cont.get();
  std::size_t len = 0;
  while (IsFrame(cur) && cur->loc != node->loc) {
    cur = cur->cont.get();
    ++len;
  }
  if (cur->kind != TermKind::kPop || cur->loc != node->loc) return std::nullopt;
  Redex r;
  r.kind = Redex::Kind::kBeta;
  r.head_len = len;
  r.loc = node->loc;
  r.var = cur->var;
  return r;
}

std::optional<Redex> EtaAt(const Term& node) {
  if (node->kind != TermKind::kPop) return std::nullopt;
  const std::string& x = node->var;
  const TermNode* cur = node->cont.get();
  std::size_t len = 0;
  while (IsFrame(cur) && cur->loc != node->loc) {
    if (cur->kind == TermKind::kPop && cur->var == x) return std::nullopt;
    if (cur->kind == TermKind::kPush && OccursFree(x, cur->arg))
      return std::nullopt;
    cur = cur->cont.get();
    ++len;
  }
  if (cur->kind != TermKind::kPush || cur->loc != node->loc ||
      !IsBareVar(cur->arg, x) || OccursFree(x, cur->cont))
    return std::nullopt;
  Redex r;
  r.kind = Redex::Kind::kEta;
  r.head_len = len;
  r.loc = node->loc;
  r.var = x;
  return r;
}

std::vector<Redex> BetaRedexes(const Term& t) {
  std::vector<Redex> out;
  Path p;
  Collect(t, p, true, false, out);
  return out;
}

std::vector<Redex> EtaRedexes(const Term& t) {
  std::vector<Redex> out;
  Path p;
  Collect(t, p, false, true, out);
  return out;
}

const Term& SubtermAt(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (Dir d : p) {
    if (d == Dir::kArg) {
      if ((*cur)->kind != TermKind::kPush)
        throw StaleRedex("path enters the argument of a non-push");
      cur = &(*cur)->arg;
    } else {
      if ((*cur)->kind == TermKind::kNil)
        throw StaleRedex("path runs past the end of a term");
      cur = &(*cur)->cont;
    }
  }
  return *cur;
}

Term ReplaceAt(const Term& t, const Path& p, const Term& replacement) {
  // Walk down iteratively, then rebuild bottom-up.
  std::vector<const Term*> trail;
  const Term* cur = &t;
  for (Dir d : p) {
    trail.push_back(cur);
    cur = d == Dir::kArg ? &(*cur)->arg : &(*cur)->cont;
  }
  Term acc = replacement;
  for (std::size_t i = p.size(); i-- > 0;) {
    const Term& node = *trail[i];
    if (p[i] == Dir::kArg) {
      acc = Push(acc, node->loc, node->cont);
    } else {
      acc = WithCont(node, acc);
    }
  }
  return acc;
}

Term ReduceAt(const Term& t, const Redex& r) {
  const Term& node = SubtermAt(t, r.path);
  std::optional<Redex> here =
      r.kind == Redex::Kind::kBeta ? BetaAt(node) : EtaAt(node);
  if (!here || here->head_len != r.head_len || here->loc != r.loc ||
      here->var != r.var) {
    throw StaleRedex("no matching redex at the given position");
  }
  Term contractum =
      r.kind == Redex::Kind::kBeta
          ? ContractBeta(node->cont, r.head_len, node->arg,
                         FreeVars(node->arg))
          : ContractEta(node->cont, r.head_len);
  return ReplaceAt(t, r.path, contractum);
}

NormalizeResult Normalize(const Term& t, Strategy s, std::size_t fuel,
                          bool eta) {
  NormalizeResult res;
  res.term = t;
  while (true) {
    std::vector<Redex> rs;
    Path p;
    Collect(res.term, p, true, eta, rs);
    if (rs.empty()) return res;
    if (res.steps >= fuel) {
      res.status = NormalizeResult::Status::kFuelExhausted;
      return res;
    }
    const Redex& r =
        s == Strategy::kLeftmostOutermost ? rs.front() : rs.back();
    res.term = ReduceAt(res.term, r);
    ++res.steps;
  }
}

std::vector<std::vector<std::size_t>> ReductionGraph::Successors() const {
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (const auto& e : edges) out[e.from].push_back(e.to);
  return out;
}

std::vector<std::size_t> ReductionGraph::NormalForms() const {
  std::vector<bool> has_out(nodes.size(), false);
  for (const auto& e : edges) has_out[e.from] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!has_out[i]) out.push_back(i);
  }
  return out;
}

ReductionGraph BuildReductionGraph(const Term& t, std::size_t node_bound,
                                   bool eta) {
  ReductionGraph g;
  g.nodes.push_back(t);
  g.index[CanonicalKey(t)] = 0;
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    std::vector<Redex> rs;
    Path p;
    Collect(g.nodes[id], p, true, eta, rs);
    for (auto& r : rs) {
      Term next = ReduceAt(g.nodes[id], r);
      std::string key = CanonicalKey(next);
      auto it = g.index.find(key);
      std::size_t to;
      if (it == g.index.end()) {
        if (g.nodes.size() >= node_bound) {
          throw BoundExceeded(fmt::format(
              "reduction graph exceeds {} nodes", node_bound));
        }
        to = g.nodes.size();
        g.nodes.push_back(next);
        g.index.emplace(std::move(key), to);
        frontier.push_back(to);
      } else {
        to = it->second;
      }
      g.edges.push_back({id, to, std::move(r)});
    }
  }
  return g;
}

bool ConfluentOn(const ReductionGraph& g) {
  auto nf = g.NormalForms();
  if (nf.size() != 1) return false;
  std::vector<std::vector<std::size_t>> preds(g.nodes.size());
  for (const auto& e : g.edges) preds[e.to].push_back(e.from);
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<std::size_t> todo{nf[0]};
  seen[nf[0]] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    std::size_t n = todo.back();
    todo.pop_back();
    for (std::size_t p : preds[n]) {
      if (!seen[p]) {
        seen[p] = true;
        ++reached;
        todo.push_back(p);
      }
    }
  }
  return reached == g.nodes.size();
}

std::optional<std::size_t> LongestPath(const ReductionGraph& g) {
  auto succ = g.Successors();
  enum Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(g.nodes.size(), kWhite);
  std::vector<std::size_t> longest(g.nodes.size(), 0);
  bool cyclic = false;
  std::function<void(std::size_t)> visit = [&](std::size_t n) {
    color[n] = kGrey;
    for (std::size_t m : succ[n]) {
      if (color[m] == kGrey) {
        cyclic = true;
        continue;
      }
      if (color[m] == kWhite) visit(m);
      longest[n] = std::max(longest[n], longest[m] + 1);
    }
    color[n] = kBlack;
  };
  visit(0);
  if (cyclic) return std::nullopt;
  return longest[0];
}

std::string ToDot(const ReductionGraph& g) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::string out = "digraph reductions {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out += fmt::format("  n{} [label=\"{}\"];\n", i,
                       escape(PrintTerm(g.nodes[i])));
  }
  for (const auto& e : g.edges) {
    out += fmt::format("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to,
                       e.redex.kind == Redex::Kind::kBeta ? "beta" : "eta");
  }
  out += "}\n";
  return out;
}

namespace {

Term RenameApartImpl(const Term& t, std::map<std::string, std::string>& env,
                     int& counter) {
  // Rebuild the spine back to front so long sequences do not recurse.
  std::vector<const TermNode*> spine;
  for (const TermNode* n = t.get(); n->kind != TermKind::kNil;
       n = n->cont.get())
    spine.push_back(n);
  std::vector<std::pair<std::string, std::optional<std::string>>> saved;
  std::vector<std::string> names(spine.size());
  std::vector<Term> args(spine.size());
  for (std::size_t i = 0; i < spine.size(); ++i) {
    const TermNode* n = spine[i];
    switch (n->kind) {
      case TermKind::kVar: {
        auto it = env.find(n->var);
        names[i] = it == env.end() ? n->var : it->second;
        break;
      }
      case TermKind::kPush:
        args[i] = RenameApartImpl(n->arg, env, counter);
        break;
      case TermKind::kPop: {
        names[i] = fmt::format("%{}", counter++);
        auto it = env.find(n->var);
        saved.emplace_back(n->var, it == env.end()
                                       ? std::nullopt
                                       : std::optional<std::string>(it->second));
        env[n->var] = names[i];
        break;
      }
      default:
        break;
    }
  }
  for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
    if (it->second) {
      env[it->first] = *it->second;
    } else {
      env.erase(it->first);
    }
  }
  Term acc = Nil();
  for (std::size_t i = spine.size(); i-- > 0;) {
    const TermNode* n = spine[i];
    switch (n->kind) {
      case TermKind::kVar:
        acc = Var(names[i], acc);
        break;
      case TermKind::kPush:
        acc = Push(args[i], n->loc, acc);
        break;
      case TermKind::kPop:
        acc = Pop(n->loc, names[i], acc, n->annot);
        break;
      case TermKind::kConst:
        acc = Const(n->sym, acc);
        break;
      case TermKind::kNil:
        break;
    }
  }
  return acc;
}

class PermComparer {
 public:
  bool Seq(const TermNode* a, const TermNode* b) {
    while (true) {
      std::vector<const TermNode*> fa, fb;
      while (IsFrame(a)) {
        fa.push_back(a);
        a = a->cont.get();
      }
      while (IsFrame(b)) {
        fb.push_back(b);
        b = b->cont.get();
      }
      if (!Block(fa, fb)) return false;
      if (a->kind != b->kind) return false;
      switch (a->kind) {
        case TermKind::kNil:
          return true;
        case TermKind::kVar:
          if (!VarEq(a->var, b->var)) return false;
          break;
        case TermKind::kConst:
          if (!(a->sym == b->sym) || a->sym.value != b->sym.value) return false;
          break;
        default:
          return false;
      }
      a = a->cont.get();
      b = b->cont.get();
    }
  }

 private:
  bool VarEq(const std::string& u, const std::string& v) const {
    auto it = env_.find(u);
    if (it != env_.end()) return it->second == v;
    return u == v && !bound_b_.count(v);
  }

  bool Block(const std::vector<const TermNode*>& fa,
             const std::vector<const TermNode*>& fb) {
    if (fa.size() != fb.size()) return false;
    std::map<Location, std::vector<std::size_t>> ia, ib;
    for (std::size_t i = 0; i < fa.size(); ++i) ia[fa[i]->loc].push_back(i);
    for (std::size_t i = 0; i < fb.size(); ++i) ib[fb[i]->loc].push_back(i);
    if (ia.size() != ib.size()) return false;
    std::vector<std::size_t> corr(fa.size());
    for (const auto& [loc, xs] : ia) {
      auto it = ib.find(loc);
      if (it == ib.end() || it->second.size() != xs.size()) return false;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const TermNode* na = fa[xs[k]];
        const TermNode* nb = fb[it->second[k]];
        if (na->kind != nb->kind) return false;
        corr[xs[k]] = it->second[k];
        if (na->kind == TermKind::kPop) {
          env_[na->var] = nb->var;
          bound_b_.insert(nb->var);
        }
      }
    }
    for (std::size_t j = 0; j < fa.size(); ++j) {
      if (fa[j]->kind != TermKind::kPush) continue;
      VarSet fv = FreeVars(fa[j]->arg);
      for (std::size_t i = 0; i < fa.size(); ++i) {
        if (fa[i]->kind == TermKind::kPop && fv.count(fa[i]->var) &&
            (i < j) != (corr[i] < corr[j]))
          return false;
      }
      if (!Seq(fa[j]->arg.get(), fb[corr[j]]->arg.get())) return false;
    }
    return true;
  }

  std::map<std::string, std::string> env_;
  std::set<std::string> bound_b_;
};

}  // namespace

Term RenameApart(const Term& t) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return RenameApartImpl(t, env, counter);
}

bool PermEq(const Term& a, const Term& b) {
  Term ra = RenameApart(a);
  Term rb = RenameApart(b);
  PermComparer c;
  return c.Seq(ra.get(), rb.get());
}

}  // namespace fmc
