#pragma once

// Unambiguity checking plus the slow reference semantics (run_cost,
// enumerate_bruteforce) that the fast enumerator is tested against.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankenum/output.hpp"

namespace rankenum {

/// A finite set of events that realizes every distinguishable combination
/// of guard outcomes: two events with the same outcome on every transition
/// guard are interchangeable, and each non-trivial combination that some
/// event can produce is represented once.
template <OrderedGroup G>
std::vector<Event> abstract_alphabet(const CostTransducer<G>& t) {
  std::set<std::string> types;
  std::map<std::string, std::set<std::int64_t>> constants;
  for (const auto& tr : t.transitions) {
    for (const Atom& a : tr.guard.atoms) {
      if (a.kind == Atom::Kind::Type) {
        types.insert(a.name);
      } else {
        constants[a.name].insert(a.constant);
      }
    }
  }
  std::string fresh = "_";
  while (types.count(fresh)) fresh += '_';
  types.insert(fresh);

  // Per attribute: a value on each side of and at every constant, or absent.
  std::vector<std::pair<std::string, std::vector<std::optional<std::int64_t>>>> axes;
  for (const auto& [name, cs] : constants) {
    std::set<std::int64_t> vals;
    for (std::int64_t c : cs) {
      vals.insert(c);
      if (c > std::numeric_limits<std::int64_t>::min()) vals.insert(c - 1);
      if (c < std::numeric_limits<std::int64_t>::max()) vals.insert(c + 1);
    }
    std::vector<std::optional<std::int64_t>> reps{std::nullopt};
    reps.insert(reps.end(), vals.begin(), vals.end());
    axes.emplace_back(name, std::move(reps));
  }

  std::vector<Event> out;
  std::set<std::vector<bool>> seen;
  std::vector<std::size_t> pick(axes.size(), 0);
  for (const std::string& type : types) {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      Event e{type, {}};
      for (std::size_t k = 0; k < axes.size(); ++k) {
        if (auto v = axes[k].second[pick[k]]) e.attrs.emplace_back(axes[k].first, *v);
      }
      std::vector<bool> sig;
      for (const auto& tr : t.transitions) sig.push_back(tr.guard.matches(e));
      if (std::find(sig.begin(), sig.end(), true) != sig.end() && seen.insert(sig).second) {
        out.push_back(std::move(e));
      }
      std::size_t k = 0;
      while (k < axes.size() && ++pick[k] == axes[k].second.size()) pick[k++] = 0;
      if (k == axes.size()) break;
    }
  }
  return out;
}

template <OrderedGroup G>
struct AmbiguityReport {
  bool unambiguous = true;
  std::vector<Event> witness;
  // Two distinct runs over witness with equal output: start states and
  // transition indices.
  StateId start1 = 0, start2 = 0;
  std::vector<std::size_t> run1, run2;
};

/// Decides unambiguity by reachability in the self-product. A product node
/// is a pair of states plus a flag recording whether the two runs already
/// differ; both runs must read the same letter with the same varset.
template <OrderedGroup G>
AmbiguityReport<G> check_unambiguous(const CostTransducer<G>& t) {
  const std::size_t n = t.num_states();
  const std::vector<Event> letters = abstract_alphabet(t);
  std::vector<std::vector<std::vector<std::size_t>>> moves(letters.size(),
                                                           std::vector<std::vector<std::size_t>>(n));
  for (std::size_t l = 0; l < letters.size(); ++l) {
    for (std::size_t i = 0; i < t.transitions.size(); ++i) {
      if (t.transitions[i].guard.matches(letters[l])) moves[l][t.transitions[i].from].push_back(i);
    }
  }

  struct Parent {
    std::size_t node, letter, t1, t2;
  };
  auto id = [n](StateId a, StateId b, bool d) { return (static_cast<std::size_t>(a) * n + b) * 2 + d; };
  std::vector<std::optional<Parent>> parent(n * n * 2);
  std::vector<bool> visited(n * n * 2, false);
  std::queue<std::size_t> frontier;
  for (StateId a = 0; a < n; ++a) {
    for (StateId b = 0; b < n; ++b) {
      if (!t.init[a] || !t.init[b]) continue;
      std::size_t v = id(a, b, a != b);
      visited[v] = true;
      frontier.push(v);
    }
  }

  AmbiguityReport<G> report;
  while (!frontier.empty()) {
    std::size_t v = frontier.front();
    frontier.pop();
    bool diverged = v & 1;
    auto a = static_cast<StateId>(v / 2 / n);
    auto b = static_cast<StateId>(v / 2 % n);
    if (diverged && t.final[a] && t.final[b]) {
      report.unambiguous = false;
      for (std::size_t cur = v; parent[cur]; cur = parent[cur]->node) {
        report.witness.push_back(letters[parent[cur]->letter]);
        report.run1.push_back(parent[cur]->t1);
        report.run2.push_back(parent[cur]->t2);
        a = static_cast<StateId>(parent[cur]->node / 2 / n);
        b = static_cast<StateId>(parent[cur]->node / 2 % n);
      }
      std::reverse(report.witness.begin(), report.witness.end());
      std::reverse(report.run1.begin(), report.run1.end());
      std::reverse(report.run2.begin(), report.run2.end());
      report.start1 = a;
      report.start2 = b;
      return report;
    }
    for (std::size_t l = 0; l < letters.size(); ++l) {
      for (std::size_t i : moves[l][a]) {
        for (std::size_t j : moves[l][b]) {
          const auto& t1 = t.transitions[i];
          const auto& t2 = t.transitions[j];
          if (t1.vars != t2.vars) continue;
          std::size_t w = id(t1.to, t2.to, diverged || i != j);
          if (visited[w]) continue;
          visited[w] = true;
          parent[w] = Parent{v, l, i, j};
          frontier.push(w);
        }
      }
    }
  }
  return report;
}

/// Cost of the run over w whose output is enc, if there is one. Assumes an
/// unambiguous machine, so at most one accepting run qualifies.
template <OrderedGroup G>
std::optional<typename G::value_type> run_cost(const CostTransducer<G>& t, std::span<const Event> w,
                                               const Encoding& enc) {
  using Value = typename G::value_type;
  const G& g = t.group;
  std::vector<std::optional<Value>> cur = t.init;
  std::size_t next = 0;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    VarSet want = 0;
    if (next < enc.size() && enc[next].position == i) want = enc[next++].vars;
    std::vector<std::optional<Value>> nxt(t.num_states());
    for (const auto& tr : t.transitions) {
      if (!cur[tr.from] || tr.vars != want || !tr.guard.matches(w[i - 1])) continue;
      if (!nxt[tr.to]) nxt[tr.to] = g.op(*cur[tr.from], tr.cost);
    }
    cur = std::move(nxt);
  }
  if (next != enc.size()) return std::nullopt;
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (cur[q] && t.final[q]) return g.op(*cur[q], *t.final[q]);
  }
  return std::nullopt;
}

class ExplosionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every accepting run's (output, cost), stably sorted by cost. Throws
/// ExplosionError once more than max_steps partial runs have been visited.
template <OrderedGroup G>
std::vector<RankedOutput<G>> enumerate_bruteforce(const CostTransducer<G>& t, std::span<const Event> w,
                                                  std::size_t max_steps = 1'000'000) {
  using Value = typename G::value_type;
  std::vector<RankedOutput<G>> out;
  std::size_t steps = 0;
  Encoding enc;
  auto dfs = [&](auto& self, StateId q, std::size_t i, const Value& cost) -> void {
    if (++steps > max_steps) throw ExplosionError("brute-force enumeration exceeded its step budget");
    if (i == w.size()) {
      if (t.final[q]) out.push_back({enc, t.group.op(cost, *t.final[q])});
      return;
    }
    for (const auto& tr : t.transitions) {
      if (tr.from != q || !tr.guard.matches(w[i])) continue;
      if (tr.vars) enc.push_back({tr.vars, i + 1});
      self(self, tr.to, i + 1, t.group.op(cost, tr.cost));
      if (tr.vars) enc.pop_back();
    }
  };
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (t.init[q]) dfs(dfs, q, 0, *t.init[q]);
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return t.group.compare(a.cost, b.cost) < 0;
  });
  return out;
}

}  // namespace rankenum
