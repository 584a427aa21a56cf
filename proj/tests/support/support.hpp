#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rankenum/cli.hpp"

namespace testsupport {

using namespace rankenum;

inline std::string data_path(const std::string& name) { return std::string(RANKENUM_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ostringstream err;
  auto text = cli::read_file(data_path(name), err);
  return text.value_or("");
}

template <OrderedGroup G>
CostTransducer<G> load_as(const std::string& name) {
  return std::get<CostTransducer<G>>(parse_transducer(read_data(name)));
}

/// Sorted-vector priority queue with a lazy offset; the reference model.
struct RefQueue {
  std::vector<std::pair<std::int64_t, int>> items;  // (priority, element), sorted
  std::int64_t offset = 0;

  bool empty() const { return items.empty(); }
  std::int64_t min_priority() const { return items.front().first + offset; }

  void add(int e, std::int64_t g) {
    std::pair<std::int64_t, int> p{g - offset, e};
    items.insert(std::upper_bound(items.begin(), items.end(), p), p);
  }
  void increase_by(std::int64_t d) { offset += d; }
  void meld(const RefQueue& o) {
    std::vector<std::pair<std::int64_t, int>> shifted, merged;
    for (const auto& [p, e] : o.items) shifted.emplace_back(p + o.offset - offset, e);
    std::merge(items.begin(), items.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
    items = std::move(merged);
  }
  /// Removes (e, g); false if the pair is absent or g is not the minimum.
  bool remove_min(int e, std::int64_t g) {
    if (empty() || g != min_priority()) return false;
    for (auto it = items.begin(); it != items.end() && it->first + offset == g; ++it) {
      if (it->second == e) {
        items.erase(it);
        return true;
      }
    }
    return false;
  }
  std::vector<std::pair<int, std::int64_t>> contents() const {
    std::vector<std::pair<int, std::int64_t>> out;
    for (const auto& [p, e] : items) out.emplace_back(e, p + offset);
    return out;
  }
};

template <class Pairs>
Pairs sorted(Pairs v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Drain of a priority queue as (element, priority) pairs.
template <class Q>
std::vector<std::pair<typename Q::Element, typename Q::Value>> drain_queue(Q& q, typename Q::Handle h) {
  std::vector<std::pair<typename Q::Element, typename Q::Value>> out;
  while (!q.is_empty(h)) {
    out.emplace_back(q.find_min(h), q.min_priority(h));
    h = q.delete_min(h);
  }
  return out;
}

template <OrderedGroup G>
std::vector<RankedOutput<G>> drain_outputs(Enumerator<G>& engine, typename Enumerator<G>::Handle h) {
  std::vector<RankedOutput<G>> out;
  OutputStream<G> s(engine.how(), h);
  while (auto o = s.next()) out.push_back(std::move(*o));
  return out;
}

template <OrderedGroup G>
bool costs_non_decreasing(const G& g, const std::vector<RankedOutput<G>>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (g.compare(v[i - 1].cost, v[i].cost) > 0) return false;
  }
  return true;
}

/// Outputs as a sorted multiset of (enc, cost) for IntGroup machines.
inline std::vector<std::pair<Encoding, std::int64_t>> as_multiset(const std::vector<RankedOutput<IntGroup>>& v) {
  std::vector<std::pair<Encoding, std::int64_t>> out;
  for (const auto& o : v) out.emplace_back(o.enc, o.cost);
  return sorted(out);
}

/// cost -> sorted encodings
inline std::map<std::int64_t, std::vector<Encoding>> cost_classes(const std::vector<RankedOutput<IntGroup>>& v) {
  std::map<std::int64_t, std::vector<Encoding>> out;
  for (const auto& o : v) out[o.cost].push_back(o.enc);
  for (auto& [c, encs] : out) std::sort(encs.begin(), encs.end());
  return out;
}

inline bool has_duplicates(const std::vector<RankedOutput<IntGroup>>& v) {
  std::vector<Encoding> encs;
  for (const auto& o : v) encs.push_back(o.enc);
  std::sort(encs.begin(), encs.end());
  return std::adjacent_find(encs.begin(), encs.end()) != encs.end();
}

struct MachineShape {
  std::size_t max_states = 5;
  std::size_t max_vars = 2;
  std::size_t alphabet = 3;
  std::int64_t min_cost = -5, max_cost = 5;
  std::size_t max_transitions = 10;
};

inline std::string letter(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

/// Random symbol-mode machine. With deterministic set, no two transitions
/// share (from, symbol, varset) and there is one initial state, which makes
/// the machine unambiguous by construction.
inline CostTransducer<IntGroup> random_symbol_machine(std::mt19937_64& rng, const MachineShape& shape,
                                                      bool deterministic) {
  auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  std::uniform_int_distribution<std::int64_t> cost(shape.min_cost, shape.max_cost);
  CostTransducer<IntGroup> t{IntGroup{}, {}, {}, {}, {}, {}, {}};
  std::size_t n = uni(1, shape.max_states);
  std::size_t nv = uni(0, shape.max_vars);
  for (std::size_t i = 0; i < n; ++i) t.states.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < nv; ++i) t.vars.push_back(std::string(1, static_cast<char>('X' + i)));
  t.init.assign(n, std::nullopt);
  t.final.assign(n, std::nullopt);
  t.init[uni(0, n - 1)] = cost(rng);
  if (!deterministic) {
    for (std::size_t q = 0; q < n; ++q) {
      if (uni(0, 3) == 0) t.init[q] = cost(rng);
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (uni(0, 1) == 0) t.final[q] = cost(rng);
  }
  t.final[uni(0, n - 1)] = cost(rng);
  std::size_t m = uni(1, shape.max_transitions);
  std::map<std::tuple<StateId, std::size_t, VarSet>, bool> used;
  for (std::size_t k = 0; k < m; ++k) {
    Transition<IntGroup> tr;
    tr.from = static_cast<StateId>(uni(0, n - 1));
    std::size_t sym = uni(0, shape.alphabet - 1);
    tr.guard = symbol_guard(letter(sym));
    tr.vars = nv ? uni(0, (std::size_t{1} << nv) - 1) : 0;
    tr.to = static_cast<StateId>(uni(0, n - 1));
    tr.cost = cost(rng);
    if (deterministic && !used.emplace(std::tuple{tr.from, sym, tr.vars}, true).second) continue;
    t.transitions.push_back(std::move(tr));
  }
  return t;
}

/// Random predicate-mode machine over event types A, B and attribute "v".
inline CostTransducer<IntGroup> random_predicate_machine(std::mt19937_64& rng, std::size_t max_states,
                                                         std::size_t max_transitions) {
  auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  std::uniform_int_distribution<std::int64_t> cost(-3, 3);
  CostTransducer<IntGroup> t{IntGroup{}, {}, {}, {}, {}, {}, {}};
  std::size_t n = uni(1, max_states);
  for (std::size_t i = 0; i < n; ++i) t.states.push_back("q" + std::to_string(i));
  t.vars = {"X"};
  t.init.assign(n, std::nullopt);
  t.final.assign(n, std::nullopt);
  t.init[0] = 0;
  t.final[uni(0, n - 1)] = cost(rng);
  std::size_t m = uni(1, max_transitions);
  for (std::size_t k = 0; k < m; ++k) {
    Transition<IntGroup> tr;
    tr.from = static_cast<StateId>(uni(0, n - 1));
    tr.to = static_cast<StateId>(uni(0, n - 1));
    tr.vars = uni(0, 1);
    tr.cost = cost(rng);
    std::size_t atoms = uni(0, 2);
    for (std::size_t a = 0; a < atoms; ++a) {
      if (uni(0, 1) == 0) {
        tr.guard.atoms.push_back({Atom::Kind::Type, uni(0, 1) ? "A" : "B", CmpOp::Eq, 0});
      } else {
        tr.guard.atoms.push_back(
            {Atom::Kind::Attr, "v", static_cast<CmpOp>(uni(0, 4)), static_cast<std::int64_t>(uni(0, 6))});
      }
    }
    t.transitions.push_back(std::move(tr));
  }
  return t;
}

inline std::vector<Event> random_symbol_word(std::mt19937_64& rng, std::size_t len, std::size_t alphabet) {
  std::vector<Event> w;
  for (std::size_t i = 0; i < len; ++i) {
    w.push_back(symbol_event(letter(std::uniform_int_distribution<std::size_t>(0, alphabet - 1)(rng))));
  }
  return w;
}

inline std::vector<Event> random_events(std::mt19937_64& rng, std::size_t len) {
  std::vector<Event> w;
  std::uniform_int_distribution<int> type(0, 2), val(-1, 7);
  for (std::size_t i = 0; i < len; ++i) {
    Event e{std::string(1, static_cast<char>('A' + type(rng))), {}};
    int v = val(rng);
    if (v >= 0) e.attrs.emplace_back("v", v);
    w.push_back(std::move(e));
  }
  return w;
}

inline std::vector<Event> symbols(const std::string& word) {
  std::vector<Event> w;
  std::istringstream ss(word);
  for (std::string tok; ss >> tok;) w.push_back(symbol_event(tok));
  return w;
}

/// Independent duplicate-output search: every run over every word up to
/// max_len, starting from each initial state. True if some word has two
/// distinct accepting runs with the same output.
inline bool exhaustive_ambiguous(const CostTransducer<IntGroup>& t, std::size_t alphabet, std::size_t max_len) {
  // Per word, the multiset of (output, final state) reached by runs is
  // grown letter by letter; runs are distinguished by their multiplicity.
  using Key = std::pair<Encoding, StateId>;
  std::vector<std::pair<std::vector<std::size_t>, std::map<Key, std::size_t>>> level;
  std::map<Key, std::size_t> start;
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (t.init[q]) start[{Encoding{}, q}] += 1;
  }
  level.push_back({{}, start});
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::pair<std::vector<std::size_t>, std::map<Key, std::size_t>>> next;
    for (const auto& [word, runs] : level) {
      std::map<Encoding, std::size_t> accepted;
      for (const auto& [key, count] : runs) {
        if (t.final[key.second]) accepted[key.first] += count;
      }
      for (const auto& [enc, count] : accepted) {
        if (count > 1) return true;
      }
      if (len == max_len) continue;
      for (std::size_t a = 0; a < alphabet; ++a) {
        Event e = symbol_event(letter(a));
        std::map<Key, std::size_t> grown;
        for (const auto& [key, count] : runs) {
          for (const auto& tr : t.transitions) {
            if (tr.from != key.second || !tr.guard.matches(e)) continue;
            Encoding enc = key.first;
            if (tr.vars) enc.push_back({tr.vars, len + 1});
            grown[{enc, tr.to}] += count;
          }
        }
        auto w = word;
        w.push_back(a);
        next.push_back({std::move(w), std::move(grown)});
      }
    }
    level = std::move(next);
  }
  return false;
}

}  // namespace testsupport
