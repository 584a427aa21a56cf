#pragma once

// Heap of Words: a fully-persistent prioritized set of distinct words.
//
// A HoW is a BrodalQueue whose elements are edges (letter, child HoW). The
// queues encode a DAG whose root-to-sink paths spell the stored words, last
// letter first; each edge's priority is its own cost plus the minimum
// priority below it, so the minimum word is found by following minimum edges.
// An epsilon edge always points to the empty HoW and ends a path.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rankenum/brodal_queue.hpp"

namespace rankenum {

template <OrderedGroup G, class L>
class HeapOfWords {
 public:
  using Group = G;
  using Value = typename G::value_type;
  using Letter = std::optional<L>;  // nullopt is epsilon
  using Word = std::vector<L>;

  using Handle = QueueHandle;

  struct Edge {
    Letter letter;
    Handle child;
  };

  using Queue = BrodalQueue<G, Edge>;

  struct Entry {
    Word word;
    Value priority;
  };

  explicit HeapOfWords(G group = G{}, std::shared_ptr<OpCounter> counter = nullptr)
      : queue_(std::move(group), std::move(counter)) {}

  const G& group() const noexcept { return queue_.group(); }
  const Queue& queue() const noexcept { return queue_; }
  const std::shared_ptr<OpCounter>& counter() const noexcept { return queue_.counter(); }
  OpStats stats() const noexcept { return queue_.stats(); }

  Handle empty() const noexcept { return {}; }
  bool is_empty(const Handle& h) const noexcept { return queue_.is_empty(h); }

  /// Adds the one-letter (or empty, for nullopt) word a with priority g.
  /// The word must not already be stored.
  Handle add(const Handle& h, Letter a, const Value& g) {
    return queue_.add(h, Edge{std::move(a), empty()}, g);
  }

  Handle increase_by(const Handle& h, const Value& g) { return queue_.increase_by(h, g); }

  /// The stored word sets must be disjoint.
  Handle meld(const Handle& h1, const Handle& h2) { return queue_.meld(h1, h2); }

  /// Appends a to every stored word.
  Handle extend_by(const Handle& h, L a) {
    if (is_empty(h)) return empty();
    return queue_.add(empty(), Edge{Letter(std::move(a)), h}, queue_.min_priority(h));
  }

  const Value& min_priority(const Handle& h) const {
    if (is_empty(h)) throw EmptyError("min_priority on an empty heap of words");
    return queue_.min_priority(h);
  }

  /// A minimum-priority word and its priority; O(|word|).
  Entry find_min(const Handle& h) const {
    if (is_empty(h)) throw EmptyError("find_min on an empty heap of words");
    Entry out{{}, queue_.min_priority(h)};
    for (Handle cur = h; !is_empty(cur);) {
      const Edge& e = queue_.find_min(cur);
      if (e.letter) out.word.push_back(*e.letter);
      cur = e.child;
    }
    std::reverse(out.word.begin(), out.word.end());
    return out;
  }

  /// Removes exactly the entry find_min reports. Empty stays empty.
  Handle delete_min(const Handle& h) {
    // Walk the minimum path, then rebuild it bottom-up: at each level the
    // minimum edge is dropped and, if its child still holds words, re-added
    // pointing at the shrunk child with its priority adjusted.
    std::vector<Handle> path;
    for (Handle cur = h; !is_empty(cur); cur = queue_.find_min(cur).child) path.push_back(cur);
    Handle below = empty();
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Handle q = *it;
      const Edge& e = queue_.find_min(q);
      Handle rest = queue_.delete_min(q);
      if (is_empty(below)) {
        below = rest;
        continue;
      }
      const auto& grp = group();
      Value delta = difference(grp, queue_.min_priority(e.child), queue_.min_priority(below));
      Value g = grp.op(queue_.min_priority(q), delta);
      below = queue_.add(rest, Edge{e.letter, below}, g);
    }
    return below;
  }

  /// Every stored (word, priority) pair, recovered by a depth-first walk of
  /// the underlying DAG. Independent of find_min/delete_min; used by tests.
  std::vector<Entry> contents(const Handle& h) const {
    std::vector<Entry> out;
    Word rev;
    collect(h, group().identity(), rev, out);
    return out;
  }

  /// One line per edge: "<node> <letter> <priority> <target>", where nodes
  /// are queue ids, "-" is the sink and "~" is epsilon.
  void export_sdag(const Handle& h, std::ostream& os,
                   const std::function<std::string(const L&)>& letter_name,
                   const std::function<std::string(const Value&)>& value_name) const {
    std::unordered_set<NodeId> seen;
    std::vector<Handle> stack{h};
    while (!stack.empty()) {
      Handle cur = stack.back();
      stack.pop_back();
      if (is_empty(cur) || !seen.insert(cur.id).second) continue;
      for (const auto& [edge, prio] : queue_.contents(cur)) {
        os << cur.id << ' ' << (edge.letter ? letter_name(*edge.letter) : std::string("~")) << ' '
           << value_name(prio) << ' '
           << (is_empty(edge.child) ? std::string("-") : std::to_string(edge.child.id)) << '\n';
        stack.push_back(edge.child);
      }
    }
  }

 private:
  // Path priority: each edge stores cost (+) min(child), so subtract the
  // child's minimum on the way down.
  void collect(const Handle& h, const Value& acc, Word& rev, std::vector<Entry>& out) const {
    const auto& grp = group();
    for (const auto& [edge, prio] : queue_.contents(h)) {
      if (edge.letter) rev.push_back(*edge.letter);
      Value here = grp.op(acc, prio);
      if (is_empty(edge.child)) {
        out.push_back({Word(rev.rbegin(), rev.rend()), here});
      } else {
        collect(edge.child, grp.op(here, grp.inverse(queue_.min_priority(edge.child))), rev, out);
      }
      if (edge.letter) rev.pop_back();
    }
  }

  Queue queue_;
};

}  // namespace rankenum
