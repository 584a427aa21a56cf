#pragma once

// Shared machinery of the incremental binomial heap and its skew variant:
// a persistent first-child/next-sibling forest whose nodes carry delta
// priorities. The real priority of a root is delta_init (+) delta(root); the
// real priority of any other node is prio(parent) (+) delta(node).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rankenum/arena.hpp"
#include "rankenum/group.hpp"

namespace rankenum {

class EmptyError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

namespace detail {

template <OrderedGroup G, class T>
class Forest {
 public:
  using Group = G;
  using Value = typename G::value_type;
  using Element = T;

  struct Node {
    NodeId fch;
    NodeId nsb;
    std::uint32_t rank;
    Value delta;
    T val;
  };

  /// A heap version. A default-constructed handle is the empty heap; the
  /// delta_init of an empty handle is never read.
  struct Handle {
    NodeId root = kNil;
    Value delta_init{};
  };

  explicit Forest(G group = G{}, std::shared_ptr<OpCounter> counter = nullptr)
      : group_(std::move(group)),
        counter_(counter ? std::move(counter) : std::make_shared<OpCounter>()),
        arena_(counter_) {}

  Forest(const Forest&) = delete;
  Forest& operator=(const Forest&) = delete;

  const G& group() const noexcept { return group_; }
  const std::shared_ptr<OpCounter>& counter() const noexcept { return counter_; }
  OpStats stats() const noexcept { return counter_->snapshot(); }
  std::size_t arena_size() const noexcept { return arena_.size(); }
  const Node& node(NodeId id) const { return arena_[id]; }

  Handle empty() const { return {kNil, group_.identity()}; }

  bool is_empty(const Handle& h) const noexcept { return h.root == kNil; }

  Handle increase_by(const Handle& h, const Value& d) const {
    if (is_empty(h)) return h;
    return {h.root, group_.op(h.delta_init, d)};
  }

  const T& find_min(const Handle& h) const { return arena_[min_root(h).second].val; }

  Value min_priority(const Handle& h) const {
    return group_.op(h.delta_init, arena_[min_root(h).second].delta);
  }

  /// Visits every stored (element, real priority) pair.
  template <class F>
  void for_each(const Handle& h, F&& f) const {
    if (is_empty(h)) return;
    std::vector<std::pair<NodeId, Value>> stack;
    stack.emplace_back(h.root, h.delta_init);
    while (!stack.empty()) {
      auto [id, base] = std::move(stack.back());
      stack.pop_back();
      const Node& n = arena_[id];
      Value prio = group_.op(base, n.delta);
      f(n.val, prio);
      if (n.nsb != kNil) stack.emplace_back(n.nsb, std::move(base));
      if (n.fch != kNil) stack.emplace_back(n.fch, std::move(prio));
    }
  }

  std::size_t size(const Handle& h) const {
    std::size_t n = 0;
    for_each(h, [&](const T&, const Value&) { ++n; });
    return n;
  }

  /// Root ids in list order.
  std::vector<NodeId> root_list(const Handle& h) const { return siblings(h.root); }

  std::vector<NodeId> siblings(NodeId first) const {
    std::vector<NodeId> out;
    for (NodeId v = first; v != kNil; v = arena_[v].nsb) out.push_back(v);
    return out;
  }

  std::size_t subtree_size(NodeId v) const {
    std::size_t n = 1;
    for (NodeId c = arena_[v].fch; c != kNil; c = arena_[c].nsb) n += subtree_size(c);
    return n;
  }

  /// Empty string when every parent's real priority is <= its children's.
  std::string check_heap_order(const Handle& h) const {
    for (NodeId r : root_list(h)) {
      Value prio = group_.op(h.delta_init, arena_[r].delta);
      if (auto err = check_heap_order_below(r, prio); !err.empty()) return err;
    }
    return {};
  }

 protected:
  // A pending root: an existing subtree whose root delta is overridden.
  struct Root {
    NodeId id;
    Value delta;
  };

  std::strong_ordering cmp(const Value& a, const Value& b) const {
    counter_->add_comparison();
    return group_.compare(a, b);
  }

  std::uint32_t rank(const Root& r) const { return arena_[r.id].rank; }

  NodeId append(Node n) { return arena_.append(std::move(n)); }

  /// The earliest root of minimum priority. Priorities of roots share
  /// delta_init, so comparing the stored deltas suffices.
  std::pair<std::size_t, NodeId> min_root(const Handle& h) const {
    if (is_empty(h)) throw EmptyError("find_min on an empty heap");
    NodeId best = h.root;
    std::size_t best_index = 0;
    std::size_t index = 1;
    for (NodeId v = arena_[h.root].nsb; v != kNil; v = arena_[v].nsb, ++index) {
      if (cmp(arena_[v].delta, arena_[best].delta) < 0) {
        best = v;
        best_index = index;
      }
    }
    return {best_index, best};
  }

  std::vector<Root> roots_of(const Handle& h) const {
    std::vector<Root> out;
    for (NodeId v = h.root; v != kNil; v = arena_[v].nsb) {
      out.push_back({v, group_.op(h.delta_init, arena_[v].delta)});
    }
    return out;
  }

  /// Children of v in stored order, with deltas made absolute by shift.
  std::vector<Root> children_of(NodeId v, const Value& shift) const {
    std::vector<Root> out;
    for (NodeId c = arena_[v].fch; c != kNil; c = arena_[c].nsb) {
      out.push_back({c, group_.op(shift, arena_[c].delta)});
    }
    return out;
  }

  /// Links two trees of equal rank; the one with the smaller delta becomes
  /// the root and the other its first child.
  Root link(Root a, Root b) {
    if (cmp(b.delta, a.delta) < 0) std::swap(a, b);
    const Node& na = arena_[a.id];
    const Node& nb = arena_[b.id];
    NodeId child = append({nb.fch, na.fch, nb.rank, difference(group_, a.delta, b.delta), nb.val});
    NodeId parent = append({child, kNil, na.rank + 1, a.delta, na.val});
    return {parent, std::move(a.delta)};
  }

  /// Binomial union of two root lists with strictly increasing ranks.
  std::vector<Root> merge(std::vector<Root> a, std::vector<Root> b) {
    std::vector<Root> out;
    out.reserve(a.size() + b.size());
    std::optional<Root> carry;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size() || carry) {
      std::uint32_t r = ~std::uint32_t{0};
      if (i < a.size()) r = std::min(r, rank(a[i]));
      if (j < b.size()) r = std::min(r, rank(b[j]));
      if (carry) r = std::min(r, rank(*carry));
      std::optional<Root> x, y;
      if (i < a.size() && rank(a[i]) == r) x = std::move(a[i++]);
      if (j < b.size() && rank(b[j]) == r) y = std::move(b[j++]);
      if (carry && rank(*carry) == r) {
        Root c = std::move(*carry);
        carry.reset();
        if (x && y) {
          out.push_back(std::move(c));
        } else if (x) {
          y = std::move(c);
        } else if (y) {
          x = std::move(c);
        } else {
          out.push_back(std::move(c));
        }
      }
      if (x && y) {
        carry = link(std::move(*x), std::move(*y));
      } else if (x) {
        out.push_back(std::move(*x));
      } else if (y) {
        out.push_back(std::move(*y));
      }
    }
    return out;
  }

  /// Writes a root list as fresh nodes, reusing an existing record when its
  /// sibling pointer and delta already match.
  Handle materialize(const std::vector<Root>& roots) {
    NodeId next = kNil;
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
      const Node& n = arena_[it->id];
      if (n.nsb == next && cmp(n.delta, it->delta) == 0) {
        next = it->id;
      } else {
        next = append({n.fch, next, n.rank, it->delta, n.val});
      }
    }
    return {next, group_.identity()};
  }

 private:
  std::string check_heap_order_below(NodeId v, const Value& prio) const {
    for (NodeId c = arena_[v].fch; c != kNil; c = arena_[c].nsb) {
      Value cp = group_.op(prio, arena_[c].delta);
      if (group_.compare(prio, cp) > 0) return "heap order violated below node " + std::to_string(v);
      if (auto err = check_heap_order_below(c, cp); !err.empty()) return err;
    }
    return {};
  }

  G group_;
  std::shared_ptr<OpCounter> counter_;
  Arena<Node> arena_;
};

}  // namespace detail
}  // namespace rankenum
