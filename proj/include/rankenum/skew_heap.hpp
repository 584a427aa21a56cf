#pragma once

// Fully-persistent skew incremental binomial heap.
//
// Same delta-priority representation as IncrementalBinomialHeap, but the
// two smallest root trees may share a rank, which lets add run in O(1)
// through a single type A or type B link. Melds use simple links.

#include <string>
#include <utility>
#include <vector>

#include "rankenum/detail/forest.hpp"

namespace rankenum {

template <OrderedGroup G, class T>
class SkewBinomialHeap : public detail::Forest<G, T> {
  using Base = detail::Forest<G, T>;
  using typename Base::Root;

 public:
  using typename Base::Handle;
  using typename Base::Node;
  using typename Base::Value;

  using Base::Base;

  /// At most three arena appends and two comparisons.
  Handle add(const Handle& h, T e, const Value& g) {
    if (this->is_empty(h)) {
      return {this->append({kNil, kNil, 0, g, std::move(e)}), this->group().identity()};
    }
    const auto& grp = this->group();
    Value v = grp.op(g, grp.inverse(h.delta_init));
    const Node& n1 = this->node(h.root);
    if (n1.nsb == kNil || this->node(n1.nsb).rank != n1.rank) {
      return {this->append({kNil, h.root, 0, std::move(v), std::move(e)}), h.delta_init};
    }
    NodeId r2 = n1.nsb;
    const Node& n2 = this->node(r2);
    if (this->cmp(v, n1.delta) < 0 && this->cmp(v, n2.delta) < 0) {
      // Type A: both rank-r trees hang below the new rank-0 node.
      NodeId c2 = this->append({n2.fch, kNil, n2.rank, difference(grp, v, n2.delta), n2.val});
      NodeId c1 = this->append({n1.fch, c2, n1.rank, difference(grp, v, n1.delta), n1.val});
      NodeId root = this->append({c1, n2.nsb, n1.rank + 1, std::move(v), std::move(e)});
      return {root, h.delta_init};
    }
    // Type B: the new node and the larger tree become the leftmost children
    // of the smaller tree's root.
    bool first_wins = this->cmp(n2.delta, n1.delta) >= 0;
    const Node& m = first_wins ? n1 : n2;
    const Node& o = first_wins ? n2 : n1;
    NodeId oc = this->append({o.fch, m.fch, o.rank, difference(grp, m.delta, o.delta), o.val});
    NodeId vc = this->append({kNil, oc, 0, difference(grp, m.delta, v), std::move(e)});
    NodeId root = this->append({vc, n2.nsb, m.rank + 1, m.delta, m.val});
    return {root, h.delta_init};
  }

  Handle meld(const Handle& h1, const Handle& h2) {
    if (this->is_empty(h1)) return h2;
    if (this->is_empty(h2)) return h1;
    return this->materialize(
        this->merge(normalize(this->roots_of(h1)), normalize(this->roots_of(h2))));
  }

  Handle delete_min(const Handle& h) {
    auto [index, v] = this->min_root(h);
    const auto& grp = this->group();
    Value prio = grp.op(h.delta_init, this->node(v).delta);
    std::vector<Root> rest = this->roots_of(h);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
    std::vector<Root> ranked;
    std::vector<Root> leaves;
    for (Root& c : this->children_of(v, prio)) {
      (this->rank(c) == 0 ? leaves : ranked).push_back(std::move(c));
    }
    std::reverse(ranked.begin(), ranked.end());
    Handle out = this->empty();
    if (!rest.empty() || !ranked.empty()) {
      out = this->materialize(this->merge(normalize(std::move(rest)), normalize(std::move(ranked))));
    }
    for (Root& leaf : leaves) out = add(out, this->node(leaf.id).val, leaf.delta);
    return out;
  }

  /// Root ranks (first two may tie), skew-tree size bounds
  /// 2^r <= n <= 2^(r+1)-1, heap order. Empty string when valid.
  std::string validate(const Handle& h) const {
    std::vector<NodeId> roots = this->root_list(h);
    for (std::size_t i = 1; i < roots.size(); ++i) {
      auto prev = this->node(roots[i - 1]).rank;
      auto cur = this->node(roots[i]).rank;
      if (i == 1 ? cur < prev : cur <= prev) return "root ranks out of order";
    }
    for (NodeId r : roots) {
      if (auto err = validate_tree(r); !err.empty()) return err;
    }
    return this->check_heap_order(h);
  }

 private:
  // A skew root list may open with two trees of equal rank; fold them so
  // the list is strictly increasing.
  std::vector<Root> normalize(std::vector<Root> roots) {
    if (roots.size() < 2 || this->rank(roots[0]) != this->rank(roots[1])) return roots;
    std::vector<Root> head{std::move(roots[0])};
    roots.erase(roots.begin());
    return this->merge(std::move(head), std::move(roots));
  }

  std::string validate_tree(NodeId v) const {
    const Node& n = this->node(v);
    std::size_t count = this->subtree_size(v);
    if (count < (std::size_t{1} << n.rank) || count > (std::size_t{1} << (n.rank + 1)) - 1) {
      return "skew tree size out of bounds at node " + std::to_string(v);
    }
    if (n.rank == 0 && n.fch != kNil) return "rank-0 node with children";
    for (NodeId c : this->siblings(n.fch)) {
      if (this->node(c).rank >= n.rank) return "child rank not below parent rank";
      if (auto err = validate_tree(c); !err.empty()) return err;
    }
    return {};
  }
};

}  // namespace rankenum
