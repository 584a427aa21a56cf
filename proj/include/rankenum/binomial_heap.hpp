#pragma once

// Fully-persistent incremental binomial heap.
//
// Every operation returns a new handle and leaves all earlier handles
// untouched. increase_by and is_empty are O(1); find_min, min_priority, add,
// delete_min and meld are O(log n). This is the reference queue the skew
// heap and the bootstrapped queue are checked against.

#include <string>
#include <utility>
#include <vector>

#include "rankenum/detail/forest.hpp"

namespace rankenum {

template <OrderedGroup G, class T>
class IncrementalBinomialHeap : public detail::Forest<G, T> {
  using Base = detail::Forest<G, T>;
  using typename Base::Root;

 public:
  using typename Base::Handle;
  using typename Base::Node;
  using typename Base::Value;

  using Base::Base;

  Handle add(const Handle& h, T e, const Value& g) {
    NodeId v = this->append({kNil, kNil, 0, g, std::move(e)});
    if (this->is_empty(h)) return {v, this->group().identity()};
    return this->materialize(this->merge(this->roots_of(h), {Root{v, g}}));
  }

  Handle meld(const Handle& h1, const Handle& h2) {
    if (this->is_empty(h1)) return h2;
    if (this->is_empty(h2)) return h1;
    return this->materialize(this->merge(this->roots_of(h1), this->roots_of(h2)));
  }

  Handle delete_min(const Handle& h) {
    auto [index, v] = this->min_root(h);
    std::vector<Root> rest = this->roots_of(h);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
    // Children are stored by decreasing rank; a root list wants increasing.
    std::vector<Root> kids = this->children_of(v, this->group().op(h.delta_init, this->node(v).delta));
    std::reverse(kids.begin(), kids.end());
    if (rest.empty() && kids.empty()) return this->empty();
    return this->materialize(this->merge(std::move(rest), std::move(kids)));
  }

  /// Structural check: strictly increasing root ranks, 2^k nodes per rank-k
  /// tree, binomial child ranks, heap order. Empty string when valid.
  std::string validate(const Handle& h) const {
    std::int64_t prev = -1;
    for (NodeId r : this->root_list(h)) {
      std::int64_t rk = this->node(r).rank;
      if (rk <= prev) return "root ranks not strictly increasing";
      prev = rk;
      if (auto err = validate_tree(r); !err.empty()) return err;
    }
    return this->check_heap_order(h);
  }

 private:
  std::string validate_tree(NodeId v) const {
    const Node& n = this->node(v);
    std::uint32_t expected = n.rank;
    for (NodeId c : this->siblings(n.fch)) {
      if (expected == 0) return "too many children";
      --expected;
      if (this->node(c).rank != expected) return "child ranks not k-1..0";
      if (auto err = validate_tree(c); !err.empty()) return err;
    }
    if (expected != 0) return "missing children";
    if (this->subtree_size(v) != (std::size_t{1} << n.rank)) return "binomial tree size mismatch";
    return {};
  }
};

}  // namespace rankenum
