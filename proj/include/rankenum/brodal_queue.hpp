#pragma once

// Fully-persistent incremental Brodal queue.
//
// A queue is empty or a record ((e, p), h) where (e, p) is the minimum of
// everything the queue holds and h is a skew heap of further queues. A queue
// Q' stored in h under priority p' denotes its contents shifted by
// p_{Q'}^-1 (+) p'; increase_by therefore only touches the top record and the
// heap's delta_init, and the shift reaches Q' when delete_min unpacks it.
//
// add, meld, increase_by, find_min, min_priority and is_empty are O(1) with
// a bounded number of arena appends; delete_min is O(log n).

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rankenum/skew_heap.hpp"

namespace rankenum {

/// Queue version; the default handle is the empty queue.
struct QueueHandle {
  NodeId id = kNil;
  friend bool operator==(const QueueHandle&, const QueueHandle&) = default;
};

template <OrderedGroup G, class T>
class BrodalQueue {
 public:
  using Group = G;
  using Value = typename G::value_type;
  using Element = T;

  using Handle = QueueHandle;

  using Inner = SkewBinomialHeap<G, Handle>;

  struct Record {
    T elem;
    Value prio;
    typename Inner::Handle inner;
  };

  explicit BrodalQueue(G group = G{}, std::shared_ptr<OpCounter> counter = nullptr)
      : group_(std::move(group)),
        counter_(counter ? std::move(counter) : std::make_shared<OpCounter>()),
        heap_(group_, counter_),
        records_(counter_) {}

  BrodalQueue(const BrodalQueue&) = delete;
  BrodalQueue& operator=(const BrodalQueue&) = delete;

  const G& group() const noexcept { return group_; }
  const std::shared_ptr<OpCounter>& counter() const noexcept { return counter_; }
  OpStats stats() const noexcept { return counter_->snapshot(); }
  const Inner& inner_heap() const noexcept { return heap_; }
  const Record& record(const Handle& q) const { return records_[q.id]; }

  Handle empty() const noexcept { return {}; }

  bool is_empty(const Handle& q) const noexcept { return q.id == kNil; }

  const T& find_min(const Handle& q) const { return top(q).elem; }

  const Value& min_priority(const Handle& q) const { return top(q).prio; }

  /// Ties keep the incumbent minimum.
  Handle add(const Handle& q, T e, const Value& g) {
    if (is_empty(q)) return make(std::move(e), g, heap_.empty());
    const Record& r = records_[q.id];
    if (cmp(g, r.prio) < 0) {
      Handle loser = make(r.elem, r.prio, heap_.empty());
      return make(std::move(e), g, heap_.add(r.inner, loser, r.prio));
    }
    Handle loser = make(std::move(e), g, heap_.empty());
    return make(r.elem, r.prio, heap_.add(r.inner, loser, g));
  }

  /// On equal minima q1 stays on top.
  Handle meld(const Handle& q1, const Handle& q2) {
    if (is_empty(q1)) return q2;
    if (is_empty(q2)) return q1;
    const Record& a = records_[q1.id];
    const Record& b = records_[q2.id];
    if (cmp(b.prio, a.prio) < 0) return make(b.elem, b.prio, heap_.add(b.inner, q1, a.prio));
    return make(a.elem, a.prio, heap_.add(a.inner, q2, b.prio));
  }

  Handle increase_by(const Handle& q, const Value& d) {
    if (is_empty(q)) return q;
    const Record& r = records_[q.id];
    return make(r.elem, group_.op(r.prio, d), heap_.increase_by(r.inner, d));
  }

  Handle delete_min(const Handle& q) {
    const Record& top_rec = top(q);
    if (heap_.is_empty(top_rec.inner)) return {};
    Handle next = heap_.find_min(top_rec.inner);
    Value u = heap_.min_priority(top_rec.inner);
    auto rest = heap_.delete_min(top_rec.inner);
    const Record& nr = records_[next.id];
    auto unpacked = heap_.increase_by(nr.inner, difference(group_, nr.prio, u));
    return make(nr.elem, std::move(u), heap_.meld(unpacked, rest));
  }

  /// Every stored (element, priority) pair, lazy shifts applied.
  std::vector<std::pair<T, Value>> contents(const Handle& q) const {
    std::vector<std::pair<T, Value>> out;
    std::vector<std::pair<Handle, Value>> stack;  // queue and the shift to apply
    if (!is_empty(q)) stack.emplace_back(q, group_.identity());
    while (!stack.empty()) {
      auto [h, shift] = std::move(stack.back());
      stack.pop_back();
      const Record& r = records_[h.id];
      out.emplace_back(r.elem, group_.op(r.prio, shift));
      heap_.for_each(r.inner, [&](const Handle& nested, const Value& p) {
        const Record& nr = records_[nested.id];
        stack.emplace_back(nested, difference(group_, nr.prio, group_.op(p, shift)));
      });
    }
    return out;
  }

  /// Checks, recursively, that each record's top pair is the minimum of its
  /// contents and that every inner skew heap is well formed.
  std::string validate(const Handle& q) const {
    std::vector<Handle> stack;
    if (!is_empty(q)) stack.push_back(q);
    while (!stack.empty()) {
      Handle h = stack.back();
      stack.pop_back();
      const Record& r = records_[h.id];
      if (auto err = heap_.validate(r.inner); !err.empty()) return err;
      std::string err;
      heap_.for_each(r.inner, [&](const Handle& nested, const Value& p) {
        // The stored priority p is the nested queue's minimum in this frame.
        if (group_.compare(p, r.prio) < 0) err = "queue top is not the minimum";
        stack.push_back(nested);
      });
      if (!err.empty()) return err;
    }
    return {};
  }

 private:
  const Record& top(const Handle& q) const {
    if (is_empty(q)) throw EmptyError("operation on an empty queue");
    return records_[q.id];
  }

  Handle make(T e, Value p, typename Inner::Handle inner) {
    return {records_.append({std::move(e), std::move(p), std::move(inner)})};
  }

  std::strong_ordering cmp(const Value& a, const Value& b) const {
    counter_->add_comparison();
    return group_.compare(a, b);
  }

  G group_;
  std::shared_ptr<OpCounter> counter_;
  Inner heap_;
  Arena<Record> records_;
};

}  // namespace rankenum
