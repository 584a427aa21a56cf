#pragma once

// Ranked enumeration of a cost transducer's outputs.
//
// Preprocessing keeps one heap of words per state and position: h[q] at
// level i holds (output, partial cost) for every run over the first i
// letters that ends in q. Each level is built from the previous one only,
// so the same code serves batch evaluation and event streams. The final
// heap is drained in cost order.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rankenum/heap_of_words.hpp"
#include "rankenum/output.hpp"

namespace rankenum {

template <OrderedGroup G>
class Enumerator {
 public:
  using Value = typename G::value_type;
  using How = HeapOfWords<G, Mark>;
  using Handle = typename How::Handle;

  struct Level {
    std::vector<Handle> heaps;  // indexed by state
    std::size_t position = 0;
  };

  /// t must outlive the enumerator.
  explicit Enumerator(const CostTransducer<G>& t, std::shared_ptr<OpCounter> counter = nullptr)
      : t_(&t), how_(t.group, std::move(counter)) {}

  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  const CostTransducer<G>& transducer() const noexcept { return *t_; }
  How& how() noexcept { return how_; }
  const How& how() const noexcept { return how_; }
  OpStats stats() const noexcept { return how_.stats(); }

  Level initial() {
    Level lv{std::vector<Handle>(t_->num_states(), how_.empty()), 0};
    for (StateId q = 0; q < t_->num_states(); ++q) {
      if (t_->init[q]) lv.heaps[q] = how_.add(how_.empty(), std::nullopt, *t_->init[q]);
    }
    return lv;
  }

  Level advance(const Level& prev, const Event& e) {
    Level lv{std::vector<Handle>(t_->num_states(), how_.empty()), prev.position + 1};
    for (const auto& tr : t_->transitions) {
      const Handle& src = prev.heaps[tr.from];
      if (how_.is_empty(src) || !tr.guard.matches(e)) continue;
      Handle h = src;
      if (tr.vars) h = how_.extend_by(h, Mark{tr.vars, lv.position});
      h = how_.increase_by(h, tr.cost);
      lv.heaps[tr.to] = how_.meld(lv.heaps[tr.to], h);
    }
    return lv;
  }

  /// Applies the final costs; the level itself is left untouched.
  Handle outputs(const Level& lv) {
    Handle out = how_.empty();
    for (StateId q = 0; q < t_->num_states(); ++q) {
      if (t_->final[q] && !how_.is_empty(lv.heaps[q])) {
        out = how_.meld(out, how_.increase_by(lv.heaps[q], *t_->final[q]));
      }
    }
    return out;
  }

  Handle preprocess(std::span<const Event> w) {
    Level lv = initial();
    for (const Event& e : w) lv = advance(lv, e);
    return outputs(lv);
  }

 private:
  const CostTransducer<G>* t_;
  How how_;
};

/// Drains a heap of outputs in non-decreasing cost order, optionally
/// stopping after top_k outputs or before the first cost above max_cost.
template <OrderedGroup G>
class OutputStream {
 public:
  using Value = typename G::value_type;
  using How = HeapOfWords<G, Mark>;
  using Handle = typename How::Handle;

  OutputStream(How& how, Handle h, std::optional<std::size_t> top_k = std::nullopt,
               std::optional<Value> max_cost = std::nullopt)
      : how_(&how), h_(h), top_k_(top_k), max_cost_(std::move(max_cost)) {}

  std::optional<RankedOutput<G>> next() {
    if (done_ || how_->is_empty(h_) || (top_k_ && emitted_ >= *top_k_)) {
      done_ = true;
      return std::nullopt;
    }
    OpStats before = how_->stats();
    auto entry = how_->find_min(h_);
    if (max_cost_ && how_->group().compare(entry.priority, *max_cost_) > 0) {
      done_ = true;
      return std::nullopt;
    }
    h_ = how_->delete_min(h_);
    last_delay_ = (how_->stats() - before).total();
    ++emitted_;
    return RankedOutput<G>{std::move(entry.word), std::move(entry.priority)};
  }

  std::size_t emitted() const noexcept { return emitted_; }

  /// Structure operations spent producing the most recent output.
  std::uint64_t last_delay_ops() const noexcept { return last_delay_; }

 private:
  How* how_;
  Handle h_;
  std::optional<std::size_t> top_k_;
  std::optional<Value> max_cost_;
  std::size_t emitted_ = 0;
  std::uint64_t last_delay_ = 0;
  bool done_ = false;
};

/// Incremental evaluation over an event stream. Each push costs one level
/// of preprocessing; earlier output handles stay valid.
template <OrderedGroup G>
class StreamSession {
 public:
  using Handle = typename Enumerator<G>::Handle;

  explicit StreamSession(const CostTransducer<G>& t, std::shared_ptr<OpCounter> counter = nullptr)
      : engine_(t, std::move(counter)), level_(engine_.initial()) {}

  void push(const Event& e) { level_ = engine_.advance(level_, e); }
  std::size_t position() const noexcept { return level_.position; }
  Handle outputs() { return engine_.outputs(level_); }
  const typename Enumerator<G>::Level& level() const noexcept { return level_; }
  Enumerator<G>& engine() noexcept { return engine_; }

 private:
  Enumerator<G> engine_;
  typename Enumerator<G>::Level level_;
};

}  // namespace rankenum
