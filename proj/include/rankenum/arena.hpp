#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>

namespace rankenum {

/// Snapshot of abstract structure operations.
struct OpStats {
  std::uint64_t appends = 0;
  std::uint64_t comparisons = 0;

  std::uint64_t total() const noexcept { return appends + comparisons; }

  friend OpStats operator-(const OpStats& a, const OpStats& b) {
    return {a.appends - b.appends, a.comparisons - b.comparisons};
  }
};

/// Counts arena appends and priority comparisons. Shared by nested
/// structures so that one counter covers a whole HoW family.
class OpCounter {
 public:
  void add_append() noexcept { appends_.fetch_add(1, std::memory_order_relaxed); }
  void add_comparison() noexcept { comparisons_.fetch_add(1, std::memory_order_relaxed); }

  OpStats snapshot() const noexcept {
    return {appends_.load(std::memory_order_relaxed),
            comparisons_.load(std::memory_order_relaxed)};
  }

 private:
  std::atomic<std::uint64_t> appends_{0};
  std::atomic<std::uint64_t> comparisons_{0};
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNil = ~NodeId{0};

/// Append-only record table. Records are never mutated once written and
/// references to them stay valid for the arena's lifetime.
template <class Record>
class Arena {
 public:
  explicit Arena(std::shared_ptr<OpCounter> counter) : counter_(std::move(counter)) {}

  NodeId append(Record r) {
    if (records_.size() >= kNil) throw std::length_error("arena exhausted");
    records_.push_back(std::move(r));
    counter_->add_append();
    return static_cast<NodeId>(records_.size() - 1);
  }

  const Record& operator[](NodeId id) const { return records_[id]; }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::deque<Record> records_;
  std::shared_ptr<OpCounter> counter_;
};

}  // namespace rankenum
