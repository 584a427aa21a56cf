#pragma once

// Ordered abelian groups used for costs and priorities.
//
// Two models are provided: IntGroup (Z, +, 0, <=) and LexGroup (Z^k with
// componentwise addition and lexicographic order). Both use checked 64-bit
// arithmetic; overflow raises GroupError instead of wrapping.

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankenum {

class GroupError : public std::runtime_error {
 public:
  enum class Kind { ArityMismatch, Overflow };

  GroupError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class GroupKind { Int, IntVec };

/// Runtime description of a group, as read from a transducer file.
struct GroupSpec {
  GroupKind kind = GroupKind::Int;
  std::size_t arity = 1;  // only meaningful for IntVec

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

template <class G>
concept OrderedGroup = requires(const G& g, const typename G::value_type& a) {
  typename G::value_type;
  { g.op(a, a) } -> std::same_as<typename G::value_type>;
  { g.identity() } -> std::same_as<typename G::value_type>;
  { g.inverse(a) } -> std::same_as<typename G::value_type>;
  { g.compare(a, a) } -> std::same_as<std::strong_ordering>;
  { g.spec() } -> std::same_as<GroupSpec>;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw GroupError(GroupError::Kind::Overflow,
                     "group overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) {
    throw GroupError(GroupError::Kind::Overflow, "group overflow: cannot negate INT64_MIN");
  }
  return -a;
}

}  // namespace detail

struct IntGroup {
  using value_type = std::int64_t;

  value_type op(value_type a, value_type b) const { return detail::checked_add(a, b); }
  value_type identity() const { return 0; }
  value_type inverse(value_type a) const { return detail::checked_neg(a); }
  std::strong_ordering compare(value_type a, value_type b) const { return a <=> b; }
  GroupSpec spec() const { return {GroupKind::Int, 1}; }

  friend bool operator==(const IntGroup&, const IntGroup&) = default;
};

class LexGroup {
 public:
  using value_type = std::vector<std::int64_t>;

  explicit LexGroup(std::size_t arity = 1) : arity_(arity) {
    if (arity == 0) {
      throw GroupError(GroupError::Kind::ArityMismatch, "vector group arity must be positive");
    }
  }

  std::size_t arity() const noexcept { return arity_; }

  value_type op(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    value_type r(arity_);
    for (std::size_t i = 0; i < arity_; ++i) r[i] = detail::checked_add(a[i], b[i]);
    return r;
  }

  value_type identity() const { return value_type(arity_, 0); }

  value_type inverse(const value_type& a) const {
    check(a);
    value_type r(arity_);
    for (std::size_t i = 0; i < arity_; ++i) r[i] = detail::checked_neg(a[i]);
    return r;
  }

  std::strong_ordering compare(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  GroupSpec spec() const { return {GroupKind::IntVec, arity_}; }

  void check(const value_type& a) const {
    if (a.size() != arity_) {
      throw GroupError(GroupError::Kind::ArityMismatch,
                       "expected a vector of arity " + std::to_string(arity_) + ", got " +
                           std::to_string(a.size()));
    }
  }

  friend bool operator==(const LexGroup&, const LexGroup&) = default;

 private:
  std::size_t arity_;
};

template <OrderedGroup G>
bool less(const G& g, const typename G::value_type& a, const typename G::value_type& b) {
  return g.compare(a, b) < 0;
}

/// a^-1 (+) b, the "difference" used when re-rooting delta priorities.
template <OrderedGroup G>
typename G::value_type difference(const G& g, const typename G::value_type& a,
                                  const typename G::value_type& b) {
  return g.op(g.inverse(a), b);
}

inline std::string format_value(const IntGroup&, std::int64_t v) { return std::to_string(v); }

inline std::string format_value(const LexGroup&, const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  s += ')';
  return s;
}

/// Calls f with the concrete group model described by spec.
template <class F>
decltype(auto) visit_group(const GroupSpec& spec, F&& f) {
  if (spec.kind == GroupKind::Int) return f(IntGroup{});
  return f(LexGroup{spec.arity});
}

}  // namespace rankenum
