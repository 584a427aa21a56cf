#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "rankenum/transducer.hpp"

namespace rankenum {

/// One letter of an encoded assignment: a non-empty varset at a 1-based position.
struct Mark {
  VarSet vars = 0;
  std::size_t position = 0;

  friend bool operator==(const Mark&, const Mark&) = default;
  friend auto operator<=>(const Mark&, const Mark&) = default;
};

using Encoding = std::vector<Mark>;

template <OrderedGroup G>
struct RankedOutput {
  Encoding enc;
  typename G::value_type cost;

  friend bool operator==(const RankedOutput&, const RankedOutput&) = default;
};

/// "{X}@1 {X,Y}@3"; the empty encoding renders as "".
template <OrderedGroup G>
std::string format_encoding(const CostTransducer<G>& t, const Encoding& enc) {
  std::string s;
  for (const Mark& m : enc) {
    if (!s.empty()) s += ' ';
    s += t.format_varset(m.vars) + '@' + std::to_string(m.position);
  }
  return s;
}

/// "COST<TAB>ENCODING".
template <OrderedGroup G>
std::string format_output(const CostTransducer<G>& t, const RankedOutput<G>& o) {
  return format_value(t.group, o.cost) + '\t' + format_encoding(t, o.enc);
}

}  // namespace rankenum
