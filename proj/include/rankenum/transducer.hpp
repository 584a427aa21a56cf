#pragma once

// Cost transducers: data model and the JSON file format.
//
//   {
//     "group": {"kind": "int"}            // or {"kind": "int_vec", "arity": k}
//     "states": ["q1", "q2"],
//     "vars": ["X"],
//     "init":  {"q1": 0},
//     "final": {"q2": 0},
//     "transitions": [
//       {"from": "q1", "on": "a", "vars": ["X"], "to": "q2", "cost": 1},
//       {"from": "q2", "when": "type[H] && value > 40", "vars": [], "to": "q2", "cost": 0}
//     ]
//   }
//
// "group" defaults to int, "vars" of a transition to [] and "cost" to zero.
// Costs are integers, or integer arrays of the group's arity.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankenum/event.hpp"
#include "rankenum/group.hpp"

namespace rankenum {

using StateId = std::uint32_t;
/// Bit i set means output variable i is in the set.
using VarSet = std::uint64_t;
inline constexpr std::size_t kMaxVars = 64;

class TransducerError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Schema, UnknownState, UnknownVariable, BadCostArity, BadPredicate };

  TransducerError(Kind kind, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  /// 1-based; 0 when the error is not tied to a text position.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

template <OrderedGroup G>
struct Transition {
  StateId from = 0;
  Guard guard;
  VarSet vars = 0;
  StateId to = 0;
  typename G::value_type cost;
};

template <OrderedGroup G>
struct CostTransducer {
  using Value = typename G::value_type;

  G group;
  std::vector<std::string> states;
  std::vector<std::string> vars;
  std::vector<std::optional<Value>> init;   // indexed by state
  std::vector<std::optional<Value>> final;  // indexed by state
  std::vector<Transition<G>> transitions;
  std::vector<std::string> warnings;

  std::size_t num_states() const noexcept { return states.size(); }

  /// |T|: states plus transitions.
  std::size_t size() const noexcept { return states.size() + transitions.size(); }

  bool symbol_mode() const {
    return std::all_of(transitions.begin(), transitions.end(),
                       [](const Transition<G>& t) { return t.guard.symbol; });
  }

  /// Indices of transitions whose guard accepts e.
  std::vector<std::size_t> matching(const Event& e) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      if (transitions[i].guard.matches(e)) out.push_back(i);
    }
    return out;
  }

  /// "{A,B}" with names sorted lexicographically.
  std::string format_varset(VarSet s) const {
    std::vector<std::string_view> names;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (s >> i & 1) names.emplace_back(vars[i]);
    }
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ',';
      out += names[i];
    }
    return out + '}';
  }
};

using AnyTransducer = std::variant<CostTransducer<IntGroup>, CostTransducer<LexGroup>>;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void schema_error(const std::string& what) {
  throw TransducerError(TransducerError::Kind::Schema, what);
}

inline GroupSpec parse_group_spec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    schema_error("group: expected {\"kind\": \"int\"} or {\"kind\": \"int_vec\", \"arity\": k}");
  }
  std::string kind = j["kind"];
  if (kind == "int") return {GroupKind::Int, 1};
  if (kind == "int_vec") {
    if (!j.contains("arity") || !j["arity"].is_number_integer() || j["arity"].get<std::int64_t>() < 1) {
      schema_error("group: int_vec needs a positive integer arity");
    }
    return {GroupKind::IntVec, j["arity"].get<std::size_t>()};
  }
  schema_error("group: unknown kind '" + kind + "'");
}

inline std::int64_t parse_int64(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) {
    throw TransducerError(TransducerError::Kind::Schema, where + ": integer out of range");
  }
  throw TransducerError(TransducerError::Kind::Schema, where + ": expected an integer");
}

inline std::int64_t parse_value(const IntGroup&, const nlohmann::json& j, const std::string& where) {
  if (j.is_array()) {
    throw TransducerError(TransducerError::Kind::BadCostArity,
                          where + ": int group expects a scalar cost");
  }
  return parse_int64(j, where);
}

inline std::vector<std::int64_t> parse_value(const LexGroup& g, const nlohmann::json& j,
                                             const std::string& where) {
  if (!j.is_array() || j.size() != g.arity()) {
    throw TransducerError(TransducerError::Kind::BadCostArity,
                          where + ": expected an array of " + std::to_string(g.arity()) + " integers");
  }
  std::vector<std::int64_t> v;
  for (const auto& x : j) v.push_back(parse_int64(x, where));
  return v;
}

inline nlohmann::json value_to_json(const IntGroup&, std::int64_t v) { return v; }
inline nlohmann::json value_to_json(const LexGroup&, const std::vector<std::int64_t>& v) { return v; }

template <OrderedGroup G>
CostTransducer<G> build(G group, const nlohmann::json& doc) {
  CostTransducer<G> t{std::move(group), {}, {}, {}, {}, {}, {}};
  std::unordered_map<std::string, StateId> state_ids;
  std::unordered_map<std::string, std::size_t> var_ids;

  if (!doc.contains("states") || !doc["states"].is_array()) schema_error("states: expected an array");
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) schema_error("states: expected strings");
    std::string name = s;
    if (!state_ids.emplace(name, static_cast<StateId>(t.states.size())).second) {
      schema_error("states: duplicate state '" + name + "'");
    }
    t.states.push_back(std::move(name));
  }
  if (doc.contains("vars")) {
    if (!doc["vars"].is_array()) schema_error("vars: expected an array");
    for (const auto& v : doc["vars"]) {
      if (!v.is_string()) schema_error("vars: expected strings");
      std::string name = v;
      if (!var_ids.emplace(name, t.vars.size()).second) schema_error("vars: duplicate variable '" + name + "'");
      t.vars.push_back(std::move(name));
    }
  }
  if (t.vars.size() > kMaxVars) schema_error("vars: at most 64 variables are supported");

  auto state_of = [&](const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where + ": expected a state name");
    auto it = state_ids.find(j.get<std::string>());
    if (it == state_ids.end()) {
      throw TransducerError(TransducerError::Kind::UnknownState,
                            where + ": unknown state '" + j.get<std::string>() + "'");
    }
    return it->second;
  };

  t.init.assign(t.states.size(), std::nullopt);
  t.final.assign(t.states.size(), std::nullopt);
  for (auto [key, target] : {std::pair{"init", &t.init}, std::pair{"final", &t.final}}) {
    if (!doc.contains(key)) continue;
    if (!doc[key].is_object()) schema_error(std::string(key) + ": expected an object state -> cost");
    for (const auto& [name, cost] : doc[key].items()) {
      std::string where = std::string(key) + "." + name;
      StateId s = state_of(nlohmann::json(name), where);
      (*target)[s] = parse_value(t.group, cost, where);
    }
  }

  if (doc.contains("transitions")) {
    if (!doc["transitions"].is_array()) schema_error("transitions: expected an array");
    std::size_t index = 0;
    for (const auto& j : doc["transitions"]) {
      std::string where = "transitions[" + std::to_string(index++) + "]";
      if (!j.is_object()) schema_error(where + ": expected an object");
      Transition<G> tr;
      if (!j.contains("from") || !j.contains("to")) schema_error(where + ": needs 'from' and 'to'");
      tr.from = state_of(j["from"], where + ".from");
      tr.to = state_of(j["to"], where + ".to");
      bool has_on = j.contains("on"), has_when = j.contains("when");
      if (has_on == has_when) schema_error(where + ": needs exactly one of 'on' and 'when'");
      if (has_on) {
        if (!j["on"].is_string() || j["on"].get<std::string>().empty()) {
          schema_error(where + ".on: expected a non-empty symbol");
        }
        tr.guard = symbol_guard(j["on"]);
      } else {
        if (!j["when"].is_string()) schema_error(where + ".when: expected a predicate string");
        try {
          tr.guard = parse_predicate(j["when"].get<std::string>());
        } catch (const SyntaxError& e) {
          throw TransducerError(TransducerError::Kind::BadPredicate,
                                where + ".when: " + e.what() + " at column " + std::to_string(e.column()));
        }
      }
      if (j.contains("vars")) {
        if (!j["vars"].is_array()) schema_error(where + ".vars: expected an array");
        for (const auto& v : j["vars"]) {
          if (!v.is_string()) schema_error(where + ".vars: expected variable names");
          auto it = var_ids.find(v.get<std::string>());
          if (it == var_ids.end()) {
            throw TransducerError(TransducerError::Kind::UnknownVariable,
                                  where + ".vars: unknown variable '" + v.get<std::string>() + "'");
          }
          tr.vars |= VarSet{1} << it->second;
        }
      }
      tr.cost = j.contains("cost") ? parse_value(t.group, j["cost"], where + ".cost") : t.group.identity();
      t.transitions.push_back(std::move(tr));
    }
  }

  auto any = [](const auto& m) { return std::any_of(m.begin(), m.end(), [](const auto& v) { return v.has_value(); }); };
  if (!any(t.init)) t.warnings.push_back("no initial states: every word has an empty output set");
  if (!any(t.final)) t.warnings.push_back("no final states: every word has an empty output set");
  return t;
}

}  // namespace detail

/// Parses and validates a transducer document.
inline AnyTransducer parse_transducer(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the byte just past the offending character.
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = detail::line_column(text, offset);
    std::string msg = e.what();
    if (auto p = msg.find("]: "); p != std::string::npos) msg = msg.substr(p + 3);
    throw TransducerError(TransducerError::Kind::Syntax, msg, line, col);
  }
  if (!doc.is_object()) detail::schema_error("top level: expected an object");
  GroupSpec spec = doc.contains("group") ? detail::parse_group_spec(doc["group"]) : GroupSpec{};
  if (spec.kind == GroupKind::Int) return detail::build(IntGroup{}, doc);
  return detail::build(LexGroup{spec.arity}, doc);
}

template <OrderedGroup G>
std::string serialize_transducer(const CostTransducer<G>& t) {
  nlohmann::ordered_json doc;
  GroupSpec spec = t.group.spec();
  if (spec.kind == GroupKind::Int) {
    doc["group"] = {{"kind", "int"}};
  } else {
    doc["group"] = {{"kind", "int_vec"}, {"arity", spec.arity}};
  }
  doc["states"] = t.states;
  doc["vars"] = t.vars;
  for (auto [key, source] : {std::pair{"init", &t.init}, std::pair{"final", &t.final}}) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (std::size_t s = 0; s < t.states.size(); ++s) {
      if ((*source)[s]) m[t.states[s]] = detail::value_to_json(t.group, *(*source)[s]);
    }
    doc[key] = std::move(m);
  }
  nlohmann::ordered_json trs = nlohmann::ordered_json::array();
  for (const auto& tr : t.transitions) {
    nlohmann::ordered_json j;
    j["from"] = t.states[tr.from];
    if (tr.guard.symbol) {
      j["on"] = tr.guard.atoms.front().name;
    } else {
      j["when"] = format_guard(tr.guard);
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
      if (tr.vars >> i & 1) names.push_back(t.vars[i]);
    }
    j["vars"] = names;
    j["to"] = t.states[tr.to];
    j["cost"] = detail::value_to_json(t.group, tr.cost);
    trs.push_back(std::move(j));
  }
  doc["transitions"] = std::move(trs);
  return doc.dump(2) + "\n";
}

}  // namespace rankenum
