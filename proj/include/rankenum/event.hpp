#pragma once

// Input letters and transition guards.
//
// Every input position is an Event: a type name plus named integer
// attributes. A plain word symbol "a" is the event of type "a" with no
// attributes, so symbol guards and predicate guards share one matcher.
//
// Predicate syntax (conjunction of atoms):
//   pred  := atom ( "&&" atom )*
//   atom  := "TRUE" | "type" "[" NAME "]" | NAME op INT
//   op    := "<" | "<=" | "=" | "==" | ">=" | ">"
// A comparison on an attribute the event does not carry is false.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rankenum {

/// Error with a 1-based column inside the offending text.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

struct Event {
  std::string type;
  std::vector<std::pair<std::string, std::int64_t>> attrs;

  std::optional<std::int64_t> attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
      if (k == name) return v;
    }
    return std::nullopt;
  }

  friend bool operator==(const Event&, const Event&) = default;
};

inline Event symbol_event(std::string symbol) { return {std::move(symbol), {}}; }

inline std::string format_event(const Event& e) {
  std::string s = e.type;
  for (const auto& [k, v] : e.attrs) s += ' ' + k + '=' + std::to_string(v);
  return s;
}

namespace detail {

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses "TYPE key=value ..." (whitespace separated).
inline Event parse_event(std::string_view line) {
  Event e;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  auto token = [&] {
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    return line.substr(start, i - start);
  };
  skip_ws();
  if (i == line.size()) throw SyntaxError("empty event", i + 1);
  std::size_t type_col = i + 1;
  e.type = std::string(token());
  if (e.type.find('=') != std::string::npos) throw SyntaxError("event type missing", type_col);
  for (skip_ws(); i < line.size(); skip_ws()) {
    std::size_t col = i + 1;
    std::string_view tok = token();
    auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw SyntaxError("expected key=value, got '" + std::string(tok) + "'", col);
    }
    auto value = detail::parse_int(tok.substr(eq + 1));
    if (!value) throw SyntaxError("attribute value is not an integer", col + eq + 1);
    std::string key(tok.substr(0, eq));
    if (e.attr(key)) throw SyntaxError("duplicate attribute '" + key + "'", col);
    e.attrs.emplace_back(std::move(key), *value);
  }
  return e;
}

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

inline const char* cmp_op_name(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

struct Atom {
  enum class Kind { Type, Attr };
  Kind kind = Kind::Type;
  std::string name;  // type name or attribute name
  CmpOp op = CmpOp::Eq;
  std::int64_t constant = 0;

  bool matches(const Event& e) const {
    if (kind == Kind::Type) return e.type == name;
    auto v = e.attr(name);
    if (!v) return false;
    switch (op) {
      case CmpOp::Lt: return *v < constant;
      case CmpOp::Le: return *v <= constant;
      case CmpOp::Eq: return *v == constant;
      case CmpOp::Ge: return *v >= constant;
      case CmpOp::Gt: return *v > constant;
    }
    return false;
  }

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A conjunction of atoms; no atoms means TRUE. symbol is set for guards
/// written as a plain input symbol ("on" in the file format).
struct Guard {
  std::vector<Atom> atoms;
  bool symbol = false;

  bool matches(const Event& e) const {
    for (const Atom& a : atoms) {
      if (!a.matches(e)) return false;
    }
    return true;
  }

  friend bool operator==(const Guard&, const Guard&) = default;
};

inline Guard symbol_guard(std::string symbol) {
  return {{Atom{Atom::Kind::Type, std::move(symbol), CmpOp::Eq, 0}}, true};
}

inline std::string format_guard(const Guard& g) {
  if (g.symbol) return g.atoms.front().name;
  if (g.atoms.empty()) return "TRUE";
  std::string s;
  for (const Atom& a : g.atoms) {
    if (!s.empty()) s += " && ";
    if (a.kind == Atom::Kind::Type) {
      s += "type[" + a.name + "]";
    } else {
      s += a.name + ' ' + cmp_op_name(a.op) + ' ' + std::to_string(a.constant);
    }
  }
  return s;
}

inline Guard parse_predicate(std::string_view text) {
  Guard g;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto name = [&] {
    std::size_t start = i;
    while (i < text.size() && detail::is_name_char(text[i])) ++i;
    if (start == i) throw SyntaxError("expected a name", start + 1);
    return std::string(text.substr(start, i - start));
  };
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c) {
      throw SyntaxError(std::string("expected '") + c + "'", i + 1);
    }
    ++i;
  };
  while (true) {
    skip_ws();
    std::string word = name();
    skip_ws();
    if (word == "TRUE") {
      // contributes no constraint
    } else if (word == "type" && i < text.size() && text[i] == '[') {
      ++i;
      skip_ws();
      std::string type = name();
      skip_ws();
      expect(']');
      g.atoms.push_back({Atom::Kind::Type, std::move(type), CmpOp::Eq, 0});
    } else {
      CmpOp op;
      if (text.substr(i, 2) == "<=") {
        op = CmpOp::Le, i += 2;
      } else if (text.substr(i, 2) == ">=") {
        op = CmpOp::Ge, i += 2;
      } else if (text.substr(i, 2) == "==") {
        op = CmpOp::Eq, i += 2;
      } else if (i < text.size() && text[i] == '<') {
        op = CmpOp::Lt, ++i;
      } else if (i < text.size() && text[i] == '>') {
        op = CmpOp::Gt, ++i;
      } else if (i < text.size() && text[i] == '=') {
        op = CmpOp::Eq, ++i;
      } else {
        throw SyntaxError("expected a comparison after '" + word + "'", i + 1);
      }
      skip_ws();
      if (i < text.size() && text[i] == '+') ++i;
      std::size_t start = i;
      if (i < text.size() && text[i] == '-') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      auto v = detail::parse_int(text.substr(start, i - start));
      if (!v) throw SyntaxError("expected an integer constant", start + 1);
      g.atoms.push_back({Atom::Kind::Attr, std::move(word), op, *v});
    }
    skip_ws();
    if (i == text.size()) break;
    if (text.substr(i, 2) != "&&") throw SyntaxError("expected '&&' or end of predicate", i + 1);
    i += 2;
  }
  return g;
}

}  // namespace rankenum
