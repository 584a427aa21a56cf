#pragma once

// Command implementations behind the rankenum tool. They write to the given
// streams and return the process exit code: 0 success, 1 error, 2 ambiguous.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "rankenum/analysis.hpp"
#include "rankenum/enumerate.hpp"

namespace rankenum::cli {

enum Exit : int { kOk = 0, kError = 1, kAmbiguous = 2 };

inline std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << path << '\n';
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<AnyTransducer> load(const std::string& path, std::ostream& err) {
  auto text = read_file(path, err);
  if (!text) return std::nullopt;
  try {
    AnyTransducer t = parse_transducer(*text);
    std::visit([&](const auto& m) {
      for (const auto& w : m.warnings) err << "warning: " << w << '\n';
    }, t);
    return t;
  } catch (const TransducerError& e) {
    err << "error: " << path;
    if (e.line()) err << ':' << e.line() << ':' << e.column();
    err << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

/// Accepts "5" for int groups and "1,2" or "(1,2)" for vector groups.
inline std::optional<std::int64_t> parse_cost(const IntGroup&, const std::string& s) {
  return detail::parse_int(s);
}

inline std::optional<std::vector<std::int64_t>> parse_cost(const LexGroup& g, std::string s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    auto x = detail::parse_int(part);
    if (!x) return std::nullopt;
    v.push_back(*x);
  }
  if (v.size() != g.arity()) return std::nullopt;
  return v;
}

template <OrderedGroup G>
void print_ambiguity(const CostTransducer<G>& t, const AmbiguityReport<G>& r, std::ostream& out) {
  out << "ambiguous\nwitness:";
  for (const Event& e : r.witness) out << (t.symbol_mode() ? " " : " | ") << format_event(e);
  out << '\n';
  auto run = [&](const char* name, StateId start, const std::vector<std::size_t>& steps) {
    out << name << ": " << t.states[start];
    for (std::size_t i : steps) {
      const auto& tr = t.transitions[i];
      out << " -[" << format_guard(tr.guard) << " / " << t.format_varset(tr.vars) << " : "
          << format_value(t.group, tr.cost) << "]-> " << t.states[tr.to];
    }
    out << '\n';
  };
  run("run 1", r.start1, r.run1);
  run("run 2", r.start2, r.run2);
}

template <OrderedGroup G>
bool require_unambiguous(const CostTransducer<G>& t, std::ostream& err) {
  auto report = check_unambiguous(t);
  if (report.unambiguous) return true;
  err << "error: transducer is ambiguous; run 'check' for a witness\n";
  return false;
}

template <OrderedGroup G>
int drain(Enumerator<G>& engine, typename Enumerator<G>::Handle h, std::optional<std::size_t> top_k,
          std::optional<typename G::value_type> max_cost, std::ostream& out) {
  OutputStream<G> stream(engine.how(), h, top_k, std::move(max_cost));
  out << "#\n";
  while (auto o = stream.next()) out << format_output(engine.transducer(), *o) << '\n';
  out << "#\n";
  return kOk;
}

template <class F>
int with_transducer(const std::string& path, std::ostream& err, F&& f) {
  auto t = load(path, err);
  if (!t) return kError;
  try {
    return std::visit(f, *t);
  } catch (const GroupError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

inline int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  return with_transducer(path, err, [&](const auto& t) {
    auto report = check_unambiguous(t);
    if (report.unambiguous) {
      out << "unambiguous\n";
      return int{kOk};
    }
    print_ambiguity(t, report, out);
    return int{kAmbiguous};
  });
}

inline int cmd_enumerate(const std::string& path, const std::string& word,
                         std::optional<std::size_t> top_k, const std::optional<std::string>& max_cost,
                         std::ostream& out, std::ostream& err) {
  return with_transducer(path, err, [&](const auto& t) {
    using G = std::decay_t<decltype(t.group)>;
    std::optional<typename G::value_type> bound;
    if (max_cost) {
      bound = parse_cost(t.group, *max_cost);
      if (!bound) {
        err << "error: bad --max-cost value '" << *max_cost << "'\n";
        return int{kError};
      }
    }
    if (!require_unambiguous(t, err)) return int{kAmbiguous};
    std::vector<Event> w;
    std::istringstream ss(word);
    for (std::string tok; ss >> tok;) w.push_back(symbol_event(tok));
    Enumerator<G> engine(t);
    return drain(engine, engine.preprocess(w), top_k, bound, out);
  });
}

inline int cmd_stream(const std::string& path, std::istream& in, const std::optional<std::string>& max_cost,
                      std::ostream& out, std::ostream& err) {
  return with_transducer(path, err, [&](const auto& t) {
    using G = std::decay_t<decltype(t.group)>;
    std::optional<typename G::value_type> bound;
    if (max_cost) {
      bound = parse_cost(t.group, *max_cost);
      if (!bound) {
        err << "error: bad --max-cost value '" << *max_cost << "'\n";
        return int{kError};
      }
    }
    if (!require_unambiguous(t, err)) return int{kAmbiguous};
    StreamSession<G> session(t);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Event e;
      try {
        e = parse_event(line);
      } catch (const SyntaxError& ex) {
        err << "error: stdin:" << line_no << ':' << ex.column() << ": " << ex.what() << '\n';
        return int{kError};
      }
      session.push(e);
      out << '@' << session.position() << '\n';
      drain(session.engine(), session.outputs(), std::nullopt, bound, out);
    }
    return int{kOk};
  });
}

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t preprocess_ops = 0;
  std::size_t outputs = 0;
  std::optional<double> max_delay_ops_per_symbol;
};

/// Preprocesses a random word of length n drawn from the machine's abstract
/// alphabet, then drains at most max_outputs outputs. Delay per output is
/// counted in structure operations and divided by max(1, |output|).
template <OrderedGroup G>
BenchRow bench_once(const CostTransducer<G>& t, std::size_t n, std::mt19937_64& rng, std::size_t max_outputs) {
  std::vector<Event> alphabet = abstract_alphabet(t);
  if (alphabet.empty()) alphabet.push_back(symbol_event("_"));
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<Event> w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.push_back(alphabet[pick(rng)]);

  Enumerator<G> engine(t);
  BenchRow row{n, 0, 0, std::nullopt};
  auto h = engine.preprocess(w);
  row.preprocess_ops = engine.stats().total();
  OutputStream<G> stream(engine.how(), h, max_outputs);
  while (auto o = stream.next()) {
    double per = static_cast<double>(stream.last_delay_ops()) /
                 static_cast<double>(std::max<std::size_t>(1, o->enc.size()));
    if (!row.max_delay_ops_per_symbol || per > *row.max_delay_ops_per_symbol) row.max_delay_ops_per_symbol = per;
    ++row.outputs;
  }
  return row;
}

inline std::string format_bench_row(const BenchRow& r) {
  std::string s = std::to_string(r.n) + ',' + std::to_string(r.preprocess_ops) + ',' + std::to_string(r.outputs) + ',';
  if (r.max_delay_ops_per_symbol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", *r.max_delay_ops_per_symbol);
    s += buf;
  }
  return s;
}

inline int cmd_bench(const std::string& path, const std::vector<std::size_t>& lengths, std::uint64_t seed,
                     std::size_t max_outputs, std::ostream& out, std::ostream& err) {
  return with_transducer(path, err, [&](const auto& t) {
    std::mt19937_64 rng(seed);
    out << "n,preprocess_ops,outputs,max_delay_ops_per_symbol\n";
    for (std::size_t n : lengths) out << format_bench_row(bench_once(t, n, rng, max_outputs)) << '\n';
    return int{kOk};
  });
}

}  // namespace rankenum::cli
