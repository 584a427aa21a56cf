#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/support.hpp"

using namespace rankenum;
using namespace testsupport;

namespace {

using Engine = Enumerator<IntGroup>;

std::vector<std::int64_t> costs_of(const std::vector<RankedOutput<IntGroup>>& v) {
  std::vector<std::int64_t> out;
  for (const auto& o : v) out.push_back(o.cost);
  return out;
}

std::vector<Event> cea0_events() {
  std::vector<Event> w;
  std::istringstream in(read_data("cea0_events.txt"));
  for (std::string line; std::getline(in, line);) w.push_back(parse_event(line));
  return w;
}

Encoding marks(std::initializer_list<std::size_t> positions) {
  Encoding e;
  for (std::size_t p : positions) e.push_back({1, p});
  return e;
}

// Partial runs over w ending in q, as (output, partial cost); the level oracle.
std::vector<std::pair<Encoding, std::int64_t>> partial_runs(const CostTransducer<IntGroup>& t,
                                                           const std::vector<Event>& w, StateId target) {
  std::vector<std::pair<Encoding, std::int64_t>> out;
  Encoding enc;
  auto dfs = [&](auto& self, StateId q, std::size_t i, std::int64_t cost) -> void {
    if (i == w.size()) {
      if (q == target) out.emplace_back(enc, cost);
      return;
    }
    for (const auto& tr : t.transitions) {
      if (tr.from != q || !tr.guard.matches(w[i])) continue;
      if (tr.vars) enc.push_back({tr.vars, i + 1});
      self(self, tr.to, i + 1, cost + tr.cost);
      if (tr.vars) enc.pop_back();
    }
  };
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (t.init[q]) dfs(dfs, q, 0, *t.init[q]);
  }
  return sorted(out);
}

}  // namespace

TEST(Enumerate, T1OnAba) {
  auto t = load_as<IntGroup>("t1.json");
  Engine engine(t);
  auto w = symbols("a b a");
  auto out = drain_outputs(engine, engine.preprocess(w));
  EXPECT_EQ(costs_of(out), (std::vector<std::int64_t>{0, 1, 1, 2}));
  EXPECT_EQ(as_multiset(out), as_multiset(enumerate_bruteforce(t, w)));
  EXPECT_EQ(cost_classes(out), cost_classes(enumerate_bruteforce(t, w)));
}

TEST(Enumerate, TopKAndMaxCost) {
  auto t = load_as<IntGroup>("t1.json");
  Engine engine(t);
  auto h = engine.preprocess(symbols("a b a"));
  OutputStream<IntGroup> top(engine.how(), h, 2);
  std::vector<std::int64_t> got;
  while (auto o = top.next()) got.push_back(o->cost);
  EXPECT_EQ(got, (std::vector<std::int64_t>{0, 1}));
  EXPECT_FALSE(top.next().has_value());

  OutputStream<IntGroup> bounded(engine.how(), h, std::nullopt, std::int64_t{1});
  got.clear();
  while (auto o = bounded.next()) got.push_back(o->cost);
  EXPECT_EQ(got, (std::vector<std::int64_t>{0, 1, 1}));

  OutputStream<IntGroup> none(engine.how(), h, std::nullopt, std::int64_t{-1});
  EXPECT_FALSE(none.next().has_value());
  EXPECT_EQ(none.emitted(), 0u);
}

TEST(Enumerate, EmptyAndDegenerate) {
  auto no_final = std::get<CostTransducer<IntGroup>>(parse_transducer(
      R"({"states":["q"],"init":{"q":0},"transitions":[{"from":"q","on":"a","to":"q"}]})"));
  Engine e1(no_final);
  EXPECT_TRUE(e1.how().is_empty(e1.preprocess(symbols("a a"))));
  OutputStream<IntGroup> s(e1.how(), e1.preprocess(symbols("a")));
  EXPECT_FALSE(s.next().has_value());

  auto eps = std::get<CostTransducer<IntGroup>>(
      parse_transducer(R"({"states":["q"],"init":{"q":2},"final":{"q":-7},"transitions":[]})"));
  Engine e2(eps);
  auto out = drain_outputs(e2, e2.preprocess({}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].enc.empty());
  EXPECT_EQ(out[0].cost, -5);

  auto t = load_as<IntGroup>("t1.json");
  Engine e3(t);
  EXPECT_TRUE(drain_outputs(e3, e3.preprocess(symbols("a z a"))).empty());
}

TEST(Enumerate, ExampleHeapOfMarks) {
  HeapOfWords<IntGroup, Mark> how;
  auto letter = [](std::size_t p) { return Mark{1, p}; };
  auto a = how.add(how.empty(), letter(1), 0);
  auto ad = how.increase_by(how.extend_by(a, letter(4)), 3);
  auto ab = how.increase_by(how.extend_by(a, letter(2)), 1);
  auto ae = how.increase_by(how.extend_by(a, letter(5)), 4);
  auto c = how.increase_by(how.extend_by(how.meld(ab, ae), letter(3)), 2);
  auto h = how.meld(how.meld(ad, c), how.add(how.empty(), std::nullopt, 5));
  OutputStream<IntGroup> s(how, h);
  std::vector<std::int64_t> got;
  while (auto o = s.next()) got.push_back(o->cost);
  EXPECT_EQ(got, (std::vector<std::int64_t>{3, 3, 5, 6}));
}

TEST(Enumerate, LevelInvariant) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto t = random_symbol_machine(rng, {}, true);
    auto w = random_symbol_word(rng, 1 + rng() % 6, 3);
    Engine engine(t);
    auto lv = engine.initial();
    for (std::size_t k = 0; k < w.size(); ++k) {
      lv = engine.advance(lv, w[k]);
      std::vector<Event> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k + 1));
      for (StateId q = 0; q < t.num_states(); ++q) {
        std::vector<std::pair<Encoding, std::int64_t>> got;
        for (const auto& e : engine.how().contents(lv.heaps[q])) got.emplace_back(e.word, e.priority);
        ASSERT_EQ(sorted(got), partial_runs(t, prefix, q));
      }
    }
  }
}

TEST(Enumerate, MatchesBruteForceOnRandomMachines) {
  std::mt19937_64 rng(1234);
  std::size_t total = 0;
  for (int i = 0; i < 300; ++i) {
    auto t = random_symbol_machine(rng, {}, true);
    auto w = random_symbol_word(rng, rng() % 9, 3);
    Engine engine(t);
    auto fast = drain_outputs(engine, engine.preprocess(w));
    auto slow = enumerate_bruteforce(t, w);
    ASSERT_TRUE(costs_non_decreasing(t.group, fast));
    ASSERT_FALSE(has_duplicates(fast));
    ASSERT_EQ(as_multiset(fast), as_multiset(slow));
    total += slow.size();
  }
  EXPECT_GT(total, 300u);
}

TEST(Enumerate, VectorCosts) {
  auto t = load_as<LexGroup>("lex.json");
  ASSERT_TRUE(check_unambiguous(t).unambiguous);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto w = random_symbol_word(rng, rng() % 7, 2);
    Enumerator<LexGroup> engine(t);
    auto fast = drain_outputs(engine, engine.preprocess(w));
    auto slow = enumerate_bruteforce(t, w);
    ASSERT_TRUE(costs_non_decreasing(t.group, fast));
    auto key = [](const std::vector<RankedOutput<LexGroup>>& v) {
      std::vector<std::pair<Encoding, std::vector<std::int64_t>>> out;
      for (const auto& o : v) out.emplace_back(o.enc, o.cost);
      return sorted(out);
    };
    ASSERT_EQ(key(fast), key(slow));
  }
}

TEST(Stream, Cea0OverExampleStream) {
  auto t = load_as<IntGroup>("cea0.json");
  StreamSession<IntGroup> session(t);
  for (const Event& e : cea0_events()) session.push(e);
  EXPECT_EQ(session.position(), 9u);
  auto out = drain_outputs(session.engine(), session.outputs());
  EXPECT_TRUE(costs_non_decreasing(t.group, out));
  auto classes = cost_classes(out);
  auto has = [&](std::int64_t cost, const Encoding& e) {
    return std::find(classes[cost].begin(), classes[cost].end(), e) != classes[cost].end();
  };
  EXPECT_TRUE(has(5, marks({5, 6, 8, 9})));
  EXPECT_TRUE(has(6, marks({4, 6, 8, 9})));
  EXPECT_TRUE(has(9, marks({1, 6, 8, 9})));
  EXPECT_TRUE(has(5, marks({5, 6, 9})));
  EXPECT_EQ(as_multiset(out), as_multiset(enumerate_bruteforce(t, cea0_events())));
}

TEST(Stream, ZeroEventsEqualsEmptyWord) {
  auto t = std::get<CostTransducer<IntGroup>>(
      parse_transducer(R"({"states":["q"],"init":{"q":1},"final":{"q":1},"transitions":[]})"));
  StreamSession<IntGroup> session(t);
  Engine batch(t);
  EXPECT_EQ(as_multiset(drain_outputs(session.engine(), session.outputs())),
            as_multiset(drain_outputs(batch, batch.preprocess({}))));
}

TEST(Stream, CoherentWithBatchAndPersistent) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    auto t = random_predicate_machine(rng, 4, 8);
    auto w = random_events(rng, 20);
    StreamSession<IntGroup> session(t);
    std::vector<StreamSession<IntGroup>::Handle> handles;
    std::vector<std::vector<RankedOutput<IntGroup>>> first;
    for (std::size_t n = 1; n <= w.size(); ++n) {
      session.push(w[n - 1]);
      auto h = session.outputs();
      handles.push_back(h);
      OutputStream<IntGroup> s(session.engine().how(), h, 500);
      std::vector<RankedOutput<IntGroup>> got;
      while (auto o = s.next()) got.push_back(*o);
      first.push_back(got);

      Engine batch(t);
      std::vector<Event> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
      OutputStream<IntGroup> b(batch.how(), batch.preprocess(prefix), 500);
      std::vector<RankedOutput<IntGroup>> want;
      while (auto o = b.next()) want.push_back(*o);
      ASSERT_EQ(got, want);
    }
    for (std::size_t n = 0; n < handles.size(); ++n) {
      OutputStream<IntGroup> s(session.engine().how(), handles[n], 500);
      std::vector<RankedOutput<IntGroup>> again;
      while (auto o = s.next()) again.push_back(*o);
      ASSERT_EQ(again, first[n]);
    }
  }
}

TEST(Enumerate, OverflowPropagates) {
  auto t = std::get<CostTransducer<IntGroup>>(parse_transducer(
      R"({"states":["q"],"init":{"q":0},"final":{"q":0},
          "transitions":[{"from":"q","on":"a","to":"q","cost":9223372036854775807}]})"));
  Engine engine(t);
  EXPECT_THROW(engine.preprocess(symbols("a a")), GroupError);
}
