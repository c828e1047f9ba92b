/*
 * Copyright (c) 2026, The wcetref authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wcet/errors.hpp"
#include "wcet/explorer.hpp"
#include "wcet/timing.hpp"

using namespace wcet;

namespace {

constexpr auto H = Classification::Hit;
constexpr auto M = Classification::Miss;

// Two runs 1.2.3.k and 1.4.5.k; 2 and 3 take two cycles, the others one.
Program two_prefix_program() {
  return parse_program_string(R"(
program two_prefixes
entry s0
end done
instr pc=1 dur=1
instr pc=2 dur=2
instr pc=3 dur=2
instr pc=4 dur=1
instr pc=5 dur=1
instr pc=6 dur=1
edge s0 s1 pc=1
edge s1 a2 pc=2
edge a2 join pc=3
edge s1 b2 pc=4
edge b2 join pc=5
edge join done pc=6
)");
}

CacheConfig config(std::size_t capacity, Cycles hit, Cycles miss, Line line_size = 1) {
  CacheConfig c;
  c.capacity = capacity;
  c.hit_time = hit;
  c.miss_time = miss;
  c.line_size = line_size;
  return c;
}

CacheConfig to_config(const oracle::Timing& tm) { return config(tm.capacity, tm.hit, tm.miss, tm.line_size); }

bool is_run(const Program& p, const ClassifiedTrace& t) {
  std::vector<Pc> pcs;
  for (const auto& a : t) pcs.push_back(a.pc);
  for (const auto& r : language_sequences(p, 1000)) {
    if (r == pcs) return true;
  }
  return false;
}

// Prefix-closed trie automaton over exactly the given classified traces.
ClassifierAutomaton trie_automaton(const std::set<std::vector<AccessSymbol>>& words, const Alphabet& sigma) {
  ClassifierAutomaton a(sigma, 1);
  const StateId sink = 0;
  StateId root = a.add_state(true);
  a.set_initial(root);
  for (std::size_t c = 0; c < sigma.size(); ++c) {
    a.set_transition(sink, c, sink);
    a.set_transition(root, c, sink);
  }
  for (const auto& w : words) {
    StateId s = root;
    for (auto sym : w) {
      std::size_t c = sigma.index_of(sym);
      if (a.next(s, c) == sink) {
        StateId n = a.add_state(true);
        for (std::size_t d = 0; d < sigma.size(); ++d) a.set_transition(n, d, sink);
        a.set_transition(s, c, n);
      }
      s = a.next(s, c);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("explicit: the 1.2.3 prefix dominates 1.4.5 by two cycles") {
  Program p = two_prefix_program();
  CacheConfig c = config(8, 1, 10);
  auto r = explore_explicit(p, c);
  REQUIRE(r.witness.size() == 4);
  CHECK(r.witness[1].pc == 2);
  CHECK(r.witness[2].pc == 3);
  CHECK(r.wcet == 35 + 11);
  ClassifiedTrace other = simulate(c, {}, std::vector<Pc>{1, 4, 5, 6});
  CHECK(r.wcet - trace_time(other, p.durations(), c) == 2);
  CHECK(r.mode == ExplorationMode::Explicit);
}

TEST_CASE("explicit: single run equals its trace time") {
  Program p = parse_program_string("entry a\nend e\ninstr pc=1 dur=3\ninstr pc=2 dur=1\n"
                                   "edge a b pc=1\nedge b c pc=2\nedge c e pc=1\n");
  CacheConfig c = config(1, 2, 20);
  auto r = explore_explicit(p, c);
  auto t = simulate(c, {}, std::vector<Pc>{1, 2, 1});
  CHECK(r.witness == t);
  CHECK(r.wcet == trace_time(t, p.durations(), c));
}

TEST_CASE("explicit witness of 1.2.3.1 with capacity 3") {
  Program p = parse_program_string("entry a\nend e\ninstr pc=1\ninstr pc=2\ninstr pc=3\n"
                                   "edge a b pc=1\nedge b c pc=2\nedge c d pc=3\nedge d e pc=1\n");
  auto r = explore_explicit(p, config(3, 1, 10));
  CHECK(witness(r) == ClassifiedTrace{{1, 1, M}, {2, 2, M}, {3, 3, M}, {1, 1, H}});
}

TEST_CASE("explicit: running example WCET does not depend on N") {
  CacheConfig c = config(2, 2, 20);
  std::set<Cycles> wcets;
  for (int n = 1; n <= 10; ++n) {
    auto r = explore_explicit(running_example({5, n, {}}), c);
    wcets.insert(r.wcet);
    CHECK(r.wcet == trace_time(r.witness, running_example({5, n, {}}).durations(), c));
  }
  CHECK(wcets == std::set<Cycles>{5 * (21 + 3 + 21 + 21)});
}

TEST_CASE("explicit: ties go to the lexicographically least witness") {
  Program p = parse_program_string("entry a\nend e\ninstr pc=4\ninstr pc=3\ninstr pc=5\n"
                                   "edge a b pc=4\nedge a c pc=3\nedge b e pc=5\nedge c e pc=5\n");
  auto r = explore_explicit(p, config(2, 1, 10));
  CHECK(r.witness.front().pc == 3);
}

TEST_CASE("explicit: given initial state") {
  Program p = parse_program_string("entry a\nend e\ninstr pc=1\ninstr pc=2\nedge a b pc=1\nedge b e pc=2\n");
  CacheConfig c = config(2, 1, 10);
  auto r = explore_explicit(p, c, CacheState{{1}}, p.durations());
  CHECK(classification_string(r.witness) == "HM");
  CHECK_THROWS_AS(explore_explicit(p, c, CacheState{{1, 1}}, p.durations()), ValidationError);
  CHECK_THROWS_AS(explore_explicit(p, c, CacheState{{1, 2, 3}}, p.durations()), ValidationError);
}

TEST_CASE("explicit: cyclic program is rejected") {
  Program p = parse_program_string("entry a\nend e\ninstr pc=1\nedge a b pc=1\nedge b a pc=1\nedge b e pc=1\n");
  CHECK_THROWS_AS(explore_explicit(p, config(2, 1, 10)), BoundExceeded);
}

TEST_CASE("abstract with hit_or_miss is the all-miss longest run") {
  std::mt19937 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto rp = oracle::random_program(rng);
    CacheConfig c = to_config(rp.timing);
    auto r = explore_abstract(rp.program, hit_or_miss(program_alphabet(rp.program, c)), c);
    Cycles expected = 0;
    for (const auto& run : language_sequences(rp.program, 1000)) {
      Cycles t = 0;
      for (Pc pc : run) t += c.miss_time + rp.program.durations().at(pc);
      expected = std::max(expected, t);
    }
    CHECK(r.wcet == expected);
    for (const auto& a : r.witness) CHECK(a.cls == M);
    CHECK(r.mode == ExplorationMode::Abstract);
  }
}

TEST_CASE("abstract with the (M.H.M.M)* model matches explicit on the running example") {
  CacheConfig c = config(2, 2, 20);
  for (int n = 1; n <= 10; ++n) {
    Program p = running_example({5, n, {}});
    auto exp = explore_explicit(p, c);
    auto abs = explore_abstract(p, from_pattern("(M.H.M.M)*", program_alphabet(p, c)), c);
    CHECK(abs.wcet == exp.wcet);
    CHECK(classification_string(exp.witness) == "MHMMMHMMMHMMMHMMMHMM");
    if (n >= 2) CHECK(abs.states_explored < exp.states_explored);
  }
}

TEST_CASE("abstract model errors") {
  Program p = running_example({2, 1, {}});
  CacheConfig c = config(2, 2, 20);
  Alphabet sigma = program_alphabet(p, c);
  CHECK_THROWS_AS(explore_abstract(p, empty_language(sigma), c), AbstractModelEmpty);
  CHECK_THROWS_AS(explore_abstract(p, from_pattern("", sigma), c), AbstractModelEmpty);
  CHECK_THROWS_AS(explore_abstract(p, from_pattern("M.M.M", sigma), c), AbstractModelEmpty);
  CHECK(explore_abstract(p, from_pattern("H*", sigma), c).wcet == 8 * (2 + 1));
  CHECK_THROWS_AS(explore_abstract(p, hit_or_miss(Alphabet({1, 2})), c), AlphabetMismatch);
}

TEST_CASE("random programs: explicit against brute force, abstract soundness and exactness") {
  std::mt19937 rng(43);
  for (int i = 0; i < 60; ++i) {
    auto rp = oracle::random_program(rng);
    CAPTURE(serialize_program(rp.program));
    CacheConfig c = to_config(rp.timing);
    Alphabet sigma = program_alphabet(rp.program, c);

    auto exp = explore_explicit(rp.program, c);
    CHECK(exp.wcet == oracle::wcet_from(rp.program, rp.timing, {}));
    CHECK(exp.wcet == trace_time(exp.witness, rp.program.durations(), c));
    CHECK(is_run(rp.program, exp.witness));

    auto loose = explore_abstract(rp.program, hit_or_miss(sigma), c);
    CHECK(loose.wcet >= exp.wcet);

    std::set<std::vector<AccessSymbol>> realizable;
    for (const auto& run : language_sequences(rp.program, 1000)) {
      realizable.insert(to_symbols(simulate(c, {}, run)));
    }
    auto exact = explore_abstract(rp.program, trie_automaton(realizable, sigma), c);
    CHECK(exact.wcet == exp.wcet);
    CHECK(exact.wcet == trace_time(exact.witness, rp.program.durations(), c));
    CHECK(is_run(rp.program, exact.witness));
  }
}
