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

// Classification patterns: Thompson NFA over {H, M}, subset construction,
// prefix closure, then lifted to every line of the alphabet.

#include <array>
#include <map>
#include <set>

#include "wcet/automaton.hpp"
#include "wcet/errors.hpp"

namespace wcet {

namespace {

constexpr int kEpsilon = -1;

struct Nfa {
  struct Arc {
    int label;  // kEpsilon or a Classification value
    std::size_t to;
  };
  std::vector<std::vector<Arc>> arcs;

  std::size_t add() {
    arcs.emplace_back();
    return arcs.size() - 1;
  }
  void link(std::size_t from, int label, std::size_t to) { arcs[from].push_back({label, to}); }
};

struct Fragment {
  std::size_t start;
  std::size_t accept;
};

class PatternParser {
 public:
  PatternParser(std::string_view text, Nfa& nfa) : text_(text), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PatternParseError("pattern \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Fragment epsilon() {
    std::size_t s = nfa_.add();
    std::size_t t = nfa_.add();
    nfa_.link(s, kEpsilon, t);
    return {s, t};
  }

  // sequence := <empty> | starred ('.' starred)*
  Fragment sequence() {
    char c = peek();
    if (c == '\0' || c == ')') return epsilon();
    Fragment f = starred();
    while (peek() == '.') {
      ++pos_;
      Fragment g = starred();
      nfa_.link(f.accept, kEpsilon, g.start);
      f.accept = g.accept;
    }
    return f;
  }

  Fragment starred() {
    Fragment f = atom();
    while (peek() == '*') {
      ++pos_;
      std::size_t s = nfa_.add();
      std::size_t t = nfa_.add();
      nfa_.link(s, kEpsilon, f.start);
      nfa_.link(s, kEpsilon, t);
      nfa_.link(f.accept, kEpsilon, f.start);
      nfa_.link(f.accept, kEpsilon, t);
      f = {s, t};
    }
    return f;
  }

  Fragment atom() {
    char c = peek();
    if (c == 'H' || c == 'M') {
      ++pos_;
      std::size_t s = nfa_.add();
      std::size_t t = nfa_.add();
      nfa_.link(s, static_cast<int>(c == 'H' ? Classification::Hit : Classification::Miss), t);
      return {s, t};
    }
    if (c == '(') {
      ++pos_;
      Fragment f = sequence();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (c == '\0') fail("unexpected end of pattern");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

std::set<std::size_t> closure(const Nfa& nfa, std::set<std::size_t> states) {
  std::vector<std::size_t> work(states.begin(), states.end());
  while (!work.empty()) {
    std::size_t s = work.back();
    work.pop_back();
    for (const auto& arc : nfa.arcs[s]) {
      if (arc.label == kEpsilon && states.insert(arc.to).second) work.push_back(arc.to);
    }
  }
  return states;
}

}  // namespace

ClassifierAutomaton from_pattern(std::string_view pattern, const Alphabet& alphabet) {
  Nfa nfa;
  Fragment f = PatternParser(pattern, nfa).parse();

  // Subset construction over the two classification letters, indexed like
  // the Alphabet's (line, cls) pairs.
  std::map<std::set<std::size_t>, std::size_t> ids;
  std::vector<std::set<std::size_t>> subsets;
  std::vector<std::array<std::size_t, 2>> delta;
  auto intern = [&](std::set<std::size_t> s) {
    auto [it, fresh] = ids.try_emplace(s, subsets.size());
    if (fresh) subsets.push_back(std::move(s));
    return it->second;
  };
  intern(closure(nfa, {f.start}));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::array<std::size_t, 2> row{};
    for (int letter = 0; letter < 2; ++letter) {
      std::set<std::size_t> moved;
      for (std::size_t s : subsets[i]) {
        for (const auto& arc : nfa.arcs[s]) {
          if (arc.label == letter) moved.insert(arc.to);
        }
      }
      row[letter] = intern(closure(nfa, std::move(moved)));
    }
    delta.push_back(row);
  }

  // Prefix closure: a state is kept iff some accepting subset is reachable.
  const std::size_t n = subsets.size();
  std::vector<bool> live(n, false);
  for (std::size_t i = 0; i < n; ++i) live[i] = subsets[i].contains(f.accept);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i] && (live[delta[i][0]] || live[delta[i][1]])) live[i] = changed = true;
    }
  }

  ClassifierAutomaton out(alphabet, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = static_cast<StateId>(i);
    out.set_accepting(s, live[i]);
    for (std::size_t c = 0; c < alphabet.size(); ++c) {
      out.set_transition(s, c, static_cast<StateId>(delta[i][c % 2]));
    }
  }
  return minimize(out);
}

}  // namespace wcet
