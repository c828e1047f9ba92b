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

#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "text_util.hpp"
#include "wcet/automaton.hpp"
#include "wcet/errors.hpp"

namespace wcet {

namespace {

struct SymbolSpec {
  std::optional<Line> line;  // nullopt for the '*' wildcard
  Classification cls;
};

SymbolSpec parse_symbol(const std::string& tok, std::size_t line_no) {
  auto colon = tok.rfind(':');
  if (colon == std::string::npos || colon + 2 != tok.size()) {
    throw ParseError(line_no, "expected <line>:<H|M>, got '" + tok + "'");
  }
  char c = tok[colon + 1];
  if (c != 'H' && c != 'M') throw ParseError(line_no, "classification must be H or M in '" + tok + "'");
  SymbolSpec spec{std::nullopt, c == 'H' ? Classification::Hit : Classification::Miss};
  std::string line = tok.substr(0, colon);
  if (line != "*") spec.line = detail::parse_int(line, line_no);
  return spec;
}

}  // namespace

ClassifierAutomaton parse_automaton(std::istream& in, const Alphabet& context) {
  std::set<Line> explicit_lines;
  bool wildcard = false;
  std::vector<std::pair<std::string, bool>> states;
  std::map<std::string, StateId> state_ids;
  std::optional<std::string> initial;
  std::size_t initial_line = 0;

  struct Trans {
    std::string from;
    SymbolSpec sym;
    std::string to;
    std::size_t line_no;
  };
  std::vector<Trans> transitions;

  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::tokenize(text);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    if (kw == "alphabet") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        SymbolSpec s = parse_symbol(tokens[i], line_no);
        if (s.line) {
          explicit_lines.insert(*s.line);
        } else {
          wildcard = true;
        }
      }
    } else if (kw == "state") {
      if (tokens.size() < 2 || tokens.size() > 3 || (tokens.size() == 3 && tokens[2] != "accepting")) {
        throw ParseError(line_no, "expected 'state <name> [accepting]'");
      }
      if (state_ids.contains(tokens[1])) throw ParseError(line_no, "duplicate state '" + tokens[1] + "'");
      state_ids.emplace(tokens[1], static_cast<StateId>(states.size()));
      states.emplace_back(tokens[1], tokens.size() == 3);
    } else if (kw == "initial") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'initial <name>'");
      if (initial) throw ParseError(line_no, "duplicate 'initial' directive");
      initial = tokens[1];
      initial_line = line_no;
    } else if (kw == "trans") {
      if (tokens.size() != 4) throw ParseError(line_no, "expected 'trans <from> <line:cls> <to>'");
      transitions.push_back({tokens[1], parse_symbol(tokens[2], line_no), tokens[3], line_no});
    } else {
      throw ParseError(line_no, "unknown directive '" + kw + "'");
    }
  }

  if (states.empty()) throw ParseError(line_no, "automaton declares no states");
  if (!initial) throw ParseError(line_no, "automaton has no 'initial' directive");
  auto state_of = [&](const std::string& name, std::size_t no) {
    auto it = state_ids.find(name);
    if (it == state_ids.end()) throw ParseError(no, "unknown state '" + name + "'");
    return it->second;
  };

  std::vector<Line> lines(explicit_lines.begin(), explicit_lines.end());
  if (wildcard) lines.insert(lines.end(), context.lines().begin(), context.lines().end());
  Alphabet sigma(std::move(lines));

  ClassifierAutomaton a(sigma, states.size());
  const auto sink = a.add_state(false);
  for (std::size_t c = 0; c < sigma.size(); ++c) {
    for (StateId s = 0; s <= sink; ++s) a.set_transition(s, c, sink);
  }
  for (StateId s = 0; s < states.size(); ++s) a.set_accepting(s, states[s].second);
  a.set_initial(state_of(*initial, initial_line));

  // Explicit-line transitions first; wildcards only fill the gaps they leave.
  std::set<std::pair<StateId, std::size_t>> fixed;
  for (const Trans& t : transitions) {
    if (!t.sym.line) continue;
    if (!sigma.contains(*t.sym.line)) {
      throw ParseError(t.line_no, "line " + std::to_string(*t.sym.line) + " is not declared in the alphabet");
    }
    StateId from = state_of(t.from, t.line_no);
    std::size_t c = sigma.index_of({*t.sym.line, t.sym.cls});
    if (!fixed.emplace(from, c).second) throw ParseError(t.line_no, "nondeterministic transition from '" + t.from + "'");
    a.set_transition(from, c, state_of(t.to, t.line_no));
  }
  std::set<std::pair<StateId, Classification>> wild_seen;
  for (const Trans& t : transitions) {
    if (t.sym.line) continue;
    if (!wildcard) throw ParseError(t.line_no, "wildcard transition without a '*' alphabet entry");
    StateId from = state_of(t.from, t.line_no);
    if (!wild_seen.emplace(from, t.sym.cls).second) {
      throw ParseError(t.line_no, "nondeterministic wildcard transition from '" + t.from + "'");
    }
    StateId to = state_of(t.to, t.line_no);
    for (Line l : sigma.lines()) {
      std::size_t c = sigma.index_of({l, t.sym.cls});
      if (!fixed.contains({from, c})) a.set_transition(from, c, to);
    }
  }
  return a;
}

ClassifierAutomaton parse_automaton_string(std::string_view text, const Alphabet& context) {
  std::istringstream in{std::string(text)};
  return parse_automaton(in, context);
}

ClassifierAutomaton load_automaton(const std::string& path, const Alphabet& context) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open automaton file '" + path + "'");
  return parse_automaton(in, context);
}

}  // namespace wcet
