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

#ifndef WCET_AUTOMATON_HPP_
#define WCET_AUTOMATON_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcet/types.hpp"

namespace wcet {

struct AccessSymbol {
  Line line = 0;
  Classification cls = Classification::Miss;

  auto operator<=>(const AccessSymbol&) const = default;
};

std::vector<AccessSymbol> to_symbols(const ClassifiedTrace& trace);

/// (line, Hit|Miss) pairs for a fixed, sorted set of lines. Symbol i is
/// line lines()[i / 2] with classification Miss for even i, Hit for odd i.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Line> lines);

  const std::vector<Line>& lines() const { return lines_; }
  std::size_t size() const { return 2 * lines_.size(); }
  bool empty() const { return lines_.empty(); }
  bool contains(Line line) const;

  std::optional<std::size_t> index(AccessSymbol s) const;
  /// Throws AlphabetMismatch for a symbol outside the alphabet.
  std::size_t index_of(AccessSymbol s) const;
  AccessSymbol symbol(std::size_t index) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Line> lines_;
};

using StateId = std::uint32_t;

/// Complete DFA over an Alphabet.
///
/// Two readings of the same automaton are offered. accepts() is ordinary
/// DFA membership. allows() is the step-by-step reading used for abstract
/// cache models: a trace is allowed when every prefix, the empty one
/// included, ends in an accepting state. Refinement models are prefix-closed,
/// where the two coincide.
class ClassifierAutomaton {
 public:
  ClassifierAutomaton() = default;
  /// All transitions start out pointing at state 0; nothing is accepting.
  ClassifierAutomaton(Alphabet alphabet, std::size_t num_states, StateId initial = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return accepting_.size(); }
  StateId initial() const { return initial_; }
  bool accepting(StateId s) const { return accepting_[s]; }
  StateId next(StateId s, std::size_t symbol) const { return delta_[s * alphabet_.size() + symbol]; }

  void set_initial(StateId s) { initial_ = s; }
  void set_accepting(StateId s, bool value = true) { accepting_[s] = value; }
  void set_transition(StateId from, std::size_t symbol, StateId to) {
    delta_[from * alphabet_.size() + symbol] = to;
  }
  StateId add_state(bool accepting = false);

  bool accepts(std::span<const AccessSymbol> word) const;
  bool allows(std::span<const AccessSymbol> word) const;
  bool accepts(const ClassifiedTrace& trace) const { return accepts(to_symbols(trace)); }
  bool allows(const ClassifiedTrace& trace) const { return allows(to_symbols(trace)); }

 private:
  Alphabet alphabet_;
  StateId initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<StateId> delta_;
};

/// Universal model: a single accepting state looping on every symbol.
ClassifierAutomaton hit_or_miss(const Alphabet& alphabet);

ClassifierAutomaton empty_language(const Alphabet& alphabet);

/// Classification pattern over H and M with '.' concatenation, '*' star and
/// parentheses, e.g. "(M.H.M.M)*". The result allows exactly the traces
/// whose classification projection is a prefix of a word of the pattern;
/// lines are unconstrained. Throws PatternParseError.
ClassifierAutomaton from_pattern(std::string_view pattern, const Alphabet& alphabet);

ClassifierAutomaton complement(const ClassifierAutomaton& a);
/// Throws AlphabetMismatch unless both alphabets are equal.
ClassifierAutomaton intersect(const ClassifierAutomaton& a, const ClassifierAutomaton& b);
/// L(a) \ L(o), minimized. Throws AlphabetMismatch.
ClassifierAutomaton subtract(const ClassifierAutomaton& a, const ClassifierAutomaton& o);

/// Language-preserving reduction to the minimal complete DFA. States are
/// renumbered breadth-first from the initial state in symbol order.
ClassifierAutomaton minimize(const ClassifierAutomaton& a);

bool is_empty(const ClassifierAutomaton& a);
bool equivalent(const ClassifierAutomaton& a, const ClassifierAutomaton& b);

/// Sigma* . core . Sigma* (pattern-matching automaton).
ClassifierAutomaton infix_language(std::span<const AccessSymbol> core, const Alphabet& alphabet);
/// prefix . Sigma*
ClassifierAutomaton prefix_language(std::span<const AccessSymbol> prefix, const Alphabet& alphabet);

/// Reads the abstract-cache automaton file format. Lines named with the
/// '*' wildcard range over `context` together with the explicitly listed
/// lines. Missing transitions go to a rejecting sink.
ClassifierAutomaton parse_automaton(std::istream& in, const Alphabet& context);
ClassifierAutomaton parse_automaton_string(std::string_view text, const Alphabet& context);
ClassifierAutomaton load_automaton(const std::string& path, const Alphabet& context);
std::string serialize_automaton(const ClassifierAutomaton& a);

}  // namespace wcet

#endif  // WCET_AUTOMATON_HPP_
