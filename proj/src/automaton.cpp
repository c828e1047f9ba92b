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

#include "wcet/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "wcet/errors.hpp"

namespace wcet {

std::vector<AccessSymbol> to_symbols(const ClassifiedTrace& trace) {
  std::vector<AccessSymbol> out;
  out.reserve(trace.size());
  for (const ClassifiedAccess& a : trace) out.push_back({a.line, a.cls});
  return out;
}

Alphabet::Alphabet(std::vector<Line> lines) : lines_(std::move(lines)) {
  std::sort(lines_.begin(), lines_.end());
  lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
}

bool Alphabet::contains(Line line) const { return std::binary_search(lines_.begin(), lines_.end(), line); }

std::optional<std::size_t> Alphabet::index(AccessSymbol s) const {
  auto it = std::lower_bound(lines_.begin(), lines_.end(), s.line);
  if (it == lines_.end() || *it != s.line) return std::nullopt;
  return 2 * static_cast<std::size_t>(it - lines_.begin()) + static_cast<std::size_t>(s.cls);
}

std::size_t Alphabet::index_of(AccessSymbol s) const {
  if (auto i = index(s)) return *i;
  throw AlphabetMismatch("line " + std::to_string(s.line) + " is not in the automaton alphabet");
}

AccessSymbol Alphabet::symbol(std::size_t index) const {
  return {lines_.at(index / 2), static_cast<Classification>(index % 2)};
}

ClassifierAutomaton::ClassifierAutomaton(Alphabet alphabet, std::size_t num_states, StateId initial)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(num_states, false),
      delta_(num_states * alphabet_.size(), 0) {}

StateId ClassifierAutomaton::add_state(bool accepting) {
  auto id = static_cast<StateId>(accepting_.size());
  accepting_.push_back(accepting);
  delta_.resize(delta_.size() + alphabet_.size(), 0);
  return id;
}

bool ClassifierAutomaton::accepts(std::span<const AccessSymbol> word) const {
  StateId s = initial_;
  for (AccessSymbol sym : word) s = next(s, alphabet_.index_of(sym));
  return accepting(s);
}

bool ClassifierAutomaton::allows(std::span<const AccessSymbol> word) const {
  StateId s = initial_;
  if (!accepting(s)) return false;
  for (AccessSymbol sym : word) {
    s = next(s, alphabet_.index_of(sym));
    if (!accepting(s)) return false;
  }
  return true;
}

ClassifierAutomaton hit_or_miss(const Alphabet& alphabet) {
  ClassifierAutomaton a(alphabet, 1);
  a.set_accepting(0);
  return a;
}

ClassifierAutomaton empty_language(const Alphabet& alphabet) { return ClassifierAutomaton(alphabet, 1); }

ClassifierAutomaton complement(const ClassifierAutomaton& a) {
  ClassifierAutomaton out = a;
  for (StateId s = 0; s < out.num_states(); ++s) out.set_accepting(s, !a.accepting(s));
  return out;
}

namespace {

template <class AcceptFn>
ClassifierAutomaton product(const ClassifierAutomaton& a, const ClassifierAutomaton& b, AcceptFn accept) {
  if (!(a.alphabet() == b.alphabet())) {
    throw AlphabetMismatch("automata are defined over different alphabets");
  }
  const Alphabet& sigma = a.alphabet();
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId x, StateId y) {
    auto [it, fresh] = ids.try_emplace({x, y}, static_cast<StateId>(pairs.size()));
    if (fresh) pairs.emplace_back(x, y);
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<std::vector<StateId>> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    std::vector<StateId> row(sigma.size());
    for (std::size_t c = 0; c < sigma.size(); ++c) row[c] = intern(a.next(x, c), b.next(y, c));
    rows.push_back(std::move(row));
  }
  ClassifierAutomaton out(sigma, pairs.size());
  for (StateId s = 0; s < pairs.size(); ++s) {
    out.set_accepting(s, accept(a.accepting(pairs[s].first), b.accepting(pairs[s].second)));
    for (std::size_t c = 0; c < sigma.size(); ++c) out.set_transition(s, c, rows[s][c]);
  }
  return out;
}

std::vector<StateId> reachable_bfs(const ClassifierAutomaton& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> order{a.initial()};
  seen[a.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < a.alphabet().size(); ++c) {
      StateId t = a.next(order[i], c);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

}  // namespace

ClassifierAutomaton intersect(const ClassifierAutomaton& a, const ClassifierAutomaton& b) {
  return product(a, b, [](bool x, bool y) { return x && y; });
}

ClassifierAutomaton subtract(const ClassifierAutomaton& a, const ClassifierAutomaton& o) {
  return minimize(product(a, o, [](bool x, bool y) { return x && !y; }));
}

ClassifierAutomaton minimize(const ClassifierAutomaton& a) {
  const std::size_t k = a.alphabet().size();
  const std::vector<StateId> live = reachable_bfs(a);

  // Moore refinement over the reachable part.
  std::vector<std::size_t> cls(a.num_states(), 0);
  for (StateId s : live) cls[s] = a.accepting(s) ? 1 : 0;
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next_cls(a.num_states(), 0);
    for (StateId s : live) {
      std::vector<std::size_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (std::size_t c = 0; c < k; ++c) sig.push_back(cls[a.next(s, c)]);
      auto [it, fresh] = sig_ids.try_emplace(std::move(sig), sig_ids.size());
      next_cls[s] = it->second;
    }
    bool stable = sig_ids.size() == num_classes;
    num_classes = sig_ids.size();
    cls = std::move(next_cls);
    if (stable) break;
  }

  // Renumber classes in BFS order from the initial state.
  std::vector<std::optional<StateId>> id_of(num_classes);
  std::vector<StateId> rep;
  for (StateId s : live) {
    if (!id_of[cls[s]]) {
      id_of[cls[s]] = static_cast<StateId>(rep.size());
      rep.push_back(s);
    }
  }
  ClassifierAutomaton out(a.alphabet(), rep.size(), *id_of[cls[a.initial()]]);
  for (StateId n = 0; n < rep.size(); ++n) {
    out.set_accepting(n, a.accepting(rep[n]));
    for (std::size_t c = 0; c < k; ++c) out.set_transition(n, c, *id_of[cls[a.next(rep[n], c)]]);
  }
  return out;
}

bool is_empty(const ClassifierAutomaton& a) {
  for (StateId s : reachable_bfs(a)) {
    if (a.accepting(s)) return false;
  }
  return true;
}

bool equivalent(const ClassifierAutomaton& a, const ClassifierAutomaton& b) {
  return is_empty(product(a, b, [](bool x, bool y) { return x != y; }));
}

ClassifierAutomaton infix_language(std::span<const AccessSymbol> core, const Alphabet& alphabet) {
  const std::size_t m = core.size();
  const std::size_t k = alphabet.size();
  std::vector<std::size_t> pat;
  pat.reserve(m);
  for (AccessSymbol s : core) pat.push_back(alphabet.index_of(s));

  // State j: the longest suffix of the input that is a prefix of core has
  // length j. State m is absorbing.
  ClassifierAutomaton out(alphabet, m + 1);
  out.set_accepting(static_cast<StateId>(m));
  for (std::size_t c = 0; c < k; ++c) out.set_transition(static_cast<StateId>(m), c, static_cast<StateId>(m));
  if (m == 0) return out;

  out.set_transition(0, pat[0], 1);
  StateId restart = 0;
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t c = 0; c < k; ++c) out.set_transition(static_cast<StateId>(j), c, out.next(restart, c));
    out.set_transition(static_cast<StateId>(j), pat[j], static_cast<StateId>(j + 1));
    restart = out.next(restart, pat[j]);
  }
  return out;
}

ClassifierAutomaton prefix_language(std::span<const AccessSymbol> prefix, const Alphabet& alphabet) {
  const std::size_t m = prefix.size();
  const auto dead = static_cast<StateId>(m + 1);
  ClassifierAutomaton out(alphabet, m + 2);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < alphabet.size(); ++c) out.set_transition(static_cast<StateId>(j), c, dead);
    out.set_transition(static_cast<StateId>(j), alphabet.index_of(prefix[j]), static_cast<StateId>(j + 1));
  }
  for (std::size_t c = 0; c < alphabet.size(); ++c) {
    out.set_transition(static_cast<StateId>(m), c, static_cast<StateId>(m));
    out.set_transition(dead, c, dead);
  }
  out.set_accepting(static_cast<StateId>(m));
  return out;
}

std::string serialize_automaton(const ClassifierAutomaton& a) {
  std::ostringstream out;
  const Alphabet& sigma = a.alphabet();
  auto sym = [&](std::size_t c) {
    AccessSymbol s = sigma.symbol(c);
    return std::to_string(s.line) + ":" + to_char(s.cls);
  };
  out << "alphabet";
  for (std::size_t c = 0; c < sigma.size(); ++c) out << ' ' << sym(c);
  out << '\n';
  for (StateId s = 0; s < a.num_states(); ++s) {
    out << "state q" << s << (a.accepting(s) ? " accepting" : "") << '\n';
  }
  out << "initial q" << a.initial() << '\n';
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (std::size_t c = 0; c < sigma.size(); ++c) out << "trans q" << s << ' ' << sym(c) << " q" << a.next(s, c) << '\n';
  }
  return out.str();
}

}  // namespace wcet
