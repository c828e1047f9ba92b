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

#include "wcet/refinement.hpp"

#include <algorithm>
#include <set>

namespace wcet {

namespace {

// Replays t's lines from `init` and reports the index of the first access
// whose classification disagrees with t, or t.size().
std::size_t first_mismatch(const ClassifiedTrace& t, std::size_t begin, std::size_t end, CacheState state,
                           const CacheConfig& config) {
  for (std::size_t i = begin; i < end; ++i) {
    if (touch(state, t[i].line, config) != t[i].cls) return i;
  }
  return end;
}

// Tries every candidate initial state for the infix [begin, end) of t.
std::optional<CacheState> find_initial_state(const ClassifiedTrace& t, std::size_t begin, std::size_t end,
                                             const CacheConfig& config) {
  std::vector<Line> must;  // first access is a Hit
  std::set<Line> seen;
  Line max_line = 0;
  for (std::size_t i = begin; i < end; ++i) {
    max_line = std::max(max_line, t[i].line);
    if (seen.insert(t[i].line).second && t[i].cls == Classification::Hit) must.push_back(t[i].line);
  }
  if (must.size() > config.capacity) return std::nullopt;
  std::sort(must.begin(), must.end());

  std::optional<CacheState> found;
  CacheState candidate;
  std::vector<bool> used(must.size(), false);

  // Places the first-hit lines and `fresh` fresh lines in every order; fresh
  // lines appear in increasing id order since they are interchangeable.
  auto place = [&](auto&& self, std::size_t placed_must, std::size_t placed_fresh, std::size_t fresh) -> bool {
    if (placed_must == must.size() && placed_fresh == fresh) {
      if (first_mismatch(t, begin, end, candidate, config) == end) {
        found = candidate;
        return true;
      }
      return false;
    }
    for (std::size_t i = 0; i < must.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      candidate.lines.push_back(must[i]);
      bool done = self(self, placed_must + 1, placed_fresh, fresh);
      candidate.lines.pop_back();
      used[i] = false;
      if (done) return true;
    }
    if (placed_fresh < fresh) {
      candidate.lines.push_back(max_line + 1 + static_cast<Line>(placed_fresh));
      bool done = self(self, placed_must, placed_fresh + 1, fresh);
      candidate.lines.pop_back();
      if (done) return true;
    }
    return false;
  };
  for (std::size_t fresh = 0; must.size() + fresh <= config.capacity; ++fresh) {
    if (place(place, 0, 0, fresh)) return found;
  }
  return std::nullopt;
}

}  // namespace

FeasibilityVerdict is_feasible_from(const ClassifiedTrace& t, const CacheState& init, const CacheConfig& config) {
  if (first_mismatch(t, 0, t.size(), init, config) == t.size()) return {true, init};
  return {false, std::nullopt};
}

FeasibilityVerdict is_feasible_from_some_state(const ClassifiedTrace& t, const CacheConfig& config) {
  auto state = find_initial_state(t, 0, t.size(), config);
  return {state.has_value(), std::move(state)};
}

ClassifiedTrace infeasible_core(const ClassifiedTrace& t, const CacheConfig& config) {
  for (std::size_t len = 1; len <= t.size(); ++len) {
    for (std::size_t begin = 0; begin + len <= t.size(); ++begin) {
      if (!find_initial_state(t, begin, begin + len, config)) {
        return ClassifiedTrace(t.begin() + static_cast<std::ptrdiff_t>(begin),
                               t.begin() + static_cast<std::ptrdiff_t>(begin + len));
      }
    }
  }
  return t;
}

ClassifiedTrace infeasible_prefix(const ClassifiedTrace& t, const CacheState& init, const CacheConfig& config) {
  std::size_t i = first_mismatch(t, 0, t.size(), init, config);
  if (i == t.size()) return t;
  return ClassifiedTrace(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i + 1));
}

ClassifierAutomaton build_o_t(const ClassifiedTrace& core, const Alphabet& alphabet) {
  return infix_language(to_symbols(core), alphabet);
}

RefinementResult run_refinement(const Program& program, const CacheConfig& config, const DurationTable& durations,
                                const RefinementOptions& options) {
  config.validate();
  if (options.initial_state && !is_valid_state(*options.initial_state, config)) {
    throw ValidationError("initial cache state " + format_state(*options.initial_state) +
                          " is not a valid state for capacity " + std::to_string(config.capacity));
  }
  const Alphabet alphabet = program_alphabet(program, config);
  RefinementResult result;
  result.model = hit_or_miss(alphabet);

  for (std::size_t k = 0; k < options.max_iters; ++k) {
    ExplorationResult explored = explore_abstract(program, result.model, config, durations, options.max_len);

    RefinementIteration it;
    it.index = k;
    it.wcet = explored.wcet;
    it.witness = explored.witness;
    it.automaton_size = result.model.num_states();
    it.states_explored = explored.states_explored;
    it.verdict = options.initial_state ? is_feasible_from(it.witness, *options.initial_state, config)
                                       : is_feasible_from_some_state(it.witness, config);
    if (it.verdict.feasible) {
      result.wcet = it.wcet;
      result.witness = it.witness;
      result.log.push_back(std::move(it));
      return result;
    }

    ClassifierAutomaton removed;
    if (options.initial_state && is_feasible_from_some_state(it.witness, config).feasible) {
      it.prefix_core = true;
      it.core = infeasible_prefix(it.witness, *options.initial_state, config);
      removed = prefix_language(to_symbols(*it.core), alphabet);
    } else {
      it.core = infeasible_core(it.witness, config);
      removed = build_o_t(*it.core, alphabet);
    }
    result.model = subtract(result.model, removed);
    result.log.push_back(std::move(it));
  }
  throw IterationBudgetExceeded(options.max_iters, std::move(result.log));
}

}  // namespace wcet
