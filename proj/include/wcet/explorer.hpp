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

#ifndef WCET_EXPLORER_HPP_
#define WCET_EXPLORER_HPP_

#include <cstddef>

#include "wcet/automaton.hpp"
#include "wcet/cache.hpp"
#include "wcet/program.hpp"
#include "wcet/types.hpp"

namespace wcet {

inline constexpr std::size_t kDefaultMaxLen = 10000;

enum class ExplorationMode { Explicit, Abstract };

struct ExplorationResult {
  Cycles wcet = 0;
  ClassifiedTrace witness;
  /// Distinct (location, cache component) pairs expanded.
  std::size_t states_explored = 0;
  ExplorationMode mode = ExplorationMode::Explicit;
};

/// Longest path over program x concrete cache, memoized on
/// (location, cache state). The witness is the lexicographically least
/// classified trace among those of maximal time.
ExplorationResult explore_explicit(const Program& program, const CacheConfig& config, const CacheState& init,
                                   const DurationTable& durations, std::size_t max_len = kDefaultMaxLen);

inline ExplorationResult explore_explicit(const Program& program, const CacheConfig& config,
                                          const CacheState& init = {}) {
  return explore_explicit(program, config, init, program.durations());
}

/// Same search over program x abstract cache model: at every access the
/// model picks Hit or Miss, subject to the trace staying allowed.
///
/// Throws AlphabetMismatch if a program line is missing from the model's
/// alphabet, and AbstractModelEmpty if the model allows no complete run.
ExplorationResult explore_abstract(const Program& program, const ClassifierAutomaton& model,
                                   const CacheConfig& config, const DurationTable& durations,
                                   std::size_t max_len = kDefaultMaxLen);

inline ExplorationResult explore_abstract(const Program& program, const ClassifierAutomaton& model,
                                          const CacheConfig& config) {
  return explore_abstract(program, model, config, program.durations());
}

inline const ClassifiedTrace& witness(const ExplorationResult& result) { return result.witness; }

/// The alphabet of (line, Hit|Miss) symbols a program can produce.
inline Alphabet program_alphabet(const Program& program, const CacheConfig& config) {
  return Alphabet(program.lines(config.line_size));
}

}  // namespace wcet

#endif  // WCET_EXPLORER_HPP_
