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

#ifndef WCET_REFINEMENT_HPP_
#define WCET_REFINEMENT_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "wcet/automaton.hpp"
#include "wcet/cache.hpp"
#include "wcet/errors.hpp"
#include "wcet/explorer.hpp"
#include "wcet/program.hpp"

namespace wcet {

struct FeasibilityVerdict {
  bool feasible = false;
  /// Present iff feasible; simulating the trace from it reproduces every
  /// classification.
  std::optional<CacheState> witness_initial_state;
};

/// Does the concrete cache, started in `init`, classify every access of t as
/// t says?
FeasibilityVerdict is_feasible_from(const ClassifiedTrace& t, const CacheState& init, const CacheConfig& config);

/// Is there any initial cache state, over an unrestricted universe of lines,
/// that makes t feasible?
///
/// Lines outside L(t) never hit and are interchangeable, so it suffices to
/// consider states over L(t) plus `capacity` fresh lines. Further, a line
/// whose first access in t is a Miss must be gone before that access, so it
/// behaves exactly like a fresh line, while a line whose first access is a
/// Hit must be present initially. The candidates are therefore the
/// arrangements of the first-hit lines padded with fresh lines, tried with
/// the fewest fresh lines first (the empty state comes first when it
/// qualifies). Fresh lines are numbered above every line of t.
FeasibilityVerdict is_feasible_from_some_state(const ClassifiedTrace& t, const CacheConfig& config);

/// Shortest contiguous infix of t that is infeasible from every cache state,
/// leftmost among the shortest. Every proper infix of the result is feasible
/// from some state. Precondition: t itself is infeasible from every state;
/// otherwise t is returned unchanged.
ClassifiedTrace infeasible_core(const ClassifiedTrace& t, const CacheConfig& config);

/// Shortest prefix of t that is infeasible from `init`; t if t is feasible.
ClassifiedTrace infeasible_prefix(const ClassifiedTrace& t, const CacheState& init, const CacheConfig& config);

/// The traces containing `core` as a contiguous infix. When the core is
/// infeasible from every state, so is each of them: whatever the cache holds
/// when the infix starts, the infix cannot be reproduced.
ClassifierAutomaton build_o_t(const ClassifiedTrace& core, const Alphabet& alphabet);

struct RefinementIteration {
  std::size_t index = 0;
  Cycles wcet = 0;
  ClassifiedTrace witness;
  FeasibilityVerdict verdict;
  /// The generalized infeasible part removed after this iteration.
  std::optional<ClassifiedTrace> core;
  /// True when `core` was removed as a prefix (core . Sigma*) rather than as an infix.
  bool prefix_core = false;
  /// Size of the abstract model explored in this iteration.
  std::size_t automaton_size = 0;
  std::size_t states_explored = 0;
};

using RefinementLog = std::vector<RefinementIteration>;

struct RefinementOptions {
  /// nullopt: the initial cache is unknown and a witness is accepted when it
  /// is feasible from some state. Otherwise witnesses are checked against
  /// this state. A witness infeasible from every state still loses its infix
  /// core; one that only fails from this state loses its infeasible prefix.
  std::optional<CacheState> initial_state;
  std::size_t max_iters = 10000;
  std::size_t max_len = kDefaultMaxLen;
};

struct RefinementResult {
  Cycles wcet = 0;
  ClassifiedTrace witness;
  RefinementLog log;
  ClassifierAutomaton model;  // the final abstract cache model
};

class IterationBudgetExceeded : public Error {
 public:
  IterationBudgetExceeded(std::size_t budget, RefinementLog log)
      : Error("refinement did not converge within " + std::to_string(budget) + " iterations"),
        log_(std::move(log)) {}
  const RefinementLog& log() const { return log_; }

 private:
  RefinementLog log_;
};

/// Trace abstraction refinement for the WCET: start from hit_or_miss,
/// explore, check the witness, and subtract the generalization of each
/// infeasible witness until a feasible witness is found.
RefinementResult run_refinement(const Program& program, const CacheConfig& config, const DurationTable& durations,
                                const RefinementOptions& options = {});

inline RefinementResult run_refinement(const Program& program, const CacheConfig& config,
                                       const RefinementOptions& options = {}) {
  return run_refinement(program, config, program.durations(), options);
}

}  // namespace wcet

#endif  // WCET_REFINEMENT_HPP_
