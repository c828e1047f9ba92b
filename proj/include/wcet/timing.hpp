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

#ifndef WCET_TIMING_HPP_
#define WCET_TIMING_HPP_

#include "wcet/cache.hpp"
#include "wcet/program.hpp"
#include "wcet/types.hpp"

namespace wcet {

// The fetch/execute pipeline handles one instruction at a time: the fetch
// waits for the cache delay, then the instruction executes for dur(pc)
// cycles. No idle time is inserted between stages or instructions.

struct StepCost {
  Cycles fetch_cycles = 0;
  Cycles execute_cycles = 0;

  Cycles total() const { return fetch_cycles + execute_cycles; }
};

/// Throws UnknownInstruction if pc has no duration entry.
StepCost step_cost(Pc pc, Classification cls, const DurationTable& durations, const CacheConfig& config);

/// Sum of step costs; the value a never-reset global clock holds at the end
/// of the trace.
Cycles trace_time(const ClassifiedTrace& trace, const DurationTable& durations, const CacheConfig& config);

}  // namespace wcet

#endif  // WCET_TIMING_HPP_
