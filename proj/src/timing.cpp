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

#include "wcet/timing.hpp"

#include "wcet/errors.hpp"

namespace wcet {

StepCost step_cost(Pc pc, Classification cls, const DurationTable& durations, const CacheConfig& config) {
  auto it = durations.find(pc);
  if (it == durations.end()) throw UnknownInstruction("no duration for pc=" + std::to_string(pc));
  return {cls == Classification::Hit ? config.hit_time : config.miss_time, it->second};
}

Cycles trace_time(const ClassifiedTrace& trace, const DurationTable& durations, const CacheConfig& config) {
  Cycles clock = 0;
  for (const ClassifiedAccess& a : trace) clock += step_cost(a.pc, a.cls, durations, config).total();
  return clock;
}

}  // namespace wcet
