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

#include "wcet/cache.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wcet/errors.hpp"

namespace wcet {

void CacheConfig::validate() const {
  if (capacity < 1) throw ValidationError("cache capacity must be at least 1");
  if (line_size < 1) throw ValidationError("line size must be at least 1");
  if (hit_time < 0 || miss_time < 0) throw ValidationError("hit/miss times must be nonnegative");
  if (miss_time < hit_time) throw ValidationError("miss time must not be smaller than hit time");
}

std::size_t CacheStateHash::operator()(const CacheState& s) const noexcept {
  std::size_t h = s.lines.size();
  for (Line l : s.lines) h ^= std::hash<Line>{}(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::optional<std::size_t> find(const CacheState& state, Line line) {
  auto it = std::find(state.lines.begin(), state.lines.end(), line);
  if (it == state.lines.end()) return std::nullopt;
  return static_cast<std::size_t>(it - state.lines.begin());
}

Classification touch(CacheState& state, Line line, const CacheConfig& config) {
  auto& lines = state.lines;
  if (auto idx = find(state, line)) {
    if (config.policy == ReplacementPolicy::PromoteOnHit) {
      std::rotate(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(*idx),
                  lines.begin() + static_cast<std::ptrdiff_t>(*idx) + 1);
    }
    return Classification::Hit;
  }
  if (lines.size() >= config.capacity) lines.resize(config.capacity - 1);
  lines.insert(lines.begin(), line);
  return Classification::Miss;
}

std::pair<CacheState, Classification> access(const CacheState& state, Line line,
                                             const CacheConfig& config) {
  CacheState next = state;
  Classification c = touch(next, line, config);
  return {std::move(next), c};
}

std::pair<ClassifiedTrace, CacheState> simulate_with_state(const CacheConfig& config,
                                                           const CacheState& init,
                                                           std::span<const Pc> pcs) {
  CacheState state = init;
  ClassifiedTrace trace;
  trace.reserve(pcs.size());
  for (Pc pc : pcs) {
    Line line = line_of(pc, config);
    trace.push_back({pc, line, touch(state, line, config)});
  }
  return {std::move(trace), std::move(state)};
}

ClassifiedTrace simulate(const CacheConfig& config, const CacheState& init, std::span<const Pc> pcs) {
  return simulate_with_state(config, init, pcs).first;
}

bool is_valid_state(const CacheState& state, const CacheConfig& config) {
  if (state.lines.size() > config.capacity) return false;
  std::set<Line> seen(state.lines.begin(), state.lines.end());
  return seen.size() == state.lines.size();
}

std::string format_state(const CacheState& state) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < state.lines.size(); ++i) out << (i ? "," : "") << state.lines[i];
  out << ']';
  return out.str();
}

std::string format_trace(const ClassifiedTrace& trace) {
  std::string out;
  for (const ClassifiedAccess& a : trace) {
    if (!out.empty()) out += ' ';
    out += std::to_string(a.pc);
    out += ':';
    out += to_char(a.cls);
  }
  return out;
}

std::string classification_string(const ClassifiedTrace& trace) {
  std::string out;
  for (const ClassifiedAccess& a : trace) out += to_char(a.cls);
  return out;
}

}  // namespace wcet
