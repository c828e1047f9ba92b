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

#ifndef WCET_CACHE_HPP_
#define WCET_CACHE_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wcet/types.hpp"

namespace wcet {

enum class ReplacementPolicy {
  PromoteOnHit,  // a hit moves the line to the front (LRU order)
  PureFifo,      // insertion order only; hits leave the state alone
};

struct CacheConfig {
  std::size_t capacity = 2;
  Line line_size = 1;
  Cycles hit_time = 2;
  Cycles miss_time = 20;
  ReplacementPolicy policy = ReplacementPolicy::PromoteOnHit;

  /// Throws ValidationError if capacity or line_size is zero, or
  /// miss_time < hit_time, or a time is negative.
  void validate() const;
};

inline Line line_of(Pc pc, const CacheConfig& config) { return pc / config.line_size; }

/// Cache contents, most recently inserted (or promoted) line first. Empty
/// slots are simply absent.
struct CacheState {
  std::vector<Line> lines;

  auto operator<=>(const CacheState&) const = default;
};

struct CacheStateHash {
  std::size_t operator()(const CacheState& s) const noexcept;
};

/// Empty cache.
inline CacheState init_cache() { return {}; }

std::optional<std::size_t> find(const CacheState& state, Line line);

/// Classifies an access and updates the cache in place.
Classification touch(CacheState& state, Line line, const CacheConfig& config);

/// Classification is taken before the update.
std::pair<CacheState, Classification> access(const CacheState& state, Line line,
                                             const CacheConfig& config);

ClassifiedTrace simulate(const CacheConfig& config, const CacheState& init, std::span<const Pc> pcs);

/// Same fold as simulate, with the final cache state returned too.
std::pair<ClassifiedTrace, CacheState> simulate_with_state(const CacheConfig& config,
                                                           const CacheState& init,
                                                           std::span<const Pc> pcs);

/// True when state holds distinct lines and fits the capacity.
bool is_valid_state(const CacheState& state, const CacheConfig& config);

std::string format_state(const CacheState& state);

/// Trace file: one `pc=<int> cls=<H|M>` per line, '#' comments. Lines are
/// derived from pcs with the config's line size.
ClassifiedTrace parse_trace(std::istream& in, const CacheConfig& config);
ClassifiedTrace load_trace(const std::string& path, const CacheConfig& config);

}  // namespace wcet

#endif  // WCET_CACHE_HPP_
