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

#ifndef WCET_TYPES_HPP_
#define WCET_TYPES_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wcet {

using Pc = std::int64_t;
using Line = std::int64_t;
using Cycles = std::int64_t;

// Miss orders before Hit, so equal-time witnesses prefer misses.
enum class Classification : std::uint8_t { Miss = 0, Hit = 1 };

inline char to_char(Classification c) { return c == Classification::Hit ? 'H' : 'M'; }

struct ClassifiedAccess {
  Pc pc = 0;
  Line line = 0;
  Classification cls = Classification::Miss;

  auto operator<=>(const ClassifiedAccess&) const = default;
};

using ClassifiedTrace = std::vector<ClassifiedAccess>;

// "pc:H pc:M ..." form used in reports.
std::string format_trace(const ClassifiedTrace& trace);

// Classification letters only, e.g. "MHMM".
std::string classification_string(const ClassifiedTrace& trace);

}  // namespace wcet

#endif  // WCET_TYPES_HPP_
