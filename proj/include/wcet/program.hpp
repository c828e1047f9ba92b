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

#ifndef WCET_PROGRAM_HPP_
#define WCET_PROGRAM_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcet/types.hpp"

namespace wcet {

using LocId = std::size_t;
using DurationTable = std::map<Pc, Cycles>;

struct Instruction {
  Pc pc = 0;
  Cycles dur = 1;
};

struct Edge {
  LocId from = 0;
  Pc pc = 0;
  LocId to = 0;
};

/// Finite automaton over instructions. Immutable once built; construct it
/// through ProgramBuilder, parse_program or running_example.
///
/// Outgoing edges of each location are kept in ascending pc order (ties by
/// target name), which fixes the enumeration order of runs and
/// the tie-breaking of witnesses.
class Program {
 public:
  const std::string& name() const { return name_; }
  const std::vector<std::string>& locations() const { return locations_; }
  const std::string& location_name(LocId id) const { return locations_.at(id); }
  LocId entry() const { return entry_; }
  LocId end() const { return end_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Edge> out_edges(LocId loc) const;
  const DurationTable& durations() const { return durations_; }

  /// Distinct cache lines touched by the edges, ascending.
  std::vector<Line> lines(Line line_size) const;

 private:
  friend class ProgramBuilder;

  std::string name_;
  std::vector<std::string> locations_;
  LocId entry_ = 0;
  LocId end_ = 0;
  std::vector<Edge> edges_;                 // grouped by source
  std::vector<std::size_t> edge_offsets_;   // size locations + 1
  DurationTable durations_;
};

class ProgramBuilder {
 public:
  explicit ProgramBuilder(std::string name = "program") : name_(std::move(name)) {}

  LocId location(std::string_view name);
  ProgramBuilder& entry(std::string_view loc);
  ProgramBuilder& end(std::string_view loc);
  /// Throws ValidationError on a duplicate pc.
  ProgramBuilder& instruction(Pc pc, Cycles dur = 1);
  ProgramBuilder& edge(std::string_view from, std::string_view to, Pc pc);

  /// Checks every structural invariant and throws ValidationError on the
  /// first violation.
  Program build() const;

 private:
  std::string name_;
  std::vector<std::string> locations_;
  std::map<std::string, LocId, std::less<>> index_;
  std::optional<LocId> entry_;
  std::optional<LocId> end_;
  std::vector<Instruction> instructions_;
  std::vector<Edge> edges_;
};

/// Length of the longest entry-to-end run. Throws BoundExceeded if a cycle is
/// reachable from entry or the longest run exceeds max_len.
std::size_t check_bounded(const Program& program, std::size_t max_len);

/// Visits every entry-to-end instruction sequence once, lexicographically by
/// edge order. Throws BoundExceeded as check_bounded does.
void for_each_run(const Program& program, std::size_t max_len,
                  const std::function<void(std::span<const Pc>)>& visit);

std::vector<std::vector<Pc>> language_sequences(const Program& program, std::size_t max_len);

struct RunningExampleParams {
  int iterations = 1;   // loop bound M, >= 1
  int branches = 0;     // switch branches N, >= 0
  DurationTable durations;  // overrides; unspecified pcs take dur 1
};

/// The parametric loop-with-switch program. Each iteration fetches the loop
/// test at pc 1 twice (compare, then the indexed dispatch through the same
/// instruction), runs one branch instruction picked from pcs 3..3+N, then the
/// loop tail at pc 2. The iteration counter is part of the location, so the
/// automaton is acyclic and every run has length 4*M.
Program running_example(const RunningExampleParams& params);

/// Program file format; see README.
Program parse_program(std::istream& in);
Program parse_program_string(std::string_view text);
Program load_program(const std::string& path);
std::string serialize_program(const Program& program);

}  // namespace wcet

#endif  // WCET_PROGRAM_HPP_
