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

#include "wcet/program.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "wcet/errors.hpp"

namespace wcet {

std::span<const Edge> Program::out_edges(LocId loc) const {
  return std::span<const Edge>(edges_).subspan(edge_offsets_.at(loc),
                                               edge_offsets_.at(loc + 1) - edge_offsets_.at(loc));
}

std::vector<Line> Program::lines(Line line_size) const {
  std::set<Line> seen;
  for (const Edge& e : edges_) seen.insert(e.pc / line_size);
  return {seen.begin(), seen.end()};
}

LocId ProgramBuilder::location(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  LocId id = locations_.size();
  locations_.emplace_back(name);
  index_.emplace(std::string(name), id);
  return id;
}

ProgramBuilder& ProgramBuilder::entry(std::string_view loc) {
  entry_ = location(loc);
  return *this;
}

ProgramBuilder& ProgramBuilder::end(std::string_view loc) {
  end_ = location(loc);
  return *this;
}

ProgramBuilder& ProgramBuilder::instruction(Pc pc, Cycles dur) {
  for (const Instruction& i : instructions_) {
    if (i.pc == pc) throw ValidationError("duplicate instruction pc=" + std::to_string(pc));
  }
  instructions_.push_back({pc, dur});
  return *this;
}

ProgramBuilder& ProgramBuilder::edge(std::string_view from, std::string_view to, Pc pc) {
  LocId f = location(from);
  LocId t = location(to);
  edges_.push_back({f, pc, t});
  return *this;
}

Program ProgramBuilder::build() const {
  if (!entry_) throw ValidationError("program has no entry location");
  if (!end_) throw ValidationError("program has no end location");

  Program p;
  p.name_ = name_;
  p.locations_ = locations_;
  p.entry_ = *entry_;
  p.end_ = *end_;

  for (const Instruction& i : instructions_) {
    if (i.pc <= 0) throw ValidationError("pc must be positive, got " + std::to_string(i.pc));
    if (i.dur < 0) throw ValidationError("negative duration for pc=" + std::to_string(i.pc));
    p.durations_.emplace(i.pc, i.dur);
  }
  for (const Edge& e : edges_) {
    if (!p.durations_.contains(e.pc)) {
      throw ValidationError("edge uses undeclared instruction pc=" + std::to_string(e.pc));
    }
    if (e.from == p.end_) {
      throw ValidationError("end location '" + locations_[e.from] + "' has an outgoing edge");
    }
  }

  // Grouped by source; within a source by pc, then target name.
  p.edges_ = edges_;
  std::stable_sort(p.edges_.begin(), p.edges_.end(), [this](const Edge& a, const Edge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.pc != b.pc) return a.pc < b.pc;
    return locations_[a.to] < locations_[b.to];
  });
  p.edges_.erase(std::unique(p.edges_.begin(), p.edges_.end(),
                             [](const Edge& a, const Edge& b) {
                               return a.from == b.from && a.pc == b.pc && a.to == b.to;
                             }),
                 p.edges_.end());
  p.edge_offsets_.assign(locations_.size() + 1, 0);
  for (const Edge& e : p.edges_) ++p.edge_offsets_[e.from + 1];
  for (std::size_t i = 1; i < p.edge_offsets_.size(); ++i) p.edge_offsets_[i] += p.edge_offsets_[i - 1];

  std::vector<bool> reached(locations_.size(), false);
  std::vector<LocId> stack{p.entry_};
  reached[p.entry_] = true;
  while (!stack.empty()) {
    LocId l = stack.back();
    stack.pop_back();
    for (const Edge& e : p.out_edges(l)) {
      if (!reached[e.to]) {
        reached[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  for (LocId l = 0; l < locations_.size(); ++l) {
    if (!reached[l]) throw ValidationError("location '" + locations_[l] + "' is unreachable from entry");
  }
  if (!reached[p.end_]) {
    throw ValidationError("end location is unreachable: the program has no complete run");
  }
  return p;
}

namespace {

// Longest path to end from each location; -1 when end is not reachable.
// Throws BoundExceeded on a reachable cycle.
std::vector<long long> longest_to_end(const Program& program) {
  const std::size_t n = program.locations().size();
  enum Mark : std::uint8_t { kNew, kActive, kDone };
  std::vector<Mark> mark(n, kNew);
  std::vector<long long> best(n, -1);

  struct Frame {
    LocId loc;
    std::size_t next;
  };
  std::vector<Frame> stack{{program.entry(), 0}};
  mark[program.entry()] = kActive;
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto out = program.out_edges(f.loc);
    if (f.next < out.size()) {
      LocId to = out[f.next++].to;
      if (mark[to] == kActive) {
        throw BoundExceeded("program has a cycle through location '" + program.location_name(to) +
                            "': runs are unbounded");
      }
      if (mark[to] == kNew) {
        mark[to] = kActive;
        stack.push_back({to, 0});
      }
      continue;
    }
    long long b = f.loc == program.end() ? 0 : -1;
    for (const Edge& e : out) {
      if (best[e.to] >= 0) b = std::max(b, best[e.to] + 1);
    }
    best[f.loc] = b;
    mark[f.loc] = kDone;
    stack.pop_back();
  }
  return best;
}

}  // namespace

std::size_t check_bounded(const Program& program, std::size_t max_len) {
  auto best = longest_to_end(program);
  long long longest = best[program.entry()];
  if (longest < 0) throw ValidationError("program has no complete run");
  if (static_cast<std::size_t>(longest) > max_len) {
    throw BoundExceeded("longest run has " + std::to_string(longest) +
                        " instructions, exceeding the bound of " + std::to_string(max_len));
  }
  return static_cast<std::size_t>(longest);
}

void for_each_run(const Program& program, std::size_t max_len,
                  const std::function<void(std::span<const Pc>)>& visit) {
  check_bounded(program, max_len);
  auto best = longest_to_end(program);

  std::vector<Pc> run;
  struct Frame {
    LocId loc;
    std::size_t next;
  };
  std::vector<Frame> stack{{program.entry(), 0}};
  if (program.entry() == program.end()) {
    visit(run);
    return;
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto out = program.out_edges(f.loc);
    if (f.next == out.size()) {
      stack.pop_back();
      if (!run.empty()) run.pop_back();
      continue;
    }
    const Edge& e = out[f.next++];
    if (best[e.to] < 0) continue;  // dead end, no run through here
    run.push_back(e.pc);
    if (e.to == program.end()) {
      visit(run);
      run.pop_back();
    } else {
      stack.push_back({e.to, 0});
    }
  }
}

std::vector<std::vector<Pc>> language_sequences(const Program& program, std::size_t max_len) {
  std::vector<std::vector<Pc>> out;
  for_each_run(program, max_len, [&](std::span<const Pc> r) { out.emplace_back(r.begin(), r.end()); });
  return out;
}

Program running_example(const RunningExampleParams& params) {
  if (params.iterations < 1) throw ValidationError("running example needs M >= 1");
  if (params.branches < 0) throw ValidationError("running example needs N >= 0");

  constexpr Pc kLoopTest = 1;
  constexpr Pc kLoopTail = 2;
  constexpr Pc kFirstBranch = 3;
  const Pc last_branch = kFirstBranch + params.branches;

  auto dur = [&](Pc pc) {
    auto it = params.durations.find(pc);
    return it == params.durations.end() ? Cycles{1} : it->second;
  };

  ProgramBuilder b("running_example_M" + std::to_string(params.iterations) + "_N" +
                   std::to_string(params.branches));
  b.entry("head_1");
  b.instruction(kLoopTest, dur(kLoopTest));
  b.instruction(kLoopTail, dur(kLoopTail));
  for (Pc pc = kFirstBranch; pc <= last_branch; ++pc) b.instruction(pc, dur(pc));

  for (int k = 1; k <= params.iterations; ++k) {
    const std::string s = std::to_string(k);
    const std::string head = "head_" + s;
    const std::string dispatch = "dispatch_" + s;
    const std::string pick = "pick_" + s;
    const std::string tail = "tail_" + s;
    const std::string next = k == params.iterations ? "END" : "head_" + std::to_string(k + 1);
    b.edge(head, dispatch, kLoopTest);
    b.edge(dispatch, pick, kLoopTest);
    for (Pc pc = kFirstBranch; pc <= last_branch; ++pc) b.edge(pick, tail, pc);
    b.edge(tail, next, kLoopTail);
  }
  b.end("END");
  return b.build();
}

}  // namespace wcet
