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

#include <random>

#include "doctest.h"
#include "wcet/errors.hpp"
#include "wcet/timing.hpp"

using namespace wcet;

namespace {

CacheConfig hit1_miss10() {
  CacheConfig c;
  c.capacity = 8;
  c.hit_time = 1;
  c.miss_time = 10;
  return c;
}

const DurationTable kPiDurations{{1, 1}, {2, 2}, {3, 2}, {4, 1}, {5, 1}};

ClassifiedTrace all_miss(std::vector<Pc> pcs) {
  ClassifiedTrace t;
  for (Pc pc : pcs) t.push_back({pc, pc, Classification::Miss});
  return t;
}

}  // namespace

TEST_CASE("step_cost is fetch delay plus execute duration") {
  CHECK(step_cost(1, Classification::Miss, kPiDurations, hit1_miss10()).total() == 11);
  CHECK(step_cost(2, Classification::Miss, kPiDurations, hit1_miss10()).total() == 12);
  CacheConfig appendix;  // hit 2, miss 20
  StepCost zero_exec = step_cost(7, Classification::Hit, {{7, 0}}, appendix);
  CHECK(zero_exec.fetch_cycles == 2);
  CHECK(zero_exec.execute_cycles == 0);
  CHECK(zero_exec.total() == 2);
}

TEST_CASE("unknown instruction") {
  CHECK_THROWS_AS(step_cost(9, Classification::Hit, kPiDurations, hit1_miss10()), UnknownInstruction);
  CHECK_THROWS_AS(trace_time(all_miss({1, 9}), kPiDurations, hit1_miss10()), UnknownInstruction);
}

TEST_CASE("the two equal-shape prefixes take 35 and 33 cycles") {
  CHECK(trace_time(all_miss({1, 2, 3}), kPiDurations, hit1_miss10()) == 35);
  CHECK(trace_time(all_miss({1, 4, 5}), kPiDurations, hit1_miss10()) == 33);
  CHECK(trace_time({}, kPiDurations, hit1_miss10()) == 0);
}

TEST_CASE("trace_time is additive, monotone in hits, and depends only on classifications") {
  std::mt19937 rng(17);
  DurationTable dur;
  for (Pc pc = 1; pc <= 6; ++pc) dur[pc] = std::uniform_int_distribution<Cycles>(0, 5)(rng);
  auto random_trace = [&](std::size_t n) {
    ClassifiedTrace t(n);
    for (auto& a : t) {
      a.pc = std::uniform_int_distribution<Pc>(1, 6)(rng);
      a.line = a.pc;
      a.cls = std::uniform_int_distribution<int>(0, 1)(rng) ? Classification::Miss : Classification::Hit;
    }
    return t;
  };
  for (int round = 0; round < 300; ++round) {
    CacheConfig c;
    c.hit_time = std::uniform_int_distribution<Cycles>(0, 4)(rng);
    c.miss_time = c.hit_time + std::uniform_int_distribution<Cycles>(0, 10)(rng);
    ClassifiedTrace a = random_trace(std::uniform_int_distribution<std::size_t>(0, 8)(rng));
    ClassifiedTrace b = random_trace(std::uniform_int_distribution<std::size_t>(0, 8)(rng));
    ClassifiedTrace ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(trace_time(ab, dur, c) == trace_time(a, dur, c) + trace_time(b, dur, c));

    for (std::size_t i = 0; i < ab.size(); ++i) {
      if (ab[i].cls != Classification::Miss) continue;
      ClassifiedTrace flipped = ab;
      flipped[i].cls = Classification::Hit;
      CHECK(trace_time(flipped, dur, c) <= trace_time(ab, dur, c));
    }

    // Relabel lines arbitrarily: time must not move.
    ClassifiedTrace relabeled = ab;
    for (auto& x : relabeled) x.line += 100;
    CHECK(trace_time(relabeled, dur, c) == trace_time(ab, dur, c));
  }
}
