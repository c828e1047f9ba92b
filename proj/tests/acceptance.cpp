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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "oracles.hpp"
#include "wcet/automaton.hpp"
#include "wcet/cache.hpp"
#include "wcet/explorer.hpp"
#include "wcet/program.hpp"
#include "wcet/refinement.hpp"
#include "wcet/timing.hpp"

using namespace wcet;

namespace {

constexpr auto H = Classification::Hit;
constexpr auto M = Classification::Miss;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

CacheConfig config(std::size_t capacity, Line line_size = 1, Cycles hit = 2, Cycles miss = 20) {
  CacheConfig c;
  c.capacity = capacity;
  c.line_size = line_size;
  c.hit_time = hit;
  c.miss_time = miss;
  return c;
}

ClassifiedTrace trace(std::initializer_list<std::pair<Line, Classification>> items) {
  ClassifiedTrace t;
  for (auto [l, c] : items) t.push_back({l, l, c});
  return t;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Shared between criteria 5, 6 and 7.
struct RandomRun {
  oracle::RandomProgram rp;
  RefinementResult result;
};
std::vector<RandomRun> g_runs;
std::size_t g_budget_failures = 0;
double g_refine_seconds = 0;
constexpr std::size_t kIterationBudget = 10000;

Outcome worked_example() {
  std::vector<Pc> pcs{1, 2, 3, 1};
  auto start = Clock::now();
  ClassifiedTrace t = simulate(config(3), {}, pcs);
  double ms = seconds_since(start) * 1000;
  std::string got = classification_string(t);
  std::ostringstream d;
  d << "classifications " << got << ", " << ms << " ms";
  return {got == "MMMH" && ms < 1.0, d.str()};
}

Outcome eviction_example() {
  std::vector<Pc> pcs{1, 2, 3};
  auto [t, final_state] = simulate_with_state(config(2), {}, pcs);
  // Front is most recent, back is the next eviction candidate.
  bool ok = final_state.lines == std::vector<Line>{3, 2} && !find(final_state, 1).has_value();
  return {ok, "final cache " + format_state(final_state) + " (" + classification_string(t) + ")"};
}

Outcome timing_example() {
  DurationTable dur{{1, 1}, {2, 2}, {3, 2}, {4, 1}, {5, 1}};
  CacheConfig c = config(4, 1, 1, 10);
  Cycles a = trace_time(trace({{1, M}, {2, M}, {3, M}}), dur, c);
  Cycles b = trace_time(trace({{1, M}, {4, M}, {5, M}}), dur, c);
  return {a == 35 && b == 33, "1.2.3 -> " + std::to_string(a) + ", 1.4.5 -> " + std::to_string(b)};
}

Outcome table_structure() {
  auto start = Clock::now();
  CacheConfig c = config(2);
  std::vector<Cycles> wcets;
  std::vector<std::size_t> explicit_states, abstract_states;
  bool pattern_ok = true, agree = true, fewer = true;
  for (int n = 1; n <= 10; ++n) {
    Program p = running_example({5, n, {}});
    auto ex = explore_explicit(p, c);
    auto ab = explore_abstract(p, from_pattern("(M.H.M.M)*", program_alphabet(p, c)), c);
    wcets.push_back(ex.wcet);
    explicit_states.push_back(ex.states_explored);
    abstract_states.push_back(ab.states_explored);
    for (const auto& run : language_sequences(p, kDefaultMaxLen)) {
      std::string cls = classification_string(simulate(c, {}, run));
      std::string expected;
      for (int k = 0; k < 5; ++k) expected += "MHMM";
      if (cls != expected) pattern_ok = false;
    }
    if (ab.wcet != ex.wcet) agree = false;
    if (n >= 2 && ab.states_explored >= ex.states_explored) fewer = false;
  }
  bool constant = std::all_of(wcets.begin(), wcets.end(), [&](Cycles w) { return w == wcets.front(); });
  // At most linear: every increment bounded by the first increment, or flat.
  bool linear = true;
  std::size_t step = abstract_states.size() > 1 && abstract_states[1] > abstract_states[0]
                         ? abstract_states[1] - abstract_states[0]
                         : 0;
  for (std::size_t i = 1; i < abstract_states.size(); ++i) {
    if (abstract_states[i] > abstract_states[i - 1] + step) linear = false;
  }
  double secs = seconds_since(start);
  std::ostringstream d;
  d << "wcet " << wcets.front() << (constant ? " constant" : " varies") << ", states explicit "
    << explicit_states.front() << ".." << explicit_states.back() << " abstract " << abstract_states.front() << ".."
    << abstract_states.back() << ", pattern " << (pattern_ok ? "ok" : "bad") << ", " << secs << " s";
  return {constant && pattern_ok && agree && fewer && linear && secs < 10.0, d.str()};
}

Outcome oracle_equivalence() {
  std::mt19937 rng(20261015);
  constexpr int kPrograms = 250;
  int agree = 0;
  auto start = Clock::now();
  for (int i = 0; i < kPrograms; ++i) {
    auto rp = oracle::random_program(rng);
    CacheConfig c = config(rp.timing.capacity, rp.timing.line_size, rp.timing.hit, rp.timing.miss);
    RefinementOptions opts;
    opts.max_iters = kIterationBudget;
    try {
      auto r = run_refinement(rp.program, c, rp.program.durations(), opts);
      if (r.wcet == oracle::wcet_some_state(rp.program, rp.timing)) ++agree;
      g_runs.push_back({std::move(rp), std::move(r)});
    } catch (const IterationBudgetExceeded&) {
      ++g_budget_failures;
    }
  }
  g_refine_seconds = seconds_since(start);
  std::ostringstream d;
  d << agree << "/" << kPrograms << " agree, " << g_refine_seconds << " s";
  return {agree == kPrograms && g_refine_seconds < 60.0, d.str()};
}

Outcome soundness_sampling() {
  std::mt19937 rng(7);
  std::size_t cores = 0, samples = 0, bad = 0;
  for (const auto& run : g_runs) {
    CacheConfig c = config(run.rp.timing.capacity, run.rp.timing.line_size);
    Alphabet sigma = program_alphabet(run.rp.program, c);
    std::vector<AccessSymbol> symbols;
    for (Line l : sigma.lines()) {
      symbols.push_back({l, M});
      symbols.push_back({l, H});
    }
    for (const auto& it : run.result.log) {
      if (!it.core) continue;
      ++cores;
      ClassifierAutomaton o = build_o_t(*it.core, sigma);
      for (int s = 0; s < 50; ++s) {
        std::vector<AccessSymbol> word;
        auto pad = [&] {
          int len = std::uniform_int_distribution<int>(0, 3)(rng);
          for (int k = 0; k < len; ++k) {
            word.push_back(symbols[std::uniform_int_distribution<std::size_t>(0, symbols.size() - 1)(rng)]);
          }
        };
        pad();
        for (const auto& a : *it.core) word.push_back({a.line, a.cls});
        pad();
        ++samples;
        std::vector<Line> lines;
        std::string cls;
        for (const auto& a : word) {
          lines.push_back(a.line);
          cls += a.cls == H ? 'H' : 'M';
        }
        if (!o.accepts(word) || oracle::feasible_some_state(lines, cls, c.capacity, true)) ++bad;
      }
    }
  }
  std::ostringstream d;
  d << samples << " members of " << cores << " languages, " << bad << " feasible or rejected";
  return {bad == 0 && samples > 0, d.str()};
}

Outcome monotonicity() {
  std::size_t violations = 0, logs = 0;
  for (const auto& run : g_runs) {
    ++logs;
    const auto& log = run.result.log;
    for (std::size_t i = 1; i < log.size(); ++i) {
      if (log[i].wcet > log[i - 1].wcet) ++violations;
    }
    if (log.size() > kIterationBudget || !log.back().verdict.feasible) ++violations;
  }
  std::ostringstream d;
  d << logs << " logs, " << violations << " violations, " << g_budget_failures << " over budget";
  return {violations == 0 && g_budget_failures == 0 && logs > 0, d.str()};
}

Outcome feasibility_suite() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t cap = 1; cap <= 3; ++cap) {
    if (is_feasible_from_some_state(trace({{4, M}, {4, M}}), config(cap)).feasible) ok = false;
    if (!is_feasible_from_some_state(trace({{4, H}}), config(cap)).feasible) ok = false;
  }
  if (!is_feasible_from(trace({{1, M}, {2, M}, {3, M}, {1, H}}), {}, config(3)).feasible) ok = false;
  d << "basic " << (ok ? "ok" : "bad");

  // Core minimality against exhaustive infix re-check.
  std::mt19937 rng(11);
  std::size_t checked = 0, wrong = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t cap = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    ClassifiedTrace t(std::uniform_int_distribution<std::size_t>(1, 7)(rng));
    for (auto& a : t) {
      Line l = std::uniform_int_distribution<Line>(1, 4)(rng);
      a = {l, l, std::uniform_int_distribution<int>(0, 1)(rng) ? M : H};
    }
    if (oracle::feasible_some_state(t, cap)) continue;
    ++checked;
    ClassifiedTrace core = infeasible_core(t, config(cap));
    if (core != oracle::minimal_core(t, cap)) ++wrong;
  }
  d << ", " << checked << " cores, " << wrong << " not minimal";
  return {ok && wrong == 0 && checked > 0, d.str()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("wcet_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto sweep = [&](const std::string& name) {
    std::ostringstream out, err;
    std::string path = (dir / name).string();
    int rc = cli::run({"sweep", "--m", "5", "--n-from", "1", "--n-to", "10", "--refine", "--jobs", "4", "--out", path},
                      out, err);
    std::ifstream f(path, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return std::make_pair(rc, s.str());
  };
  auto a = sweep("first.txt");
  auto b = sweep("second.txt");
  fs::remove_all(dir);
  bool ok = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
  return {ok, std::to_string(a.second.size()) + " bytes, " + (a.second == b.second ? "identical" : "different")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 worked example classifications", worked_example},
      {"2 eviction order", eviction_example},
      {"3 trace timing", timing_example},
      {"4 loop/switch sweep structure", table_structure},
      {"5 refinement matches brute force", oracle_equivalence},
      {"6 removed languages are infeasible", soundness_sampling},
      {"7 refinement monotone and bounded", monotonicity},
      {"8 feasibility checks and minimal cores", feasibility_suite},
      {"9 sweep output is deterministic", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
