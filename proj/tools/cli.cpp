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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"
#include "wcet/automaton.hpp"
#include "wcet/cache.hpp"
#include "wcet/errors.hpp"
#include "wcet/explorer.hpp"
#include "wcet/program.hpp"
#include "wcet/refinement.hpp"
#include "wcet/timing.hpp"

namespace wcet::cli {

namespace {

struct Options {
  std::size_t capacity = 2;
  Line line_size = 1;
  Cycles hit = 2;
  Cycles miss = 20;
  std::string policy = "promote";
  std::string init;
  std::string pattern;
  std::string model;
  std::size_t max_len = kDefaultMaxLen;
  std::size_t max_iters = 10000;
  unsigned jobs = 1;
  std::string out;

  std::string input;  // program or trace file
  std::string pcs;
  std::vector<std::string> durations;
  int m = 5;
  int n = 1;
  int n_from = 1;
  int n_to = 10;
  bool refine = false;
};

CacheConfig cache_config(const Options& o) {
  CacheConfig c;
  c.capacity = o.capacity;
  c.line_size = o.line_size;
  c.hit_time = o.hit;
  c.miss_time = o.miss;
  c.policy = o.policy == "fifo" ? ReplacementPolicy::PureFifo : ReplacementPolicy::PromoteOnHit;
  c.validate();
  return c;
}

std::string describe(const CacheConfig& c) {
  std::ostringstream s;
  s << "capacity=" << c.capacity << " line_size=" << c.line_size << " hit=" << c.hit_time
    << " miss=" << c.miss_time << " policy=" << (c.policy == ReplacementPolicy::PureFifo ? "fifo" : "promote");
  return s.str();
}

// "empty" | "unknown" | "state=<l1,l2,...>"; nullopt means unknown.
std::optional<CacheState> parse_init(const std::string& text, const std::string& fallback) {
  const std::string& spec = text.empty() ? fallback : text;
  if (spec == "empty") return CacheState{};
  if (spec == "unknown") return std::nullopt;
  if (spec.rfind("state=", 0) == 0) {
    CacheState s;
    std::stringstream in(spec.substr(6));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      try {
        std::size_t used = 0;
        s.lines.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ValidationError("bad line '" + tok + "' in --init");
      }
    }
    return s;
  }
  throw ValidationError("--init must be empty, unknown or state=<lines>");
}

std::string init_name(const std::optional<CacheState>& s) { return s ? format_state(*s) : "unknown"; }

DurationTable parse_durations(const std::vector<std::string>& specs) {
  DurationTable out;
  for (const std::string& spec : specs) {
    auto eq = spec.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(spec);
      out[std::stoll(spec.substr(0, eq))] = std::stoll(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw ValidationError("--dur expects <pc>=<cycles>, got '" + spec + "'");
    }
  }
  return out;
}

std::vector<Pc> parse_pcs(const std::string& text) {
  std::vector<Pc> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size() || out.back() <= 0) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("bad pc '" + tok + "' in --pcs");
    }
  }
  return out;
}

void write_report(const Options& o, const Report& report) {
  if (o.out.empty()) return;
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + o.out + "'");
  f << report.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void add_config_fields(Report& r, const CacheConfig& c) {
  r.field("capacity", c.capacity)
      .field("line_size", c.line_size)
      .field("hit", c.hit_time)
      .field("miss", c.miss_time)
      .field("policy", c.policy == ReplacementPolicy::PureFifo ? "fifo" : "promote");
}

void print_iterations(std::ostream& out, const RefinementLog& log) {
  out << "iter      wcet   len  feasible  model-states  core\n";
  for (const auto& it : log) {
    out << std::setw(4) << it.index << std::setw(10) << it.wcet << std::setw(6) << it.witness.size()
        << std::setw(10) << (it.verdict.feasible ? "yes" : "no") << std::setw(14) << it.automaton_size << "  "
        << (it.core ? format_trace(*it.core) : "-") << (it.prefix_core ? " (prefix)" : "") << '\n';
  }
}

void add_iterations(Report& r, const RefinementLog& log) {
  for (const auto& it : log) {
    r.record("iteration")
        .field("index", it.index)
        .field("wcet", it.wcet)
        .field("witness_length", it.witness.size())
        .field("feasible", it.verdict.feasible ? "true" : "false")
        .field("core", it.core ? format_trace(*it.core) : "-")
        .field("core_kind", !it.core ? "-" : it.prefix_core ? "prefix" : "infix")
        .field("automaton_states", it.automaton_size)
        .field("states_explored", it.states_explored);
  }
}

enum class Mode { Explicit, Abstract, Refine };

int cmd_wcet(Mode mode, const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Program program = load_program(o.input);
  CacheConfig config = cache_config(o);

  Report report;
  report.record("analysis").field("program", program.name());
  add_config_fields(report, config);

  Cycles wcet = 0;
  ClassifiedTrace witness;
  std::size_t states = 0;
  std::string mode_name;
  std::optional<RefinementLog> log;

  if (mode == Mode::Explicit) {
    auto init = parse_init(o.init, "empty");
    if (!init) throw ValidationError("explicit mode needs a concrete initial cache (--init empty|state=...)");
    auto r = explore_explicit(program, config, *init, program.durations(), o.max_len);
    mode_name = "explicit";
    report.field("mode", mode_name).field("init", init_name(init));
    wcet = r.wcet;
    witness = r.witness;
    states = r.states_explored;
  } else if (mode == Mode::Abstract) {
    if (o.pattern.empty() == o.model.empty()) throw ValidationError("abstract mode needs exactly one of --pattern, --model");
    Alphabet sigma = program_alphabet(program, config);
    ClassifierAutomaton model = o.pattern.empty() ? load_automaton(o.model, sigma) : from_pattern(o.pattern, sigma);
    auto r = explore_abstract(program, model, config, program.durations(), o.max_len);
    mode_name = "abstract";
    report.field("mode", mode_name);
    if (o.pattern.empty()) {
      report.field("model", o.model);
    } else {
      report.field("pattern", o.pattern);
    }
    report.field("model_states", model.num_states());
    wcet = r.wcet;
    witness = r.witness;
    states = r.states_explored;
  } else {
    RefinementOptions opts;
    opts.initial_state = parse_init(o.init, "unknown");
    opts.max_iters = o.max_iters;
    opts.max_len = o.max_len;
    try {
      auto r = run_refinement(program, config, program.durations(), opts);
      mode_name = "refine";
      report.field("mode", mode_name).field("init", init_name(opts.initial_state));
      wcet = r.wcet;
      witness = r.witness;
      states = r.log.back().states_explored;
      log = r.log;
      report.field("iterations", r.log.size()).field("final_model_states", r.model.num_states());
      if (r.log.back().verdict.witness_initial_state) {
        report.field("witness_initial_state", format_state(*r.log.back().verdict.witness_initial_state));
      }
    } catch (const IterationBudgetExceeded& e) {
      print_iterations(out, e.log());
      throw;
    }
  }

  report.field("wcet", wcet)
      .field("states_explored", states)
      .field("witness_length", witness.size())
      .field("witness", format_trace(witness));
  if (log) add_iterations(report, *log);

  out << "program         " << program.name() << '\n'
      << "mode            " << mode_name << '\n'
      << "cache           " << describe(config) << '\n'
      << "WCET            " << wcet << " cycles\n"
      << "states explored " << states << '\n'
      << "witness         " << format_trace(witness) << '\n';
  if (log) {
    out << "iterations      " << log->size() << '\n';
    print_iterations(out, *log);
  }
  out << "elapsed         " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
  write_report(o, report);
  return kOk;
}

int cmd_example(const Options& o, std::ostream& out) {
  RunningExampleParams params{o.m, o.n, parse_durations(o.durations)};
  std::string text = serialize_program(running_example(params));
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("cannot write '" + o.out + "'");
    f << text;
    out << "wrote " << o.out << '\n';
  }
  return kOk;
}

struct SweepRow {
  int n = 0;
  ExplorationResult explicit_result;
  ExplorationResult abstract_result;
  std::optional<RefinementResult> refined;
};

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.n_from < 0 || o.n_to < o.n_from) throw ValidationError("sweep needs 0 <= --n-from <= --n-to");
  const auto start = std::chrono::steady_clock::now();
  CacheConfig config = cache_config(o);
  DurationTable overrides = parse_durations(o.durations);
  const std::string pattern = o.pattern.empty() ? "(M.H.M.M)*" : o.pattern;

  auto compute = [&](int n) {
    SweepRow row;
    row.n = n;
    Program p = running_example({o.m, n, overrides});
    row.explicit_result = explore_explicit(p, config, {}, p.durations(), o.max_len);
    row.abstract_result =
        explore_abstract(p, from_pattern(pattern, program_alphabet(p, config)), config, p.durations(), o.max_len);
    if (o.refine) {
      RefinementOptions opts;
      opts.max_iters = o.max_iters;
      opts.max_len = o.max_len;
      row.refined = run_refinement(p, config, p.durations(), opts);
    }
    return row;
  };

  std::vector<SweepRow> rows;
  const unsigned jobs = std::max(1u, o.jobs);
  for (int n = o.n_from; n <= o.n_to;) {
    std::vector<std::future<SweepRow>> batch;
    for (unsigned j = 0; j < jobs && n <= o.n_to; ++j, ++n) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, compute, n));
    }
    for (auto& f : batch) rows.push_back(f.get());
  }

  Report report;
  report.record("sweep").field("iterations_m", o.m).field("n_from", o.n_from).field("n_to", o.n_to);
  add_config_fields(report, config);
  report.field("pattern", pattern);

  out << "   N | states explored (explicit) | states explored (small model) |  WCET";
  if (o.refine) out << " | WCET (refined) | iterations";
  out << '\n';
  for (const SweepRow& r : rows) {
    out << std::setw(4) << r.n << " | " << std::setw(26) << r.explicit_result.states_explored << " | "
        << std::setw(29) << r.abstract_result.states_explored << " | " << std::setw(5) << r.explicit_result.wcet;
    if (r.refined) out << " | " << std::setw(14) << r.refined->wcet << " | " << std::setw(10) << r.refined->log.size();
    out << '\n';

    report.record("row")
        .field("n", r.n)
        .field("explicit_states", r.explicit_result.states_explored)
        .field("abstract_states", r.abstract_result.states_explored)
        .field("wcet_explicit", r.explicit_result.wcet)
        .field("wcet_abstract", r.abstract_result.wcet)
        .field("classification_pattern", classification_string(r.explicit_result.witness));
    if (r.refined) report.field("wcet_refined", r.refined->wcet).field("refine_iterations", r.refined->log.size());
  }
  out << "elapsed " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
  write_report(o, report);
  return kOk;
}

int cmd_simulate(const Options& o, bool have_pcs, std::ostream& out) {
  if (have_pcs == !o.input.empty()) throw ValidationError("simulate needs exactly one of a program file or --pcs");
  CacheConfig config = cache_config(o);
  auto init = parse_init(o.init, "empty");
  if (!init) throw ValidationError("simulate needs a concrete initial cache (--init empty|state=...)");
  if (!is_valid_state(*init, config)) throw ValidationError("initial cache " + format_state(*init) + " is invalid");

  std::vector<std::vector<Pc>> runs;
  DurationTable durations;
  if (have_pcs) {
    runs.push_back(parse_pcs(o.pcs));
    for (Pc pc : runs.back()) durations[pc] = 1;
    for (const auto& [pc, d] : parse_durations(o.durations)) durations[pc] = d;
  } else {
    Program p = load_program(o.input);
    runs = language_sequences(p, o.max_len);
    durations = p.durations();
  }

  Report report;
  std::size_t index = 0;
  for (const auto& run : runs) {
    if (runs.size() > 1) out << "run " << index << '\n';
    out << "step     pc   line  cls  cycles   clock  cache\n";
    CacheState state = *init;
    ClassifiedTrace trace;
    Cycles clock = 0;
    for (std::size_t i = 0; i < run.size(); ++i) {
      Line line = line_of(run[i], config);
      Classification cls = touch(state, line, config);
      trace.push_back({run[i], line, cls});
      Cycles cost = step_cost(run[i], cls, durations, config).total();
      clock += cost;
      out << std::setw(4) << i + 1 << std::setw(7) << run[i] << std::setw(7) << line << std::setw(5) << to_char(cls)
          << std::setw(8) << cost << std::setw(8) << clock << "  " << format_state(state) << '\n';
    }
    out << "classifications " << classification_string(trace) << '\n'
        << "final cache     " << format_state(state) << '\n'
        << "time            " << clock << " cycles\n";
    report.record("simulation")
        .field("run", index)
        .field("trace", format_trace(trace))
        .field("time", clock)
        .field("final_cache", format_state(state));
    ++index;
  }
  write_report(o, report);
  return kOk;
}

int cmd_feasibility(const Options& o, std::ostream& out) {
  CacheConfig config = cache_config(o);
  ClassifiedTrace trace = load_trace(o.input, config);
  auto init = parse_init(o.init, "unknown");

  FeasibilityVerdict v = init ? is_feasible_from(trace, *init, config) : is_feasible_from_some_state(trace, config);
  Report report;
  report.record("feasibility").field("trace", format_trace(trace)).field("init", init_name(init));
  report.field("feasible", v.feasible ? "true" : "false");
  out << "trace    " << format_trace(trace) << '\n' << "cache    " << describe(config) << '\n';
  if (v.feasible) {
    out << "verdict  feasible\n"
        << "initial  " << format_state(*v.witness_initial_state) << '\n';
    report.field("initial_state", format_state(*v.witness_initial_state));
  } else {
    ClassifiedTrace core = init ? infeasible_prefix(trace, *init, config) : infeasible_core(trace, config);
    out << "verdict  infeasible\n"
        << (init ? "prefix   " : "core     ") << format_trace(core) << '\n';
    report.field(init ? "infeasible_prefix" : "core", format_trace(core));
  }
  write_report(o, report);
  return kOk;
}

void add_cache_options(CLI::App* sub, Options& o) {
  sub->add_option("--capacity", o.capacity, "Cache lines")->capture_default_str();
  sub->add_option("--line-size", o.line_size, "Instructions per cache line")->capture_default_str();
  sub->add_option("--hit", o.hit, "Cycles for a cache hit")->capture_default_str();
  sub->add_option("--miss", o.miss, "Cycles for a cache miss")->capture_default_str();
  sub->add_option("--policy", o.policy, "Replacement policy")
      ->check(CLI::IsMember({"promote", "fifo"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"WCET analysis of cache-sensitive programs by explicit exploration and trace abstraction refinement"};
  app.name("wcet");
  app.require_subcommand(1);

  auto add_wcet = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("program", o.input, "Program file")->required();
    add_cache_options(sub, o);
    sub->add_option("--max-len", o.max_len, "Longest admissible run")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--out", o.out, "Machine-readable report file");
    return sub;
  };
  CLI::App* explicit_cmd = add_wcet("explicit", "WCET over the concrete cache");
  explicit_cmd->add_option("--init", o.init, "Initial cache: empty | state=<lines>");
  CLI::App* abstract_cmd = add_wcet("abstract", "WCET over an abstract cache model");
  abstract_cmd->add_option("--pattern", o.pattern, "Classification pattern, e.g. \"(M.H.M.M)*\"");
  abstract_cmd->add_option("--model", o.model, "Abstract cache automaton file");
  CLI::App* refine_cmd = add_wcet("refine", "WCET by trace abstraction refinement");
  refine_cmd->add_option("--init", o.init, "Initial cache: unknown | empty | state=<lines>");
  refine_cmd->add_option("--max-iters", o.max_iters, "Refinement iteration budget")->capture_default_str();

  CLI::App* example_cmd = app.add_subcommand("example", "Write the parametric loop/switch example program");
  example_cmd->add_option("--m", o.m, "Loop iterations M")->capture_default_str();
  example_cmd->add_option("--n", o.n, "Switch branches N")->capture_default_str();
  example_cmd->add_option("--dur", o.durations, "Duration override <pc>=<cycles>");
  example_cmd->add_option("--out", o.out, "Output file (stdout if omitted)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "States explored and WCET of the example over a range of N");
  sweep_cmd->add_option("--m", o.m, "Loop iterations M")->capture_default_str();
  sweep_cmd->add_option("--n-from", o.n_from, "First N")->capture_default_str();
  sweep_cmd->add_option("--n-to", o.n_to, "Last N")->capture_default_str();
  sweep_cmd->add_option("--pattern", o.pattern, "Small cache model pattern (default (M.H.M.M)*)");
  sweep_cmd->add_flag("--refine", o.refine, "Also run trace abstraction refinement");
  sweep_cmd->add_option("--dur", o.durations, "Duration override <pc>=<cycles>");
  sweep_cmd->add_option("--max-len", o.max_len, "Longest admissible run")->capture_default_str();
  sweep_cmd->add_option("--max-iters", o.max_iters, "Refinement iteration budget")->capture_default_str();
  sweep_cmd->add_option("--jobs", o.jobs, "Rows computed in parallel")->capture_default_str();
  sweep_cmd->add_option("--out", o.out, "Machine-readable report file");
  add_cache_options(sweep_cmd, o);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Classify and time a pc sequence or every run of a program");
  simulate_cmd->add_option("program", o.input, "Program file");
  CLI::Option* pcs_opt = simulate_cmd->add_option("--pcs", o.pcs, "Comma-separated pcs");
  simulate_cmd->add_option("--init", o.init, "Initial cache: empty | state=<lines>");
  simulate_cmd->add_option("--dur", o.durations, "Duration override <pc>=<cycles> (with --pcs)");
  simulate_cmd->add_option("--max-len", o.max_len, "Longest admissible run")->capture_default_str();
  simulate_cmd->add_option("--out", o.out, "Machine-readable report file");
  add_cache_options(simulate_cmd, o);

  CLI::App* feasibility_cmd = app.add_subcommand("feasibility", "Check whether a classified trace is feasible");
  feasibility_cmd->add_option("trace", o.input, "Trace file (pc=<int> cls=<H|M> per line)")->required();
  feasibility_cmd->add_option("--init", o.init, "Initial cache: unknown | empty | state=<lines>");
  feasibility_cmd->add_option("--out", o.out, "Machine-readable report file");
  add_cache_options(feasibility_cmd, o);

  std::vector<std::string> argv_store{"wcet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (explicit_cmd->parsed()) return cmd_wcet(Mode::Explicit, o, out);
    if (abstract_cmd->parsed()) return cmd_wcet(Mode::Abstract, o, out);
    if (refine_cmd->parsed()) return cmd_wcet(Mode::Refine, o, out);
    if (example_cmd->parsed()) return cmd_example(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, pcs_opt->count() > 0, out);
    if (feasibility_cmd->parsed()) return cmd_feasibility(o, out);
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBoundExceeded;
  } catch (const IterationBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kIterationBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace wcet::cli
