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

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <tuple>

#include "text_util.hpp"
#include "wcet/errors.hpp"
#include "wcet/program.hpp"

namespace wcet {

Program parse_program(std::istream& in) {
  bool have_name = false;
  bool have_entry = false;
  bool have_end = false;
  std::string name = "program";
  std::string text;
  std::size_t line_no = 0;

  // Directives are collected first so that `program` may appear anywhere.
  struct PendingEdge {
    std::string from, to;
    Pc pc;
    std::size_t line_no;
  };
  std::vector<PendingEdge> edges;
  std::vector<std::tuple<Pc, Cycles, std::size_t>> instrs;
  std::string entry, end;

  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::tokenize(text);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    if (kw == "program") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'program <name>'");
      if (have_name) throw ParseError(line_no, "duplicate 'program' directive");
      name = tokens[1];
      have_name = true;
    } else if (kw == "entry" || kw == "end") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected '" + kw + " <loc>'");
      bool& seen = kw == "entry" ? have_entry : have_end;
      if (seen) throw ParseError(line_no, "duplicate '" + kw + "' directive");
      seen = true;
      (kw == "entry" ? entry : end) = tokens[1];
    } else if (kw == "instr") {
      std::optional<Pc> pc;
      Cycles dur = 1;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = detail::split_key_value(tokens[i], line_no);
        if (key == "pc" && !pc) {
          pc = detail::parse_int(value, line_no);
        } else if (key == "dur") {
          dur = detail::parse_int(value, line_no);
        } else {
          throw ParseError(line_no, "unexpected field '" + tokens[i] + "' in instr");
        }
      }
      if (!pc) throw ParseError(line_no, "instr without pc=");
      instrs.emplace_back(*pc, dur, line_no);
    } else if (kw == "edge") {
      if (tokens.size() != 4) throw ParseError(line_no, "expected 'edge <from> <to> pc=<int>'");
      auto [key, value] = detail::split_key_value(tokens[3], line_no);
      if (key != "pc") throw ParseError(line_no, "expected pc=<int>, got '" + tokens[3] + "'");
      edges.push_back({tokens[1], tokens[2], detail::parse_int(value, line_no), line_no});
    } else {
      throw ParseError(line_no, "unknown directive '" + kw + "'");
    }
  }

  if (!have_entry) throw ValidationError("program has no entry location");
  if (!have_end) throw ValidationError("program has no end location");

  ProgramBuilder builder(name);
  builder.entry(entry);
  builder.end(end);
  for (const auto& [pc, dur, no] : instrs) builder.instruction(pc, dur);
  for (const PendingEdge& e : edges) builder.edge(e.from, e.to, e.pc);
  return builder.build();
}

Program parse_program_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_program(in);
}

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open program file '" + path + "'");
  return parse_program(in);
}

std::string serialize_program(const Program& program) {
  std::ostringstream out;
  out << "program " << program.name() << '\n';
  out << "entry " << program.location_name(program.entry()) << '\n';
  out << "end " << program.location_name(program.end()) << '\n';
  for (const auto& [pc, dur] : program.durations()) out << "instr pc=" << pc << " dur=" << dur << '\n';

  std::vector<std::tuple<const std::string*, Pc, const std::string*>> rows;
  for (const Edge& e : program.edges()) {
    rows.emplace_back(&program.location_name(e.from), e.pc, &program.location_name(e.to));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(*std::get<0>(a), std::get<1>(a), *std::get<2>(a)) <
           std::tie(*std::get<0>(b), std::get<1>(b), *std::get<2>(b));
  });
  for (const auto& [from, pc, to] : rows) out << "edge " << *from << ' ' << *to << " pc=" << pc << '\n';
  return out.str();
}

}  // namespace wcet
