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

#include <fstream>
#include <istream>

#include "text_util.hpp"
#include "wcet/cache.hpp"
#include "wcet/errors.hpp"

namespace wcet {

ClassifiedTrace parse_trace(std::istream& in, const CacheConfig& config) {
  ClassifiedTrace trace;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::tokenize(text);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'pc=<int> cls=<H|M>'");
    std::optional<Pc> pc;
    std::optional<Classification> cls;
    for (const std::string& tok : tokens) {
      auto [key, value] = detail::split_key_value(tok, line_no);
      if (key == "pc" && !pc) {
        pc = detail::parse_int(value, line_no);
      } else if (key == "cls" && !cls && (value == "H" || value == "M")) {
        cls = value == "H" ? Classification::Hit : Classification::Miss;
      } else {
        throw ParseError(line_no, "unexpected field '" + tok + "'");
      }
    }
    if (!pc || !cls) throw ParseError(line_no, "expected 'pc=<int> cls=<H|M>'");
    if (*pc <= 0) throw ParseError(line_no, "pc must be positive");
    trace.push_back({*pc, line_of(*pc, config), *cls});
  }
  return trace;
}

ClassifiedTrace load_trace(const std::string& path, const CacheConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file '" + path + "'");
  return parse_trace(in, config);
}

}  // namespace wcet
