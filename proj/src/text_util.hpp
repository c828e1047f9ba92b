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

// Tokenizing helpers shared by the line-oriented file readers.

#ifndef WCET_SRC_TEXT_UTIL_HPP_
#define WCET_SRC_TEXT_UTIL_HPP_

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wcet/errors.hpp"

namespace wcet::detail {

// Whitespace split; everything from '#' on is a comment.
inline std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::int64_t parse_int(std::string_view s, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

inline std::pair<std::string, std::string> split_key_value(const std::string& tok, std::size_t line_no) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace wcet::detail

#endif  // WCET_SRC_TEXT_UTIL_HPP_
