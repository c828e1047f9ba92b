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

#ifndef WCET_TOOLS_REPORT_HPP_
#define WCET_TOOLS_REPORT_HPP_

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wcet::cli {

// Machine-readable output: a header line, then records of the form
//
//   [record-type]
//   key = value
//
// separated by blank lines. Keys keep insertion order; nothing
// time-dependent is ever written.
class Report {
 public:
  Report& record(std::string type) {
    records_.push_back({std::move(type), {}});
    return *this;
  }

  template <class T>
  Report& field(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    records_.back().second.emplace_back(key, s.str());
    return *this;
  }

  std::string str() const {
    std::ostringstream out;
    out << "# wcetref report v1\n";
    for (const auto& [type, fields] : records_) {
      out << '\n' << '[' << type << "]\n";
      for (const auto& [k, v] : fields) out << k << " = " << v << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> records_;
};

}  // namespace wcet::cli

#endif  // WCET_TOOLS_REPORT_HPP_
