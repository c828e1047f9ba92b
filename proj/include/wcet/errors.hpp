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

#ifndef WCET_ERRORS_HPP_
#define WCET_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised when a program admits runs longer than the analysis bound, or
/// runs of unbounded length.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownInstruction : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class PatternParseError : public Error {
 public:
  using Error::Error;
};

/// The abstract cache model admits no complete classified run.
class AbstractModelEmpty : public Error {
 public:
  using Error::Error;
};

}  // namespace wcet

#endif  // WCET_ERRORS_HPP_
