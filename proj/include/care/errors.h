// Copyright 2026 The CARE Annotator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CARE_ERRORS_H_
#define CARE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace care {

// Malformed input text (TSV rows, DSL lines, JSONL records). Carries the
// 1-based line number when one is known, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace care

#endif  // CARE_ERRORS_H_
