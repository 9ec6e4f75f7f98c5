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

#ifndef CARE_LOG_H_
#define CARE_LOG_H_

#include <iostream>
#include <sstream>
#include <string_view>

namespace care {

enum class LogLevel { kError = 0, kWarning = 1, kInfo = 2, kDebug = 3 };

// Verbosity from the CARE_LOG environment variable (error, warn, info,
// debug); info when unset or unrecognized.
LogLevel CurrentLogLevel();

// Streams one line to stderr on destruction if `level` is enabled.
class LogMessage {
 public:
  explicit LogMessage(LogLevel level);
  ~LogMessage();
  template <typename T>
  LogMessage &operator<<(const T &value) {
    if (enabled_) stream_ << value;
    return *this;
  }

 private:
  bool enabled_;
  std::ostringstream stream_;
};

}  // namespace care

#define CARE_LOG(level) ::care::LogMessage(::care::LogLevel::k##level)

#endif  // CARE_LOG_H_
