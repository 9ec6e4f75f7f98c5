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

#include "care/log.h"

#include <cstdlib>
#include <string>

#include "care/strings.h"

namespace care {

LogLevel CurrentLogLevel() {
  static const LogLevel level = [] {
    const char *env = std::getenv("CARE_LOG");
    if (env == nullptr) return LogLevel::kInfo;
    std::string value = ToLower(env);
    if (value == "error") return LogLevel::kError;
    if (value == "warn" || value == "warning") return LogLevel::kWarning;
    if (value == "debug") return LogLevel::kDebug;
    return LogLevel::kInfo;
  }();
  return level;
}

LogMessage::LogMessage(LogLevel level) : enabled_(level <= CurrentLogLevel()) {
  if (!enabled_) return;
  static constexpr std::string_view kTags[] = {"E", "W", "I", "D"};
  stream_ << kTags[static_cast<int>(level)] << " care: ";
}

LogMessage::~LogMessage() {
  if (enabled_) {
    stream_ << '\n';
    std::cerr << stream_.str();
  }
}

}  // namespace care
