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

#ifndef CARE_STRINGS_H_
#define CARE_STRINGS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace care {

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> Split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(std::span<const std::string> parts, std::string_view sep);

// Number of UTF-8 code points (continuation bytes are not counted).
size_t Utf8Length(std::string_view s);

// Reads a whole file. Throws IoError.
std::string ReadFile(const std::string &path);

// Reads a file as lines with trailing '\r' removed. Throws IoError.
std::vector<std::string> ReadLines(const std::string &path);

// Writes `contents` to a sibling temporary file and renames it over `path`,
// so readers never observe a truncated file. Throws IoError.
void WriteFileAtomically(const std::string &path, std::string_view contents);

}  // namespace care

#endif  // CARE_STRINGS_H_
