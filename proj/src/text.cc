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

#include "care/text.h"

#include <algorithm>

#include "care/strings.h"

namespace care {
namespace {

// Limit on runs considered when searching for an in-vocabulary spelling.
constexpr int kMaxElongatedRuns = 4;

bool IsAsciiAlnum(unsigned char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
         (ch >= '0' && ch <= '9');
}

bool IsLetter(char ch) {
  return (ch >= 'a' && ch <= 'z') || static_cast<unsigned char>(ch) >= 0x80;
}

char Lower(char ch) {
  return ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch;
}

// A character of the text, classified for tokenization.
enum class CharKind { kToken, kApostrophe, kTerminal, kSeparator };

// Classifies the character starting at text[i] and sets *len to its width
// in bytes.
CharKind Classify(std::string_view text, size_t i, size_t *len) {
  unsigned char ch = static_cast<unsigned char>(text[i]);
  *len = 1;
  if (ch < 0x80) {
    if (IsAsciiAlnum(ch)) return CharKind::kToken;
    if (ch == '\'') return CharKind::kApostrophe;
    if (ch == '.' || ch == '!' || ch == '?' || ch == '\n') return CharKind::kTerminal;
    return CharKind::kSeparator;
  }
  // U+2000..U+206F (general punctuation) is E2 80..81 xx.
  if (ch == 0xE2 && i + 2 < text.size()) {
    unsigned char b1 = static_cast<unsigned char>(text[i + 1]);
    unsigned char b2 = static_cast<unsigned char>(text[i + 2]);
    if (b1 == 0x80 || b1 == 0x81) {
      *len = 3;
      if (b1 == 0x80 && (b2 == 0x98 || b2 == 0x99)) return CharKind::kApostrophe;
      if (b1 == 0x80 && b2 == 0xA6) return CharKind::kTerminal;
      return CharKind::kSeparator;
    }
  }
  if (ch >= 0xC0) {
    if (ch >= 0xF0) *len = 4;
    else if (ch >= 0xE0) *len = 3;
    else *len = 2;
    *len = std::min(*len, text.size() - i);
  }
  return CharKind::kToken;
}

}  // namespace

std::string NormalizeElongation(std::string_view token, const StringSet *vocabulary) {
  struct Run {
    size_t start;
    size_t length;
  };
  std::vector<Run> runs;
  for (size_t i = 0; i < token.size();) {
    size_t j = i + 1;
    while (j < token.size() && token[j] == token[i]) ++j;
    if (j - i >= 3 && IsLetter(token[i]) && static_cast<unsigned char>(token[i]) < 0x80) {
      runs.push_back({i, j - i});
    }
    i = j;
  }
  if (runs.empty()) return std::string(token);

  auto render = [&](unsigned doubled_mask) {
    std::string out;
    size_t pos = 0;
    for (size_t r = 0; r < runs.size(); ++r) {
      out.append(token.substr(pos, runs[r].start - pos));
      bool keep_two = r < kMaxElongatedRuns && (doubled_mask >> r) & 1u;
      out.append(keep_two ? 2 : 1, token[runs[r].start]);
      pos = runs[r].start + runs[r].length;
    }
    out.append(token.substr(pos));
    return out;
  };

  // A known word with a doubled letter ("too", "good") wins over the fully
  // collapsed form.
  std::string collapsed = render(0);
  if (vocabulary == nullptr) return collapsed;
  int considered = std::min<int>(static_cast<int>(runs.size()), kMaxElongatedRuns);
  for (unsigned mask = 1; mask < (1u << considered); ++mask) {
    std::string candidate = render(mask);
    if (vocabulary->contains(candidate)) return candidate;
  }
  return collapsed;
}

Preprocessor::Preprocessor(StringSet contrast_markers, StringSet vocabulary)
    : contrast_markers_(std::move(contrast_markers)),
      vocabulary_(std::move(vocabulary)) {}

std::vector<std::string> Preprocessor::Tokenize(std::string_view sentence) const {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    while (!current.empty() && current.back() == '\'') current.pop_back();
    if (!current.empty()) {
      tokens.push_back(NormalizeElongation(current, &vocabulary_));
      current.clear();
    }
  };
  for (size_t i = 0; i < sentence.size();) {
    size_t len = 1;
    switch (Classify(sentence, i, &len)) {
      case CharKind::kToken:
        if (len == 1) {
          current.push_back(Lower(sentence[i]));
        } else {
          current.append(sentence.substr(i, len));
        }
        break;
      case CharKind::kApostrophe:
        // Only inner apostrophes belong to a token.
        if (!current.empty()) current.push_back('\'');
        break;
      case CharKind::kTerminal:
      case CharKind::kSeparator:
        flush();
        break;
    }
    i += len;
  }
  flush();
  return tokens;
}

std::vector<PreprocessedSentence> Preprocessor::Process(std::string_view text) const {
  std::vector<PreprocessedSentence> sentences;
  size_t start = 0;
  auto emit = [&](size_t end) {
    PreprocessedSentence sentence;
    sentence.tokens = Tokenize(text.substr(start, end - start));
    auto last_marker = std::find_if(
        sentence.tokens.rbegin(), sentence.tokens.rend(),
        [&](const std::string &t) { return contrast_markers_.contains(t); });
    if (last_marker != sentence.tokens.rend()) {
      sentence.tokens.erase(sentence.tokens.begin(), last_marker.base());
      sentence.truncated = true;
    }
    if (!sentence.tokens.empty()) sentences.push_back(std::move(sentence));
  };
  for (size_t i = 0; i < text.size();) {
    size_t len = 1;
    if (Classify(text, i, &len) == CharKind::kTerminal) {
      emit(i);
      start = i + len;
    }
    i += len;
  }
  if (start < text.size()) emit(text.size());
  return sentences;
}

std::string RenderSentence(const PreprocessedSentence &sentence) {
  return Join(sentence.tokens, " ");
}

}  // namespace care
