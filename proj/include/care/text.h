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

#ifndef CARE_TEXT_H_
#define CARE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "care/lexicon.h"

namespace care {

// One sentence of a comment after normalization.
struct PreprocessedSentence {
  std::vector<std::string> tokens;
  // Set when a contrast marker was found and everything up to and including
  // the last one was dropped.
  bool truncated = false;

  friend bool operator==(const PreprocessedSentence &,
                         const PreprocessedSentence &) = default;
};

// Collapses every run of three or more identical letters. A run is reduced
// to a single letter unless reducing it to two letters produces a word in
// `vocabulary` ("soooo" -> "so", "cuuute" -> "cute", "gooood" -> "good" when
// "good" is known).
std::string NormalizeElongation(std::string_view token,
                                const StringSet *vocabulary = nullptr);

// Comment text -> sentences of lowercased tokens.
//
// Sentences end at '.', '!', '?', an ellipsis or a newline. Tokens are
// maximal runs of letters, digits, non-ASCII characters and inner
// apostrophes, so "i'm" and "don't" stay whole; typographic apostrophes are
// folded to '\''. Stop words are kept. Sentences that end up empty are
// dropped.
class Preprocessor {
 public:
  explicit Preprocessor(StringSet contrast_markers, StringSet vocabulary = {});

  std::vector<PreprocessedSentence> Process(std::string_view text) const;

  // Tokenizes a single sentence without contrast truncation.
  std::vector<std::string> Tokenize(std::string_view sentence) const;

 private:
  StringSet contrast_markers_;
  StringSet vocabulary_;
};

// Tokens joined by single spaces.
std::string RenderSentence(const PreprocessedSentence &sentence);

}  // namespace care

#endif  // CARE_TEXT_H_
