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

#ifndef CARE_PATTERN_H_
#define CARE_PATTERN_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "care/lexicon.h"
#include "care/taxonomy.h"
#include "care/text.h"

namespace care {

// One element of a compiled pattern.
struct Slot {
  enum class Kind : uint8_t {
    kAnchor,       // ^ : match must start at the first token
    kLiteral,      // {alt|alt ...} with an optional ? or * suffix
    kExaggerator,  // E* or E+
    kIndicator,    // I+ : 1..3 tokens resolved through the lexicon
  };

  Kind kind = Kind::kLiteral;
  // Literal alternatives, each a token sequence ("what a" -> {what, a}).
  std::vector<std::vector<std::string>> alternatives;
  bool optional = false;
  // Minimum number of exaggerators (0 for E*, 1 for E+).
  int min_count = 0;

  friend bool operator==(const Slot &, const Slot &) = default;
};

// A compiled pattern. Shape: [^] {literal}... [E*|E+] I+ , with the
// indicator always last.
struct CarePattern {
  std::string name;
  std::vector<Slot> slots;

  bool anchored() const {
    return !slots.empty() && slots.front().kind == Slot::Kind::kAnchor;
  }

  friend bool operator==(const CarePattern &, const CarePattern &) = default;
};

// Parses pattern definitions, one per line:
//
//   demonstrative: {this|that|those|these} {is|are}? E* I+
//   leading-exaggerators: ^ E+ I+
//
// `#` starts a comment. Throws ParseError carrying the line number and the
// column of the offending slot.
std::vector<CarePattern> ParsePatternDsl(std::string_view source);
std::vector<CarePattern> LoadPatterns(const std::string &path);

// Renders a pattern back to a DSL line that parses to an equal pattern.
std::string FormatPattern(const CarePattern &pattern);

// One comment-level extraction.
struct MatchRecord {
  std::string comment_id;
  std::string pattern_name;
  std::vector<std::string> exaggerators;
  std::vector<std::string> indicator;
  ClassSet classes;
  int sentence_index = 0;

  std::string IndicatorText() const;

  friend bool operator==(const MatchRecord &, const MatchRecord &) = default;
};

struct MatcherOptions {
  // Tokens allowed between the last literal slot and the exaggerator or
  // indicator slot ("He is the cutest").
  int max_gap = 2;
};

// Everything extracted from one comment.
struct CommentLabel {
  ClassSet classes;
  std::vector<MatchRecord> matches;
};

// Compiled patterns plus lexicon and word lists. Immutable after
// construction and safe to share between threads.
class Matcher {
 public:
  Matcher(std::vector<CarePattern> patterns, Lexicon lexicon, WordLists words,
          MatcherOptions options = {});

  // Matches every pattern against one preprocessed sentence. A sentence
  // containing a negation token yields nothing; each (pattern, indicator)
  // pair is reported at most once.
  std::vector<MatchRecord> MatchSentence(const PreprocessedSentence &sentence,
                                         int sentence_index = 0,
                                         std::string_view comment_id = {}) const;

  // Preprocesses and matches a whole comment. `classes` is the union over
  // all match records.
  CommentLabel LabelComment(std::string_view comment_id, std::string_view text) const;

  std::vector<PreprocessedSentence> Preprocess(std::string_view text) const {
    return preprocessor_.Process(text);
  }

  const std::vector<CarePattern> &patterns() const { return patterns_; }
  const Lexicon &lexicon() const { return lexicon_; }
  const WordLists &words() const { return words_; }
  const MatcherOptions &options() const { return options_; }
  bool HasPattern(std::string_view name) const;

 private:
  // Tries pattern `p` starting at token `start`; on success fills `out`.
  bool MatchAt(const CarePattern &p, std::span<const std::string> tokens,
               size_t start, MatchRecord *out) const;
  bool MatchSlots(const CarePattern &p, size_t slot, std::span<const std::string> tokens,
                  size_t pos, MatchRecord *out) const;
  bool MatchTail(const CarePattern &p, size_t slot, std::span<const std::string> tokens,
                 size_t pos, MatchRecord *out) const;

  std::vector<CarePattern> patterns_;
  Lexicon lexicon_;
  WordLists words_;
  MatcherOptions options_;
  Preprocessor preprocessor_;

  // Patterns by the tokens they can start on.
  std::unordered_map<std::string, std::vector<int>, StringHash, std::equal_to<>>
      first_token_index_;
  std::vector<int> anchored_;   // patterns tried at position 0 only
};

struct InstantiationCount {
  uint64_t expressions = 0;     // patterns x indicators
  uint64_t instantiations = 0;  // patterns x indicators x exaggerators

  friend bool operator==(const InstantiationCount &, const InstantiationCount &) = default;
};

InstantiationCount CountInstantiations(uint64_t patterns, uint64_t indicators,
                                       uint64_t exaggerators);

}  // namespace care

#endif  // CARE_PATTERN_H_
