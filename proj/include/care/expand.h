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

#ifndef CARE_EXPAND_H_
#define CARE_EXPAND_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "care/aggregate.h"
#include "care/corpus.h"
#include "care/lexicon.h"
#include "care/pattern.h"
#include "care/taxonomy.h"

namespace care {

struct ExpansionConfig {
  int64_t f_lexicon = 1000;
  int64_t f_pattern = 100;
  int max_order = 3;  // n-grams of order 1..max_order
  // Count each n-gram at most once per comment instead of per occurrence.
  bool count_distinct_comments = false;

  // Requires f_lexicon > f_pattern > 0 and 1 <= max_order <= 3.
  void Validate() const;
};

using NgramCounts = std::unordered_map<std::string, int64_t, StringHash, std::equal_to<>>;

// Per-class n-gram frequencies over comm(class): comments on posts labeled
// with the class that matched no pattern. N-gram keys are space-joined
// tokens and never cross a sentence boundary.
struct NgramStats {
  std::array<NgramCounts, kNumClasses> per_class;

  const NgramCounts &of(AffectClass c) const { return per_class[static_cast<int>(c)]; }
  NgramCounts &of(AffectClass c) { return per_class[static_cast<int>(c)]; }
  int64_t Frequency(AffectClass c, std::string_view ngram) const;
  bool empty() const;
};

// Adds the 1..max_order grams of `sentence` to `counts`.
void AddNgrams(std::span<const std::string> sentence, int max_order, NgramCounts *counts);

NgramStats CollectNgrams(std::span<const PostAnnotation> labeled_posts, const Corpus &corpus,
                         const Matcher &matcher, const ExpansionConfig &config = {});

struct LexiconCandidate {
  std::string ngram;
  AffectClass affect;
  int64_t frequency = 0;

  friend bool operator==(const LexiconCandidate &, const LexiconCandidate &) = default;
};

struct PatternCandidate {
  std::string ngram;
  int64_t total_frequency = 0;
  ClassSet classes;  // classes in which the n-gram occurs

  friend bool operator==(const PatternCandidate &, const PatternCandidate &) = default;
};

// Function words; n-grams made only of these are never lexicon candidates.
const StringSet &DefaultStopWords();

// An n-gram is proposed for class a when its frequency under a is at least
// f_lexicon and under every other class below f_lexicon. Stop-word-only
// n-grams are dropped. Sorted by frequency (desc), then n-gram.
std::vector<LexiconCandidate> ProposeLexiconCandidates(
    const NgramStats &stats, const ExpansionConfig &config,
    const StringSet &stop_words = DefaultStopWords());

// An n-gram is proposed when it occurs under at least two classes, its
// total frequency is at least f_pattern, and it is not a lexicon candidate.
// Sorted by total frequency (desc), then n-gram.
std::vector<PatternCandidate> ProposePatternCandidates(
    const NgramStats &stats, const ExpansionConfig &config,
    const StringSet &stop_words = DefaultStopWords());

// candidates_lexicon.tsv: ngram<TAB>class<TAB>frequency
std::string SerializeLexiconCandidates(std::span<const LexiconCandidate> candidates);
// candidates_pattern.tsv: ngram<TAB>total_frequency<TAB>class,class...
std::string SerializePatternCandidates(std::span<const PatternCandidate> candidates);

struct ReviewOutcome {
  Lexicon lexicon;
  std::vector<CarePattern> patterns;
  int accepted_lexicon = 0;
  int accepted_patterns = 0;
  int rejected = 0;
};

// Applies a review file:
//
//   accept-lex <ngram tokens...> <class>
//   accept-pat <pattern DSL line>
//   reject <anything>
//
// Accepted indicators get `expansion` provenance. The inputs are not
// modified. Throws ParseError (with the review line number and text) on an
// unknown directive or an unparseable pattern, ValidationError on an
// unknown class or a pattern name that already exists.
ReviewOutcome ApplyReviewedCandidates(const Lexicon &lexicon,
                                      std::span<const CarePattern> patterns,
                                      std::string_view review);

}  // namespace care

#endif  // CARE_EXPAND_H_
