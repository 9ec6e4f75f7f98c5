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

#include "care/expand.h"

#include <algorithm>
#include <unordered_set>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

bool StopWordsOnly(std::string_view ngram, const StringSet &stop_words) {
  for (std::string_view token : Split(ngram, ' ')) {
    if (!stop_words.contains(token)) return false;
  }
  return true;
}

}  // namespace

void ExpansionConfig::Validate() const {
  if (f_pattern <= 0) throw ValidationError("f_pattern must be positive");
  if (f_lexicon <= f_pattern) throw ValidationError("f_lexicon must exceed f_pattern");
  if (max_order < 1 || max_order > 3) throw ValidationError("max_order must be in 1..3");
}

int64_t NgramStats::Frequency(AffectClass c, std::string_view ngram) const {
  const NgramCounts &counts = of(c);
  auto it = counts.find(ngram);
  return it == counts.end() ? 0 : it->second;
}

bool NgramStats::empty() const {
  return std::all_of(per_class.begin(), per_class.end(),
                     [](const NgramCounts &c) { return c.empty(); });
}

void AddNgrams(std::span<const std::string> sentence, int max_order, NgramCounts *counts) {
  std::string key;
  for (size_t i = 0; i < sentence.size(); ++i) {
    key.clear();
    for (size_t n = 0; n < static_cast<size_t>(max_order) && i + n < sentence.size(); ++n) {
      if (n > 0) key.push_back(' ');
      key += sentence[i + n];
      auto it = counts->find(std::string_view(key));
      if (it == counts->end()) {
        counts->emplace(key, 1);
      } else {
        ++it->second;
      }
    }
  }
}

NgramStats CollectNgrams(std::span<const PostAnnotation> labeled_posts, const Corpus &corpus,
                         const Matcher &matcher, const ExpansionConfig &config) {
  NgramStats stats;
  std::unordered_map<std::string_view, ClassSet> labels_of;
  for (const PostAnnotation &a : labeled_posts) {
    if (!a.labels.Empty()) labels_of[a.post_id] |= a.labels;
  }
  if (labels_of.empty()) return stats;

  NgramCounts comment_counts;
  for (const Comment &c : corpus.comments) {
    auto it = labels_of.find(c.post_id);
    if (it == labels_of.end()) continue;
    std::vector<PreprocessedSentence> sentences = matcher.Preprocess(c.text);
    bool matched = false;
    for (size_t i = 0; i < sentences.size() && !matched; ++i) {
      matched = !matcher.MatchSentence(sentences[i], static_cast<int>(i), c.id).empty();
    }
    if (matched) continue;

    comment_counts.clear();
    for (const PreprocessedSentence &s : sentences) {
      AddNgrams(s.tokens, config.max_order, &comment_counts);
    }
    for (AffectClass a : it->second.ToVector()) {
      NgramCounts &target = stats.of(a);
      for (const auto &[ngram, count] : comment_counts) {
        target[ngram] += config.count_distinct_comments ? 1 : count;
      }
    }
  }
  return stats;
}

const StringSet &DefaultStopWords() {
  static const StringSet kStopWords = {
      "a",     "about", "above", "after", "again", "all",   "am",    "an",
      "and",   "any",   "are",   "as",    "at",    "be",    "been",  "before",
      "being", "both",  "by",    "can",   "could", "did",   "do",    "does",
      "doing", "down",  "each",  "few",   "for",   "from",  "had",   "has",
      "have",  "having", "he",   "her",   "here",  "hers",  "him",   "his",
      "how",   "i",     "i'm",   "if",    "in",    "into",  "is",    "it",
      "it's",  "its",   "just",  "me",    "more",  "most",  "my",    "of",
      "off",   "on",    "once",  "only",  "or",    "other", "our",   "out",
      "over",  "own",   "same",  "she",   "should", "so",   "some",  "such",
      "than",  "that",  "that's", "the",  "their", "them",  "then",  "there",
      "these", "they",  "this",  "those", "through", "to",  "too",   "under",
      "until", "up",    "very",  "was",   "we",    "were",  "what",  "when",
      "where", "which", "while", "who",   "whom",  "why",   "will",  "with",
      "would", "you",   "your",  "yours",
  };
  return kStopWords;
}

std::vector<LexiconCandidate> ProposeLexiconCandidates(const NgramStats &stats,
                                                       const ExpansionConfig &config,
                                                       const StringSet &stop_words) {
  std::vector<LexiconCandidate> out;
  for (AffectClass a : kAllClasses) {
    for (const auto &[ngram, freq] : stats.of(a)) {
      if (freq < config.f_lexicon) continue;
      bool exclusive = std::none_of(kAllClasses.begin(), kAllClasses.end(), [&](AffectClass b) {
        return b != a && stats.Frequency(b, ngram) >= config.f_lexicon;
      });
      if (!exclusive || StopWordsOnly(ngram, stop_words)) continue;
      out.push_back({ngram, a, freq});
    }
  }
  std::sort(out.begin(), out.end(), [](const LexiconCandidate &x, const LexiconCandidate &y) {
    if (x.frequency != y.frequency) return x.frequency > y.frequency;
    return x.ngram < y.ngram;
  });
  return out;
}

std::vector<PatternCandidate> ProposePatternCandidates(const NgramStats &stats,
                                                       const ExpansionConfig &config,
                                                       const StringSet &stop_words) {
  std::unordered_set<std::string> lexicon_candidates;
  for (const LexiconCandidate &c : ProposeLexiconCandidates(stats, config, stop_words)) {
    lexicon_candidates.insert(c.ngram);
  }

  std::unordered_map<std::string_view, PatternCandidate> merged;
  for (AffectClass a : kAllClasses) {
    for (const auto &[ngram, freq] : stats.of(a)) {
      PatternCandidate &c = merged[ngram];
      c.total_frequency += freq;
      c.classes.Insert(a);
    }
  }
  std::vector<PatternCandidate> out;
  for (auto &[ngram, c] : merged) {
    if (c.classes.Size() < 2 || c.total_frequency < config.f_pattern) continue;
    if (lexicon_candidates.contains(std::string(ngram))) continue;
    c.ngram = std::string(ngram);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const PatternCandidate &x, const PatternCandidate &y) {
    if (x.total_frequency != y.total_frequency) return x.total_frequency > y.total_frequency;
    return x.ngram < y.ngram;
  });
  return out;
}

std::string SerializeLexiconCandidates(std::span<const LexiconCandidate> candidates) {
  std::string out;
  for (const LexiconCandidate &c : candidates) {
    out += c.ngram + '\t' + std::string(ClassName(c.affect)) + '\t' +
           std::to_string(c.frequency) + '\n';
  }
  return out;
}

std::string SerializePatternCandidates(std::span<const PatternCandidate> candidates) {
  std::string out;
  for (const PatternCandidate &c : candidates) {
    out += c.ngram + '\t' + std::to_string(c.total_frequency) + '\t' +
           JoinClassNames(c.classes) + '\n';
  }
  return out;
}

ReviewOutcome ApplyReviewedCandidates(const Lexicon &lexicon,
                                      std::span<const CarePattern> patterns,
                                      std::string_view review) {
  ReviewOutcome outcome{lexicon, {patterns.begin(), patterns.end()}, 0, 0, 0};
  int line_no = 0;
  for (std::string_view line : Split(review, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    size_t space = trimmed.find_first_of(" \t");
    std::string_view directive = trimmed.substr(0, space);
    std::string_view rest =
        space == std::string_view::npos ? std::string_view() : Trim(trimmed.substr(space));

    if (directive == "reject") {
      ++outcome.rejected;
    } else if (directive == "accept-lex") {
      std::vector<std::string> fields = SplitWhitespace(ToLower(rest));
      if (fields.size() < 2 || fields.size() > kMaxIndicatorTokens + 1) {
        throw ParseError("expected 'accept-lex <ngram> <class>': " + std::string(trimmed),
                         line_no);
      }
      auto affect = ParseClass(fields.back());
      if (!affect) {
        throw ValidationError("line " + std::to_string(line_no) + ": unknown class '" +
                              fields.back() + "'");
      }
      fields.pop_back();
      outcome.lexicon.Add(fields, ClassSet{*affect}, Provenance::kExpansion);
      ++outcome.accepted_lexicon;
    } else if (directive == "accept-pat") {
      std::vector<CarePattern> parsed;
      try {
        parsed = ParsePatternDsl(rest);
      } catch (const ParseError &e) {
        throw ParseError(std::string(e.what()) + " in '" + std::string(rest) + "'", line_no);
      }
      if (parsed.size() != 1) {
        throw ParseError("expected one pattern: " + std::string(trimmed), line_no);
      }
      for (const CarePattern &p : outcome.patterns) {
        if (p.name == parsed[0].name) {
          throw ValidationError("line " + std::to_string(line_no) + ": pattern '" + p.name +
                                "' already exists");
        }
      }
      outcome.patterns.push_back(std::move(parsed[0]));
      ++outcome.accepted_patterns;
    } else {
      throw ParseError("unknown directive '" + std::string(directive) + "'", line_no);
    }
  }
  return outcome;
}

}  // namespace care
