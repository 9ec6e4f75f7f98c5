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

#include "care/pattern.h"

#include <algorithm>
#include <cctype>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

constexpr std::string_view kClitics[] = {"m", "re", "s", "ve", "ll", "d"};

// "i'm" -> "i", "that's" -> "that"; empty if `token` carries no clitic.
std::string_view CliticBase(std::string_view token) {
  size_t apos = token.rfind('\'');
  if (apos == std::string_view::npos || apos == 0) return {};
  std::string_view suffix = token.substr(apos + 1);
  for (std::string_view c : kClitics) {
    if (suffix == c) return token.substr(0, apos);
  }
  return {};
}

// A literal alternative matches when each token is equal, except that the
// final token may carry a clitic ("i'm" matches the literal "i").
bool LiteralMatches(const std::vector<std::string> &alt,
                    std::span<const std::string> tokens, size_t pos) {
  if (pos + alt.size() > tokens.size()) return false;
  for (size_t i = 0; i < alt.size(); ++i) {
    const std::string &t = tokens[pos + i];
    if (t == alt[i]) continue;
    if (i + 1 == alt.size() && CliticBase(t) == alt[i]) continue;
    return false;
  }
  return true;
}

bool ValidName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_';
  });
}

class LineParser {
 public:
  LineParser(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  CarePattern Parse() {
    CarePattern pattern;
    size_t colon = line_.find(':');
    if (colon == std::string_view::npos) Fail("expected 'name: slots'", 0);
    std::string_view name = Trim(line_.substr(0, colon));
    if (!ValidName(name)) Fail("invalid pattern name '" + std::string(name) + "'", 0);
    pattern.name = std::string(name);

    std::vector<size_t> columns;
    size_t i = colon + 1;
    while (i < line_.size()) {
      char ch = line_[i];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        continue;
      }
      columns.push_back(i);
      if (ch == '{') {
        size_t close = line_.find('}', i + 1);
        size_t reopen = line_.find('{', i + 1);
        if (close == std::string_view::npos || (reopen != std::string_view::npos && reopen < close)) {
          Fail("unbalanced '{'", i);
        }
        Slot slot;
        slot.kind = Slot::Kind::kLiteral;
        for (std::string_view alt : Split(line_.substr(i + 1, close - i - 1), '|')) {
          std::vector<std::string> tokens = SplitWhitespace(ToLower(alt));
          if (tokens.empty()) Fail("empty alternative", i);
          slot.alternatives.push_back(std::move(tokens));
        }
        i = close + 1;
        if (i < line_.size() && (line_[i] == '?' || line_[i] == '*')) {
          slot.optional = true;
          ++i;
        } else if (i < line_.size() && line_[i] == '+') {
          ++i;
        }
        pattern.slots.push_back(std::move(slot));
      } else if (ch == '}') {
        Fail("unbalanced '}'", i);
      } else if (ch == 'E' || ch == 'I') {
        char quant = i + 1 < line_.size() ? line_[i + 1] : '\0';
        bool delimited = i + 2 >= line_.size() ||
                         std::isspace(static_cast<unsigned char>(line_[i + 2])) ||
                         line_[i + 2] == '{';
        if (ch == 'E' && (quant == '*' || quant == '+') && delimited) {
          Slot slot;
          slot.kind = Slot::Kind::kExaggerator;
          slot.min_count = quant == '+' ? 1 : 0;
          pattern.slots.push_back(std::move(slot));
        } else if (ch == 'I' && quant == '+' && delimited) {
          Slot slot;
          slot.kind = Slot::Kind::kIndicator;
          pattern.slots.push_back(std::move(slot));
        } else {
          Fail(ch == 'E' ? "expected E* or E+" : "expected I+", i);
        }
        i += 2;
      } else if (ch == '^') {
        Slot slot;
        slot.kind = Slot::Kind::kAnchor;
        pattern.slots.push_back(std::move(slot));
        ++i;
      } else {
        Fail(std::string("unexpected character '") + ch + "'", i);
      }
    }
    Validate(pattern, columns);
    return pattern;
  }

 private:
  [[noreturn]] void Fail(const std::string &what, size_t column) const {
    throw ParseError("column " + std::to_string(column + 1) + ": " + what, line_no_);
  }

  void Validate(const CarePattern &p, const std::vector<size_t> &columns) const {
    int indicator_at = -1;
    bool seen_exaggerator = false;
    bool has_head = false;  // a mandatory literal or E+ precedes the indicator
    for (size_t s = 0; s < p.slots.size(); ++s) {
      const Slot &slot = p.slots[s];
      if (indicator_at >= 0) Fail("I+ must be the last slot", columns[s]);
      switch (slot.kind) {
        case Slot::Kind::kAnchor:
          if (s != 0) Fail("'^' must be the first slot", columns[s]);
          break;
        case Slot::Kind::kLiteral:
          if (seen_exaggerator) Fail("literal slot after E", columns[s]);
          if (!slot.optional) has_head = true;
          break;
        case Slot::Kind::kExaggerator:
          if (seen_exaggerator) Fail("duplicate E slot", columns[s]);
          seen_exaggerator = true;
          if (slot.min_count > 0) has_head = true;
          break;
        case Slot::Kind::kIndicator:
          indicator_at = static_cast<int>(s);
          break;
      }
    }
    if (indicator_at < 0) Fail("missing I+ slot", line_.size());
    if (!has_head) {
      Fail("I+ needs a mandatory literal or E+ before it", columns[indicator_at]);
    }
  }

  std::string_view line_;
  int line_no_;
};

}  // namespace

std::vector<CarePattern> ParsePatternDsl(std::string_view source) {
  std::vector<CarePattern> patterns;
  int line_no = 0;
  for (std::string_view line : Split(source, '\n')) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    CarePattern pattern = LineParser(line, line_no).Parse();
    for (const CarePattern &existing : patterns) {
      if (existing.name == pattern.name) {
        throw ParseError("duplicate pattern name '" + pattern.name + "'", line_no);
      }
    }
    patterns.push_back(std::move(pattern));
  }
  return patterns;
}

std::vector<CarePattern> LoadPatterns(const std::string &path) {
  return ParsePatternDsl(ReadFile(path));
}

std::string FormatPattern(const CarePattern &pattern) {
  std::string out = pattern.name + ":";
  for (const Slot &slot : pattern.slots) {
    out += ' ';
    switch (slot.kind) {
      case Slot::Kind::kAnchor:
        out += '^';
        break;
      case Slot::Kind::kLiteral: {
        out += '{';
        for (size_t a = 0; a < slot.alternatives.size(); ++a) {
          if (a > 0) out += '|';
          out += Join(slot.alternatives[a], " ");
        }
        out += '}';
        if (slot.optional) out += '?';
        break;
      }
      case Slot::Kind::kExaggerator:
        out += slot.min_count > 0 ? "E+" : "E*";
        break;
      case Slot::Kind::kIndicator:
        out += "I+";
        break;
    }
  }
  return out;
}

std::string MatchRecord::IndicatorText() const { return Join(indicator, " "); }

Matcher::Matcher(std::vector<CarePattern> patterns, Lexicon lexicon, WordLists words,
                 MatcherOptions options)
    : patterns_(std::move(patterns)),
      lexicon_(std::move(lexicon)),
      words_(std::move(words)),
      options_(options),
      preprocessor_(words_.contrast_markers, [&] {
        StringSet vocab = lexicon_.Vocabulary();
        for (const StringSet *list :
             {&words_.exaggerators, &words_.negations, &words_.contrast_markers}) {
          vocab.insert(list->begin(), list->end());
        }
        for (const CarePattern &p : patterns_) {
          for (const Slot &s : p.slots) {
            for (const auto &alt : s.alternatives) vocab.insert(alt.begin(), alt.end());
          }
        }
        return vocab;
      }()) {
  if (options_.max_gap < 0) throw ValidationError("max_gap must be non-negative");
  for (const CarePattern &p : patterns_) {
    if (p.slots.empty() || p.slots.back().kind != Slot::Kind::kIndicator) {
      throw ValidationError("pattern '" + p.name + "' does not end in I+");
    }
  }

  StringSet indicator_heads;
  for (const LexiconEntry &e : lexicon_.Entries()) indicator_heads.insert(e.tokens.front());

  for (int idx = 0; idx < static_cast<int>(patterns_.size()); ++idx) {
    const CarePattern &p = patterns_[idx];
    if (p.anchored()) {
      anchored_.push_back(idx);
      continue;
    }
    StringSet heads;
    for (const Slot &slot : p.slots) {
      bool nullable = false;
      if (slot.kind == Slot::Kind::kLiteral) {
        for (const auto &alt : slot.alternatives) heads.insert(alt.front());
        nullable = slot.optional;
      } else if (slot.kind == Slot::Kind::kExaggerator) {
        heads.insert(words_.exaggerators.begin(), words_.exaggerators.end());
        nullable = slot.min_count == 0;
      } else if (slot.kind == Slot::Kind::kIndicator) {
        heads.insert(indicator_heads.begin(), indicator_heads.end());
      }
      if (!nullable) break;
    }
    for (const std::string &h : heads) first_token_index_[h].push_back(idx);
  }
}

bool Matcher::HasPattern(std::string_view name) const {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const CarePattern &p) { return p.name == name; });
}

bool Matcher::MatchTail(const CarePattern &p, size_t slot,
                        std::span<const std::string> tokens, size_t pos,
                        MatchRecord *out) const {
  size_t exaggerators = 0;
  size_t min_exaggerators = 0;
  if (p.slots[slot].kind == Slot::Kind::kExaggerator) {
    while (pos + exaggerators < tokens.size() &&
           words_.IsExaggerator(tokens[pos + exaggerators])) {
      ++exaggerators;
    }
    min_exaggerators = static_cast<size_t>(p.slots[slot].min_count);
    if (exaggerators < min_exaggerators) return false;
  }
  // Prefer the longest exaggerator run, then the longest indicator.
  for (size_t k = exaggerators + 1; k-- > min_exaggerators;) {
    size_t at = pos + k;
    size_t longest = std::min<size_t>(kMaxIndicatorTokens, tokens.size() - at);
    for (size_t len = longest; len >= 1; --len) {
      auto classes = lexicon_.Find(tokens.subspan(at, len));
      if (!classes) continue;
      out->exaggerators.assign(tokens.begin() + pos, tokens.begin() + at);
      out->indicator.assign(tokens.begin() + at, tokens.begin() + at + len);
      out->classes = *classes;
      return true;
    }
  }
  return false;
}

bool Matcher::MatchSlots(const CarePattern &p, size_t slot,
                         std::span<const std::string> tokens, size_t pos,
                         MatchRecord *out) const {
  const Slot &s = p.slots[slot];
  switch (s.kind) {
    case Slot::Kind::kAnchor:
      return pos == 0 && MatchSlots(p, slot + 1, tokens, pos, out);
    case Slot::Kind::kLiteral:
      for (const auto &alt : s.alternatives) {
        if (LiteralMatches(alt, tokens, pos) &&
            MatchSlots(p, slot + 1, tokens, pos + alt.size(), out)) {
          return true;
        }
      }
      return s.optional && MatchSlots(p, slot + 1, tokens, pos, out);
    case Slot::Kind::kExaggerator:
    case Slot::Kind::kIndicator: {
      bool after_literal = slot > 0 && p.slots[slot - 1].kind == Slot::Kind::kLiteral;
      size_t max_gap = after_literal ? static_cast<size_t>(options_.max_gap) : 0;
      for (size_t gap = 0; gap <= max_gap && pos + gap < tokens.size(); ++gap) {
        if (MatchTail(p, slot, tokens, pos + gap, out)) return true;
      }
      return false;
    }
  }
  return false;
}

bool Matcher::MatchAt(const CarePattern &p, std::span<const std::string> tokens,
                      size_t start, MatchRecord *out) const {
  return MatchSlots(p, 0, tokens, start, out);
}

std::vector<MatchRecord> Matcher::MatchSentence(const PreprocessedSentence &sentence,
                                                int sentence_index,
                                                std::string_view comment_id) const {
  std::vector<MatchRecord> records;
  std::span<const std::string> tokens = sentence.tokens;
  for (const std::string &t : tokens) {
    if (words_.IsNegation(t)) return records;
  }

  std::vector<int> candidates;
  MatchRecord scratch;
  for (size_t start = 0; start < tokens.size(); ++start) {
    candidates.clear();
    if (start == 0) candidates = anchored_;
    if (auto it = first_token_index_.find(tokens[start]); it != first_token_index_.end()) {
      candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
    std::string_view base = CliticBase(tokens[start]);
    if (!base.empty()) {
      if (auto it = first_token_index_.find(base); it != first_token_index_.end()) {
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
      }
    }
    if (candidates.empty()) continue;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (int idx : candidates) {
      const CarePattern &p = patterns_[idx];
      if (!MatchAt(p, tokens, start, &scratch)) continue;
      bool duplicate = std::any_of(records.begin(), records.end(), [&](const MatchRecord &r) {
        return r.pattern_name == p.name && r.indicator == scratch.indicator;
      });
      if (duplicate) continue;
      scratch.pattern_name = p.name;
      scratch.comment_id = std::string(comment_id);
      scratch.sentence_index = sentence_index;
      records.push_back(scratch);
    }
  }
  return records;
}

CommentLabel Matcher::LabelComment(std::string_view comment_id,
                                   std::string_view text) const {
  CommentLabel label;
  std::vector<PreprocessedSentence> sentences = preprocessor_.Process(text);
  for (size_t i = 0; i < sentences.size(); ++i) {
    for (MatchRecord &r : MatchSentence(sentences[i], static_cast<int>(i), comment_id)) {
      label.classes |= r.classes;
      label.matches.push_back(std::move(r));
    }
  }
  return label;
}

InstantiationCount CountInstantiations(uint64_t patterns, uint64_t indicators,
                                       uint64_t exaggerators) {
  return {patterns * indicators, patterns * indicators * exaggerators};
}

}  // namespace care
