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

#ifndef CARE_LEXICON_H_
#define CARE_LEXICON_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "care/taxonomy.h"

namespace care {

// Hash functor enabling heterogeneous (string_view) lookup in unordered
// containers keyed by std::string.
struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

enum class Provenance : uint8_t { kSeed, kExpansion, kManual };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

// Longest indicator, in tokens.
inline constexpr int kMaxIndicatorTokens = 3;

struct LexiconEntry {
  std::vector<std::string> tokens;
  ClassSet classes;
  Provenance provenance = Provenance::kManual;

  std::string Key() const;
};

// Indicator -> affect classes. Keys are lowercased token sequences of
// length 1..3; every entry maps to a non-empty class set.
class Lexicon {
 public:
  // Adds or merges (class-set union) an entry. The first provenance seen for
  // an indicator is kept. Throws ValidationError on an empty class set or a
  // token count outside 1..3.
  void Add(std::span<const std::string> tokens, ClassSet classes,
           Provenance provenance);
  void Add(std::string_view indicator, ClassSet classes, Provenance provenance);

  // Exact lookup of the whole token sequence.
  std::optional<ClassSet> Find(std::span<const std::string> tokens) const;

  // Longest-match lookup over the suffixes of `tokens` of length 3, 2, then
  // 1. Returns nullopt if no suffix is an indicator.
  std::optional<ClassSet> MapIndicator(std::span<const std::string> tokens) const;

  std::optional<Provenance> ProvenanceOf(std::string_view indicator) const;

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // All entries sorted by indicator text.
  std::vector<LexiconEntry> Entries() const;

  // Every token that occurs in some indicator.
  StringSet Vocabulary() const;

  friend bool operator==(const Lexicon &a, const Lexicon &b);

 private:
  struct Value {
    ClassSet classes;
    Provenance provenance;
  };
  std::unordered_map<std::string, Value, StringHash, std::equal_to<>> entries_;
};

// Reads `indicator<TAB>classes[<TAB>provenance]` rows. Blank lines and lines
// starting with '#' are skipped. Rows without a provenance column are
// recorded as `manual`.
Lexicon ParseLexicon(std::string_view text);
Lexicon LoadLexicon(const std::string &path);

std::string SerializeLexicon(const Lexicon &lexicon);
void SaveLexicon(const Lexicon &lexicon, const std::string &path);

// Closed word classes used by preprocessing and matching.
struct WordLists {
  StringSet exaggerators;
  StringSet negations;
  StringSet contrast_markers;

  bool IsExaggerator(std::string_view t) const { return exaggerators.contains(t); }
  bool IsNegation(std::string_view t) const { return negations.contains(t); }
  bool IsContrast(std::string_view t) const { return contrast_markers.contains(t); }

  // Throws ValidationError if any list is empty.
  void Validate() const;
};

// One lowercase token per line; '#' comments and blanks skipped.
StringSet ParseWordList(std::string_view text);
StringSet LoadWordList(const std::string &path);

WordLists LoadWordLists(const std::string &exaggerators_path,
                        const std::string &negations_path,
                        const std::string &contrast_path);

// CARE class -> names in an external label taxonomy. Every external name
// belongs to at most one class.
class ClassMapping {
 public:
  // Throws ValidationError if `external` is already owned by another class.
  void Add(AffectClass c, std::string_view external);

  std::optional<AffectClass> Resolve(std::string_view external) const;
  const std::map<AffectClass, std::vector<std::string>> &pairs() const {
    return pairs_;
  }
  bool empty() const { return owner_.empty(); }

 private:
  std::map<AffectClass, std::vector<std::string>> pairs_;
  std::unordered_map<std::string, AffectClass, StringHash, std::equal_to<>> owner_;
};

ClassMapping ParseClassMapping(std::string_view text);
ClassMapping LoadClassMapping(const std::string &path);

}  // namespace care

#endif  // CARE_LEXICON_H_
