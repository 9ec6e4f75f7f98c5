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

#include "care/lexicon.h"

#include <algorithm>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

// Appends lowercased tokens joined by single spaces.
void BuildKey(std::span<const std::string> tokens, std::string *key) {
  key->clear();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key->push_back(' ');
    for (char ch : tokens[i]) {
      key->push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
    }
  }
}

// Strips a trailing '\r' and reports whether the line carries content.
bool ContentLine(std::string_view &line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view trimmed = Trim(line);
  return !trimmed.empty() && trimmed.front() != '#';
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kSeed: return "seed";
    case Provenance::kExpansion: return "expansion";
    case Provenance::kManual: return "manual";
  }
  return "manual";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  std::string lowered = ToLower(Trim(name));
  if (lowered == "seed") return Provenance::kSeed;
  if (lowered == "expansion") return Provenance::kExpansion;
  if (lowered == "manual") return Provenance::kManual;
  return std::nullopt;
}

std::string LexiconEntry::Key() const { return Join(tokens, " "); }

void Lexicon::Add(std::span<const std::string> tokens, ClassSet classes,
                  Provenance provenance) {
  if (tokens.empty() || tokens.size() > kMaxIndicatorTokens) {
    throw ValidationError("indicator must have 1 to 3 tokens, got " +
                          std::to_string(tokens.size()));
  }
  if (classes.Empty()) throw ValidationError("indicator with empty class set");
  std::string key;
  BuildKey(tokens, &key);
  auto [it, inserted] = entries_.try_emplace(std::move(key), Value{classes, provenance});
  if (!inserted) it->second.classes |= classes;
}

void Lexicon::Add(std::string_view indicator, ClassSet classes,
                  Provenance provenance) {
  std::vector<std::string> tokens = SplitWhitespace(indicator);
  Add(tokens, classes, provenance);
}

std::optional<ClassSet> Lexicon::Find(std::span<const std::string> tokens) const {
  if (tokens.empty() || tokens.size() > kMaxIndicatorTokens) return std::nullopt;
  thread_local std::string key;
  BuildKey(tokens, &key);
  auto it = entries_.find(std::string_view(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second.classes;
}

std::optional<ClassSet> Lexicon::MapIndicator(
    std::span<const std::string> tokens) const {
  size_t longest = std::min<size_t>(tokens.size(), kMaxIndicatorTokens);
  for (size_t len = longest; len >= 1; --len) {
    if (auto hit = Find(tokens.subspan(tokens.size() - len))) return hit;
  }
  return std::nullopt;
}

std::optional<Provenance> Lexicon::ProvenanceOf(std::string_view indicator) const {
  std::vector<std::string> tokens = SplitWhitespace(indicator);
  std::string key;
  BuildKey(tokens, &key);
  auto it = entries_.find(std::string_view(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second.provenance;
}

std::vector<LexiconEntry> Lexicon::Entries() const {
  std::vector<LexiconEntry> out;
  out.reserve(entries_.size());
  for (const auto &[key, value] : entries_) {
    out.push_back({SplitWhitespace(key), value.classes, value.provenance});
  }
  std::sort(out.begin(), out.end(), [](const LexiconEntry &a, const LexiconEntry &b) {
    return a.tokens < b.tokens;
  });
  return out;
}

StringSet Lexicon::Vocabulary() const {
  StringSet vocab;
  for (const auto &[key, value] : entries_) {
    for (std::string &t : SplitWhitespace(key)) vocab.insert(std::move(t));
  }
  return vocab;
}

bool operator==(const Lexicon &a, const Lexicon &b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (const auto &[key, value] : a.entries_) {
    auto it = b.entries_.find(key);
    if (it == b.entries_.end()) return false;
    if (it->second.classes != value.classes ||
        it->second.provenance != value.provenance) {
      return false;
    }
  }
  return true;
}

Lexicon ParseLexicon(std::string_view text) {
  Lexicon lexicon;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (!ContentLine(line)) continue;
    std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw ParseError("expected indicator<TAB>classes[<TAB>provenance]", line_no);
    }
    std::vector<std::string> tokens = SplitWhitespace(ToLower(cols[0]));
    if (tokens.empty()) throw ParseError("empty indicator", line_no);
    if (tokens.size() > kMaxIndicatorTokens) {
      throw ParseError("indicator longer than 3 tokens", line_no);
    }
    Provenance provenance = Provenance::kManual;
    if (cols.size() == 3) {
      auto p = ParseProvenance(cols[2]);
      if (!p) throw ParseError("unknown provenance '" + std::string(cols[2]) + "'", line_no);
      provenance = *p;
    }
    ClassSet classes;
    try {
      classes = ParseClassList(cols[1]);
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    lexicon.Add(tokens, classes, provenance);
  }
  return lexicon;
}

Lexicon LoadLexicon(const std::string &path) { return ParseLexicon(ReadFile(path)); }

std::string SerializeLexicon(const Lexicon &lexicon) {
  std::string out;
  for (const LexiconEntry &e : lexicon.Entries()) {
    out += e.Key();
    out += '\t';
    out += JoinClassNames(e.classes);
    out += '\t';
    out += ProvenanceName(e.provenance);
    out += '\n';
  }
  return out;
}

void SaveLexicon(const Lexicon &lexicon, const std::string &path) {
  WriteFileAtomically(path, SerializeLexicon(lexicon));
}

void WordLists::Validate() const {
  if (exaggerators.empty()) throw ValidationError("exaggerator list is empty");
  if (negations.empty()) throw ValidationError("negation list is empty");
  if (contrast_markers.empty()) throw ValidationError("contrast marker list is empty");
}

StringSet ParseWordList(std::string_view text) {
  StringSet words;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (!ContentLine(line)) continue;
    std::string_view word = Trim(line);
    if (word.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("word list entries must be single tokens", line_no);
    }
    words.insert(ToLower(word));
  }
  return words;
}

StringSet LoadWordList(const std::string &path) { return ParseWordList(ReadFile(path)); }

WordLists LoadWordLists(const std::string &exaggerators_path,
                        const std::string &negations_path,
                        const std::string &contrast_path) {
  WordLists lists{LoadWordList(exaggerators_path), LoadWordList(negations_path),
                  LoadWordList(contrast_path)};
  lists.Validate();
  return lists;
}

void ClassMapping::Add(AffectClass c, std::string_view external) {
  std::string name = ToLower(Trim(external));
  if (name.empty()) throw ValidationError("empty external label name");
  auto [it, inserted] = owner_.try_emplace(name, c);
  if (!inserted) {
    if (it->second == c) return;
    throw ValidationError("external label '" + name + "' mapped to both " +
                          std::string(ClassName(it->second)) + " and " +
                          std::string(ClassName(c)));
  }
  pairs_[c].push_back(std::move(name));
}

std::optional<AffectClass> ClassMapping::Resolve(std::string_view external) const {
  auto it = owner_.find(ToLower(Trim(external)));
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

ClassMapping ParseClassMapping(std::string_view text) {
  ClassMapping mapping;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (!ContentLine(line)) continue;
    std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != 2) throw ParseError("expected care_class<TAB>external_name", line_no);
    try {
      mapping.Add(ParseClassOrThrow(cols[0]), cols[1]);
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return mapping;
}

ClassMapping LoadClassMapping(const std::string &path) {
  return ParseClassMapping(ReadFile(path));
}

}  // namespace care
