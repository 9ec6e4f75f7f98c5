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

#include "care/taxonomy.h"

#include <algorithm>
#include <cctype>

#include "care/errors.h"
#include "care/strings.h"

namespace care {

const std::array<ClassInfo, kNumClasses> &Taxonomy() {
  static const std::array<ClassInfo, kNumClasses> kTaxonomy = {{
      {AffectClass::kAdoring, "adoring",
       "Finding someone or something cute, adorable, or attractive.",
       Valence::kPositive},
      {AffectClass::kAmused, "amused",
       "Finding something funny, entertaining, or interesting.",
       Valence::kPositive},
      {AffectClass::kApproving, "approving",
       "Expressing support, praise, admiration, or pride.",
       Valence::kPositive},
      {AffectClass::kExcited, "excited",
       "Expressing joy, zeal, eagerness, or looking forward to something.",
       Valence::kPositive},
      {AffectClass::kAngered, "angered",
       "Expressing anger, revulsion, or annoyance.", Valence::kNegative},
      {AffectClass::kSaddened, "saddened",
       "Expressing sadness, sympathy, or disappointment.", Valence::kNegative},
      {AffectClass::kScared, "scared",
       "Expressing worry, concern, stress, anxiety, or fear.",
       Valence::kNegative},
  }};
  return kTaxonomy;
}

std::string_view ClassName(AffectClass c) {
  return Taxonomy()[static_cast<int>(c)].name;
}

Valence ClassValence(AffectClass c) {
  return Taxonomy()[static_cast<int>(c)].valence;
}

std::string_view ValenceName(Valence v) {
  return v == Valence::kPositive ? "positive" : "negative";
}

std::optional<AffectClass> ParseClass(std::string_view name) {
  std::string lowered = ToLower(Trim(name));
  for (const ClassInfo &info : Taxonomy()) {
    if (info.name == lowered) return info.id;
  }
  return std::nullopt;
}

AffectClass ParseClassOrThrow(std::string_view name) {
  auto c = ParseClass(name);
  if (!c) throw ValidationError("unknown affect class '" + std::string(name) + "'");
  return *c;
}

std::vector<AffectClass> ClassSet::ToVector() const {
  std::vector<AffectClass> out;
  for (AffectClass c : kAllClasses) {
    if (Contains(c)) out.push_back(c);
  }
  return out;
}

std::vector<std::string> ClassSet::Names() const {
  std::vector<std::string> out;
  for (AffectClass c : kAllClasses) {
    if (Contains(c)) out.emplace_back(ClassName(c));
  }
  return out;
}

ClassSet ParseClassList(std::string_view csv) {
  ClassSet set;
  for (std::string_view part : Split(csv, ',')) {
    if (Trim(part).empty()) continue;
    set.Insert(ParseClassOrThrow(part));
  }
  if (set.Empty()) throw ValidationError("empty class list");
  return set;
}

std::string JoinClassNames(ClassSet set, char sep) {
  std::string out;
  for (AffectClass c : set.ToVector()) {
    if (!out.empty()) out += sep;
    out += ClassName(c);
  }
  return out;
}

}  // namespace care
