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

#ifndef CARE_TAXONOMY_H_
#define CARE_TAXONOMY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace care {

// The seven affective-response classes. The enumerator order is the
// canonical output order everywhere (labels, support maps, reports).
enum class AffectClass : uint8_t {
  kAdoring = 0,
  kAmused,
  kApproving,
  kExcited,
  kAngered,
  kSaddened,
  kScared,
};

inline constexpr int kNumClasses = 7;

enum class Valence : uint8_t { kPositive, kNegative };

struct ClassInfo {
  AffectClass id;
  std::string_view name;
  std::string_view definition;
  Valence valence;
};

// Static metadata for every class, indexed by the enumerator value.
const std::array<ClassInfo, kNumClasses> &Taxonomy();

std::string_view ClassName(AffectClass c);
Valence ClassValence(AffectClass c);
std::string_view ValenceName(Valence v);

// Case-insensitive lookup by name ("amused", "Amused").
std::optional<AffectClass> ParseClass(std::string_view name);

// Same, but throws ValidationError naming the offending value.
AffectClass ParseClassOrThrow(std::string_view name);

inline constexpr std::array<AffectClass, kNumClasses> kAllClasses = {
    AffectClass::kAdoring,  AffectClass::kAmused,   AffectClass::kApproving,
    AffectClass::kExcited,  AffectClass::kAngered,  AffectClass::kSaddened,
    AffectClass::kScared};

// A small set of classes packed into a bitmask. Iteration follows the
// canonical class order.
class ClassSet {
 public:
  constexpr ClassSet() = default;
  constexpr ClassSet(std::initializer_list<AffectClass> classes) {
    for (AffectClass c : classes) Insert(c);
  }

  static constexpr ClassSet FromBits(uint8_t bits) {
    ClassSet s;
    s.bits_ = bits & kMask;
    return s;
  }

  constexpr void Insert(AffectClass c) { bits_ |= Bit(c); }
  constexpr void Erase(AffectClass c) { bits_ &= ~Bit(c); }
  constexpr bool Contains(AffectClass c) const { return bits_ & Bit(c); }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr int Size() const { return __builtin_popcount(bits_); }
  constexpr uint8_t bits() const { return bits_; }

  constexpr ClassSet &operator|=(ClassSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr ClassSet operator|(ClassSet a, ClassSet b) { return a |= b; }
  friend constexpr ClassSet operator&(ClassSet a, ClassSet b) {
    return FromBits(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(ClassSet, ClassSet) = default;

  // True if every member of this set is in `other`.
  constexpr bool SubsetOf(ClassSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  std::vector<AffectClass> ToVector() const;
  std::vector<std::string> Names() const;

 private:
  static constexpr uint8_t kMask = (1u << kNumClasses) - 1;
  static constexpr uint8_t Bit(AffectClass c) {
    return static_cast<uint8_t>(1u << static_cast<int>(c));
  }
  uint8_t bits_ = 0;
};

// Parses a comma-separated class list ("amused,approving"). Throws
// ValidationError on an unknown name or an empty list.
ClassSet ParseClassList(std::string_view csv);

// "amused,approving" in canonical order.
std::string JoinClassNames(ClassSet set, char sep = ',');

}  // namespace care

#endif  // CARE_TAXONOMY_H_
