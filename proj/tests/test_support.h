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

// Helpers shared by the unit tests and the acceptance runner.

#ifndef CARE_TESTS_TEST_SUPPORT_H_
#define CARE_TESTS_TEST_SUPPORT_H_

#include <random>
#include <string>
#include <vector>

#include "care/aggregate.h"
#include "care/corpus.h"
#include "care/lexicon.h"
#include "care/pattern.h"
#include "care/pipeline.h"
#include "care/taxonomy.h"

namespace care::testing {

inline std::string DataPath(const std::string &rel) {
  return std::string(CARE_TEST_DATA_DIR) + "/" + rel;
}

inline PipelineConfig SeedConfig() { return DefaultPipelineConfig(CARE_TEST_DATA_DIR); }

inline const Matcher &SeedMatcher() {
  static const Matcher *matcher = new Matcher(BuildMatcher(SeedConfig()));
  return *matcher;
}

// One matching phrase per class, each built from seed resources so that it
// yields exactly one match of that class.
inline const std::vector<std::pair<AffectClass, std::string>> &ClassPhrases() {
  static const std::vector<std::pair<AffectClass, std::string>> phrases = {
      {AffectClass::kAdoring, "this is so cute"},
      {AffectClass::kAdoring, "he is the cutest"},
      {AffectClass::kAmused, "that is hilarious"},
      {AffectClass::kAmused, "this was soooo funny"},
      {AffectClass::kApproving, "this is really fantastic"},
      {AffectClass::kApproving, "they are so impressive"},
      {AffectClass::kExcited, "i am so excited"},
      {AffectClass::kExcited, "we are thrilled"},
      {AffectClass::kAngered, "i'm so frustrated"},
      {AffectClass::kAngered, "this is dumb"},
      {AffectClass::kSaddened, "this is so sad"},
      {AffectClass::kSaddened, "that is heartbreaking"},
      {AffectClass::kScared, "i am extremely worried"},
      {AffectClass::kScared, "that is terrifying"},
  };
  return phrases;
}

inline const std::vector<std::string> &NeutralPhrases() {
  static const std::vector<std::string> phrases = {
      "nice photo", "where was this taken", "the weather is mild today",
      "this is not funny", "i never said this is amazing", "first"};
  return phrases;
}

// Random corpus over `num_posts` posts. Each comment is either a class
// phrase or a neutral phrase, sometimes with a sentence of filler appended.
inline Corpus RandomCorpus(std::mt19937_64 &rng, int num_posts, int max_comments,
                           int filler_percent = 30) {
  const auto &phrases = ClassPhrases();
  const auto &neutral = NeutralPhrases();
  static const std::vector<std::string> filler = {
      "such an adorable pup", "i feel like crying", "i feel like it", "what a day",
      "adorable", "see you there", "i feel like a winner"};
  Corpus corpus;
  std::uniform_int_distribution<int> comments_dist(0, max_comments);
  std::uniform_int_distribution<int> pct(0, 99);
  for (int p = 0; p < num_posts; ++p) {
    std::string pid = "p" + std::to_string(p);
    // Some posts are short enough to fall under the default length floor.
    corpus.posts.push_back({pid, pct(rng) < 15 ? "short" : "post number " + pid});
    int n = comments_dist(rng);
    for (int i = 0; i < n; ++i) {
      std::string text;
      if (pct(rng) < 70) {
        text = phrases[rng() % phrases.size()].second;
      } else {
        text = neutral[rng() % neutral.size()];
      }
      if (pct(rng) < filler_percent) text += ". " + filler[rng() % filler.size()];
      corpus.comments.push_back({pid + "-" + std::to_string(i), pid, text});
    }
  }
  return corpus;
}

}  // namespace care::testing

#endif  // CARE_TESTS_TEST_SUPPORT_H_
