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

#include <doctest.h>

#include "care/aggregate.h"
#include "care/errors.h"
#include "care/strings.h"
#include "checks.h"
#include "test_support.h"

using namespace care;

namespace {

std::vector<CommentClasses> Repeat(int n, ClassSet classes, int offset = 0) {
  std::vector<CommentClasses> out;
  for (int i = 0; i < n; ++i) out.push_back({"c" + std::to_string(offset + i), classes});
  return out;
}

}  // namespace

TEST_CASE("post aggregation examples") {
  AggregationConfig cfg;
  ClassSet amused{AffectClass::kAmused};
  auto five = Repeat(5, amused);
  PostAnnotation a = AggregatePost("p", five, cfg);
  CHECK(a.labels == amused);
  CHECK(a.Support(AffectClass::kAmused) == 5);

  auto mixed = Repeat(4, amused);
  auto approving = Repeat(6, ClassSet{AffectClass::kApproving}, 10);
  mixed.insert(mixed.end(), approving.begin(), approving.end());
  CHECK(AggregatePost("p", mixed, cfg).labels == ClassSet{AffectClass::kApproving});

  AggregationConfig scared_cfg;
  scared_cfg.per_class_thresholds[AffectClass::kScared] = 3;
  auto three = Repeat(3, ClassSet{AffectClass::kScared});
  CHECK(AggregatePost("p", three, scared_cfg).labels == ClassSet{AffectClass::kScared});
  CHECK(AggregatePost("p", three, cfg).labels.Empty());
}

TEST_CASE("duplicate comment ids count once") {
  AggregationConfig cfg;
  cfg.default_threshold = 2;
  std::vector<CommentClasses> dup = {{"c1", ClassSet{AffectClass::kAmused}},
                                     {"c1", ClassSet{AffectClass::kAmused}}};
  PostAnnotation a = AggregatePost("p", dup, cfg);
  CHECK(a.Support(AffectClass::kAmused) == 1);
  CHECK(a.labels.Empty());
}

TEST_CASE("threshold zero behaves like one") {
  CHECK_FALSE(ClearsThreshold(0, 0));
  CHECK(ClearsThreshold(1, 0));
  CHECK(ClearsThreshold(1, 1));
  CHECK_FALSE(ClearsThreshold(4, 5));
}

TEST_CASE("config validation") {
  AggregationConfig cfg;
  cfg.default_threshold = 0;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.default_threshold = 5;
  cfg.per_class_thresholds[AffectClass::kScared] = -1;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.per_class_thresholds[AffectClass::kScared] = 3;
  CHECK_NOTHROW(cfg.Validate());
  CHECK(cfg.MinThreshold() == 3);
  cfg.exclusions.Add("no-such-pattern", "funny");
  CHECK_THROWS_AS(cfg.Validate(&testing::SeedMatcher()), ValidationError);
}

TEST_CASE("corpus annotation examples") {
  const Matcher &m = testing::SeedMatcher();
  Corpus corpus;
  corpus.posts = {{"p1", "a long enough post"}, {"p2", "hi"}, {"p3", "another long post"}};
  for (int i = 0; i < 5; ++i) {
    corpus.comments.push_back({"a" + std::to_string(i), "p1", "this is so funny"});
    corpus.comments.push_back({"b" + std::to_string(i), "p2", "this is so funny"});
    corpus.comments.push_back({"c" + std::to_string(i), "p3", "nice"});
  }
  auto out = AnnotateCorpus(corpus, m, AggregationConfig{});
  REQUIRE(out.size() == 1);
  CHECK(out[0].post_id == "p1");
  CHECK(out[0].labels == ClassSet{AffectClass::kAmused});
  CHECK(AnnotateCorpus(Corpus{}, m, AggregationConfig{}).empty());

  Corpus dup = corpus;
  dup.posts.push_back({"p1", "again"});
  CHECK_THROWS_AS(AnnotateCorpus(dup, m, AggregationConfig{}), ValidationError);
}

TEST_CASE("post length counts code points") {
  const Matcher &m = testing::SeedMatcher();
  Corpus corpus;
  // Nine characters, eighteen bytes.
  corpus.posts = {{"p", "\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9"}};
  for (int i = 0; i < 5; ++i) corpus.comments.push_back({std::to_string(i), "p", "so funny"});
  CHECK(Utf8Length(corpus.posts[0].text) == 9);
  CHECK(AnnotateCorpus(corpus, m, AggregationConfig{}).empty());
  corpus.posts[0].text += "!";
  CHECK(AnnotateCorpus(corpus, m, AggregationConfig{}).size() == 1);
}

TEST_CASE("exclusions") {
  ExclusionList excl = ParseExclusions("# pattern\tindicator\nsubjective-self\tfunny\n");
  CHECK(excl.size() == 1);
  CHECK(excl.Contains("subjective-self", "funny"));
  CHECK_FALSE(excl.Contains("demonstrative", "funny"));
  CHECK_THROWS(ParseExclusions("only-one-column\n"));
}

TEST_CASE("aggregation properties on random corpora") {
  testing::Tally t = testing::AggregationProperties(testing::SeedMatcher(), 20260101, 1000);
  CHECK(t.cases == 1000);
  CHECK(t.violations == 0);
  CHECK(t.informative > 300);
}

TEST_CASE("annotation jsonl round trip") {
  PostAnnotation a;
  a.post_id = "p1";
  a.labels = ClassSet{AffectClass::kSaddened, AffectClass::kScared};
  a.support[static_cast<int>(AffectClass::kSaddened)] = 5;
  a.support[static_cast<int>(AffectClass::kScared)] = 6;
  a.support[static_cast<int>(AffectClass::kAmused)] = 1;
  std::vector<PostAnnotation> v{a};
  std::string text = SerializeAnnotationsJsonl(v);
  CHECK(text ==
        "{\"post_id\":\"p1\",\"labels\":[\"saddened\",\"scared\"],"
        "\"support\":{\"amused\":1,\"saddened\":5,\"scared\":6}}\n");
  CHECK(ParseAnnotationsJsonl(text) == v);
  CHECK_THROWS_AS(ParseAnnotationsJsonl("{\"post_id\":\"p\",\"labels\":[\"joy\"]}"),
                  ValidationError);
}

TEST_CASE("ensemble union") {
  ClassMapping mapping = LoadClassMapping(testing::DataPath("seed/class_mapping.tsv"));
  std::vector<PostCommentClasses> care = {
      {"p1", Repeat(5, ClassSet{AffectClass::kAmused})},
      {"p2", Repeat(3, ClassSet{AffectClass::kExcited})},
      {"p3", Repeat(5, ClassSet{AffectClass::kAngered})},
  };
  ExternalCommentLabels external;
  for (int i = 0; i < 4; ++i) {
    external["c" + std::to_string(i)] = {"joy"};
  }
  // p3's comments share ids with the joy-labeled ones, so rename them.
  for (auto &c : care[2].comments) c.comment_id = "x" + c.comment_id;
  for (int i = 0; i < 4; ++i) external["xc" + std::to_string(i)] = {"disgust", "curiosity"};
  // p2's comments c0..c2 carry joy; add a fourth joy comment without a CARE match.
  care[1].comments.push_back({"c3", ClassSet{}});
  // Keep p1 free of external labels.
  for (auto &c : care[0].comments) c.comment_id = "p1-" + c.comment_id;

  EnsembleResult r = EnsembleAnnotate(care, external, mapping, 5, 4);
  REQUIRE(r.posts.size() == 3);
  CHECK(r.posts[0].labels == ClassSet{AffectClass::kAmused});
  CHECK(r.posts[0].external_labels.Empty());
  CHECK(r.posts[1].care_labels.Empty());
  CHECK(r.posts[1].labels == ClassSet{AffectClass::kExcited});
  CHECK(r.posts[2].care_labels == ClassSet{AffectClass::kAngered});
  CHECK(r.posts[2].external_labels == ClassSet{AffectClass::kAngered});
  CHECK(r.unmapped.at("curiosity") == 4);
}

TEST_CASE("ensemble matches an independent union") {
  testing::Tally t = testing::EnsembleOracle(13, 300);
  CHECK(t.violations == 0);
  CHECK(t.informative > 50);
}
