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

#include "care/errors.h"
#include "care/pattern.h"
#include "test_support.h"

using namespace care;

namespace {

Matcher SmallMatcher(std::string_view dsl, std::string_view lexicon) {
  WordLists words;
  words.exaggerators = ParseWordList("so\nreally\nvery\n");
  words.negations = ParseWordList("not\nnever\n");
  words.contrast_markers = ParseWordList("but\n");
  return Matcher(ParsePatternDsl(dsl), ParseLexicon(lexicon), words);
}

std::string ErrorOf(std::string_view dsl) {
  try {
    ParsePatternDsl(dsl);
  } catch (const ParseError &e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("dsl parses the seed grammar") {
  auto patterns = ParsePatternDsl("demonstrative: {this|that|those|these} {is|are}? E* I+\n");
  REQUIRE(patterns.size() == 1);
  const CarePattern &p = patterns[0];
  CHECK(p.name == "demonstrative");
  REQUIRE(p.slots.size() == 4);
  CHECK(p.slots[0].alternatives.size() == 4);
  CHECK(p.slots[1].optional);
  CHECK(p.slots[2].kind == Slot::Kind::kExaggerator);
  CHECK(p.slots[2].min_count == 0);
  CHECK(p.slots[3].kind == Slot::Kind::kIndicator);
  CHECK_FALSE(p.anchored());
  CHECK(ParsePatternDsl(FormatPattern(p)) == patterns);

  auto exclam = ParsePatternDsl("exclam: {what a|how} E* I+");
  CHECK(exclam[0].slots[0].alternatives[0] == std::vector<std::string>{"what", "a"});
  CHECK(ParsePatternDsl("lead: ^ E+ I+")[0].anchored());
  CHECK(ParsePatternDsl("# only a comment\n\n").empty());
}

TEST_CASE("dsl errors") {
  CHECK(ErrorOf("bad: {this|that}").find("I+") != std::string::npos);
  CHECK_FALSE(ErrorOf("bad: {this|that E* I+").empty());
  CHECK_FALSE(ErrorOf("bad: {this||that} I+").empty());
  CHECK_FALSE(ErrorOf("bad: I+ E*").empty());
  CHECK_FALSE(ErrorOf("bad: E* I+").empty());
  CHECK_FALSE(ErrorOf("bad: {a} ^ I+").empty());
  CHECK_FALSE(ErrorOf("bad: {a} E* {b} I+").empty());
  CHECK_FALSE(ErrorOf("no colon here").empty());
  CHECK(ErrorOf("a: {x} I+\nok: {y} I+\nb: {z}").find("line 3") != std::string::npos);
  CHECK_THROWS(ParsePatternDsl("dup: {x} I+\ndup: {y} I+"));
}

TEST_CASE("shipped seed patterns") {
  auto patterns = LoadPatterns(testing::DataPath("seed/patterns.care"));
  CHECK(patterns.size() == 6);
  Lexicon lex = LoadLexicon(testing::DataPath("seed/lexicon.tsv"));
  CHECK(lex.size() == 40);
}

TEST_CASE("six pattern examples give one record each") {
  struct Golden {
    const char *text;
    const char *pattern;
    AffectClass affect;
  };
  const Golden golden[] = {
      {"This is so amazing!", "demonstrative", AffectClass::kApproving},
      {"I am really inspired by this recipe.", "subjective-self", AffectClass::kApproving},
      {"They really make me mad.", "subjective-nonself", AffectClass::kAngered},
      {"Some people are so dumb.", "collective-nouns", AffectClass::kAngered},
      {"So sad to see this still happens.", "leading-exaggerators", AffectClass::kSaddened},
      {"What a beautiful baby!", "exclamatory-interrogatives", AffectClass::kAdoring},
  };
  const Matcher &m = testing::SeedMatcher();
  for (const Golden &g : golden) {
    std::string text = g.text;
    CAPTURE(text);
    CommentLabel label = m.LabelComment("c1", g.text);
    REQUIRE(label.matches.size() == 1);
    CHECK(label.matches[0].pattern_name == g.pattern);
    CHECK(label.matches[0].comment_id == "c1");
    CHECK(label.classes == ClassSet{g.affect});
  }
}

TEST_CASE("example comment per class") {
  const std::pair<const char *, AffectClass> examples[] = {
      {"He is the cutest thing ever.", AffectClass::kAdoring},
      {"That was soooo funny.", AffectClass::kAmused},
      {"This is really fantastic!", AffectClass::kApproving},
      {"Really looking forward to this!", AffectClass::kExcited},
      {"I'm so frustrated to see this.", AffectClass::kAngered},
      {"So sad from reading this.", AffectClass::kSaddened},
      {"Extremely worried about finals.", AffectClass::kScared},
  };
  const Matcher &m = testing::SeedMatcher();
  for (const auto &[text, affect] : examples) {
    std::string t = text;
    CAPTURE(t);
    CHECK(m.LabelComment("c", text).classes == ClassSet{affect});
  }
  CHECK(m.LabelComment("c", "The weather is mild today.").classes.Empty());
}

TEST_CASE("match record fields") {
  const Matcher &m = testing::SeedMatcher();
  auto sentences = m.Preprocess("this is really fantastic");
  REQUIRE(sentences.size() == 1);
  auto records = m.MatchSentence(sentences[0], 0, "x");
  REQUIRE(records.size() == 1);
  CHECK(records[0].pattern_name == "demonstrative");
  CHECK(records[0].exaggerators == std::vector<std::string>{"really"});
  CHECK(records[0].indicator == std::vector<std::string>{"fantastic"});
  CHECK(records[0].classes == ClassSet{AffectClass::kApproving});

  auto lead = m.MatchSentence(m.Preprocess("so sad to see this")[0]);
  REQUIRE(lead.size() == 1);
  CHECK(lead[0].pattern_name == "leading-exaggerators");
  CHECK(lead[0].exaggerators == std::vector<std::string>{"so"});
  CHECK(lead[0].IndicatorText() == "sad");

  CHECK(m.MatchSentence(m.Preprocess("this is not funny")[0]).empty());
}

TEST_CASE("sentence index and multiple sentences") {
  const Matcher &m = testing::SeedMatcher();
  CommentLabel label = m.LabelComment("c", "Nice. This is dumb! I am so sad");
  REQUIRE(label.matches.size() == 2);
  CHECK(label.matches[0].sentence_index == 1);
  CHECK(label.matches[1].sentence_index == 2);
  CHECK(label.classes == ClassSet{AffectClass::kAngered, AffectClass::kSaddened});
}

TEST_CASE("indicator takes the longest lexicon entry") {
  Matcher m = SmallMatcher("d: {this} {is}? E* I+", "sorry for your\tsaddened\nsorry\tscared\n");
  auto r = m.MatchSentence(m.Preprocess("this is so sorry for your loss")[0]);
  REQUIRE(r.size() == 1);
  CHECK(r[0].IndicatorText() == "sorry for your");
  CHECK(r[0].classes == ClassSet{AffectClass::kSaddened});
}

TEST_CASE("anchored pattern only at sentence start") {
  Matcher m = SmallMatcher("lead: ^ E+ I+\nd: {this} {is}? E* I+", "sad\tsaddened\n");
  auto r = m.MatchSentence(m.Preprocess("this is so sad")[0]);
  REQUIRE(r.size() == 1);
  CHECK(r[0].pattern_name == "d");
  auto lead = m.MatchSentence(m.Preprocess("so sad")[0]);
  REQUIRE(lead.size() == 1);
  CHECK(lead[0].pattern_name == "lead");
}

TEST_CASE("gap tolerance") {
  Matcher tight = Matcher(ParsePatternDsl("d: {he} {is}? E* I+"), ParseLexicon("cutest\tadoring\n"),
                          WordLists{ParseWordList("so"), ParseWordList("not"), {}},
                          MatcherOptions{0});
  CHECK(tight.LabelComment("c", "he is the cutest").classes.Empty());
  CHECK_FALSE(tight.LabelComment("c", "he is cutest").classes.Empty());
  Matcher loose = SmallMatcher("d: {he} {is}? E* I+", "cutest\tadoring\n");
  CHECK_FALSE(loose.LabelComment("c", "he is the cutest").classes.Empty());
  CHECK(loose.LabelComment("c", "he is one of the cutest").classes.Empty());
}

TEST_CASE("exaggerator plus requires one") {
  Matcher m = SmallMatcher("coll: {some people} E+ I+", "dumb\tangered\n");
  CHECK(m.LabelComment("c", "some people are dumb").classes.Empty());
  CHECK_FALSE(m.LabelComment("c", "some people are so dumb").classes.Empty());
  CHECK_FALSE(m.LabelComment("c", "some people so very dumb").classes.Empty());
}

TEST_CASE("instantiation counts") {
  CHECK(CountInstantiations(23, 163, 37) == InstantiationCount{3749, 138713});
  CHECK(CountInstantiations(6, 40, 3) == InstantiationCount{240, 720});
  CHECK(CountInstantiations(0, 5, 7) == InstantiationCount{0, 0});
}
