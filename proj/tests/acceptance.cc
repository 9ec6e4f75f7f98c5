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

// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. `--quick` shrinks the throughput corpus.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "care/aggregate.h"
#include "care/expand.h"
#include "care/pattern.h"
#include "care/pipeline.h"
#include "care/strings.h"
#include "checks.h"
#include "preprocess_cases.h"
#include "test_support.h"

using namespace care;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Result {
  bool pass = false;
  std::string detail;
};

// 1: six pattern examples and the per-class example comments.
Result SeedGolden() {
  auto start = Clock::now();
  const Matcher &m = testing::SeedMatcher();
  struct Golden {
    const char *text;
    const char *pattern;
    AffectClass affect;
  };
  const Golden six[] = {
      {"This is so amazing!", "demonstrative", AffectClass::kApproving},
      {"I am really inspired by this recipe.", "subjective-self", AffectClass::kApproving},
      {"They really make me mad.", "subjective-nonself", AffectClass::kAngered},
      {"Some people are so dumb.", "collective-nouns", AffectClass::kAngered},
      {"So sad to see this still happens.", "leading-exaggerators", AffectClass::kSaddened},
      {"What a beautiful baby!", "exclamatory-interrogatives", AffectClass::kAdoring},
  };
  const std::pair<const char *, AffectClass> per_class[] = {
      {"He is the cutest thing ever.", AffectClass::kAdoring},
      {"That was soooo funny.", AffectClass::kAmused},
      {"This is really fantastic!", AffectClass::kApproving},
      {"Really looking forward to this!", AffectClass::kExcited},
      {"I'm so frustrated to see this.", AffectClass::kAngered},
      {"So sad from reading this.", AffectClass::kSaddened},
      {"Extremely worried about finals.", AffectClass::kScared},
  };
  int ok = 0, total = 0;
  std::string failed;
  for (const Golden &g : six) {
    ++total;
    CommentLabel l = m.LabelComment("c", g.text);
    if (l.matches.size() == 1 && l.matches[0].pattern_name == g.pattern &&
        l.classes == ClassSet{g.affect}) {
      ++ok;
    } else {
      failed += std::string(" [") + g.text + "]";
    }
  }
  for (const auto &[text, affect] : per_class) {
    ++total;
    if (m.LabelComment("c", text).classes == ClassSet{affect}) {
      ++ok;
    } else {
      failed += std::string(" [") + text + "]";
    }
  }
  double secs = Seconds(start);
  std::ostringstream d;
  d << ok << "/" << total << " sentences, " << secs << "s" << failed;
  return {ok == total && secs < 1.0, d.str()};
}

// 2
Result Combinatorics() {
  InstantiationCount a = CountInstantiations(23, 163, 37);
  InstantiationCount b = CountInstantiations(6, 40, 3);
  std::ostringstream d;
  d << "(23,163,37) -> (" << a.expressions << ", " << a.instantiations << ")";
  // Quoted as roughly 3500 and 130k: one significant figure.
  bool quoted = a.expressions / 1000 == 3 && a.instantiations / 100000 == 1;
  return {a == InstantiationCount{3749, 138713} && b == InstantiationCount{240, 720} && quoted,
          d.str()};
}

// 3
Result PreprocessTable() {
  std::vector<std::string> failed;
  int failures = testing::PreprocessCaseFailures(testing::SeedMatcher(), &failed);
  std::ostringstream d;
  d << testing::kCases.size() - failures << "/" << testing::kCases.size() << " cases";
  for (const std::string &f : failed) d << " [" << f << "]";
  return {testing::kCases.size() == 50 && failures == 0, d.str()};
}

// 4
Result AggregationProps() {
  testing::Tally t = testing::AggregationProperties(testing::SeedMatcher(), 20260101, 1000);
  std::ostringstream d;
  d << t.cases << " corpora, " << t.violations << " violations";
  return {t.cases >= 1000 && t.violations == 0 && t.informative > 0, d.str()};
}

// 5
Result ExpansionOracle() {
  auto start = Clock::now();
  testing::Tally t = testing::ExpansionOracle(testing::SeedMatcher(), 77, 40);
  double secs = Seconds(start);
  std::ostringstream d;
  d << t.cases << " corpora, " << t.violations << " mismatches, " << secs << "s";
  return {t.violations == 0 && t.informative > 0 && secs < 5.0, d.str()};
}

// 6: "adorable" exclusive to adoring posts, "i feel like" spread over
// amused and saddened posts.
Result TableReplay() {
  const Matcher &m = testing::SeedMatcher();
  Corpus corpus;
  auto add_post = [&](const std::string &id, const std::string &trigger, int triggers,
                      const std::string &filler, int fillers) {
    corpus.posts.push_back({id, "synthetic post " + id});
    int n = 0;
    for (int i = 0; i < triggers; ++i) {
      corpus.comments.push_back({id + "-" + std::to_string(n++), id, trigger});
    }
    for (int i = 0; i < fillers; ++i) {
      corpus.comments.push_back({id + "-" + std::to_string(n++), id, filler});
    }
  };
  for (int p = 0; p < 4; ++p) add_post("ador" + std::to_string(p), "this is so cute", 5, "adorable", 5);
  for (int p = 0; p < 2; ++p) {
    add_post("amus" + std::to_string(p), "this is so funny", 5, "i feel like crying", 2);
    add_post("sadd" + std::to_string(p), "this is so sad", 5, "i feel like crying", 2);
  }
  ExpansionConfig cfg;
  cfg.f_lexicon = 10;
  cfg.f_pattern = 3;
  auto labeled = AnnotateCorpus(corpus, m, AggregationConfig{});
  NgramStats stats = CollectNgrams(labeled, corpus, m, cfg);
  auto lex = ProposeLexiconCandidates(stats, cfg);
  auto pat = ProposePatternCandidates(stats, cfg);

  int adorable_lex = 0, adorable_pat = 0, feel_lex = 0, feel_pat = 0;
  for (const auto &c : lex) {
    adorable_lex += c.ngram == "adorable" && c.affect == AffectClass::kAdoring;
    feel_lex += c.ngram == "i feel like";
  }
  for (const auto &c : pat) {
    adorable_pat += c.ngram == "adorable";
    feel_pat += c.ngram == "i feel like" &&
                c.classes == ClassSet{AffectClass::kAmused, AffectClass::kSaddened};
  }
  std::ostringstream d;
  d << "lexicon candidates: " << lex.size() << " (adorable x" << adorable_lex
    << "), pattern candidates: " << pat.size() << " (i feel like x" << feel_pat << ")";
  return {lex.size() == 1 && adorable_lex == 1 && adorable_pat == 0 && feel_lex == 0 &&
              feel_pat == 1,
          d.str()};
}

// 7
Result MetricsOracles() {
  testing::Tally fleiss = testing::FleissOracle(11, 100);
  testing::Tally agreement = testing::AgreementOracle(5, 300);
  testing::Tally inter = testing::IntersectionOracle(9, 200);
  std::ostringstream d;
  d << "kappa " << fleiss.informative << " tables/" << fleiss.violations << " off; agreement "
    << agreement.cases << " fixtures/" << agreement.violations << " off; intersection "
    << inter.cases << " fixtures/" << inter.violations << " off";
  return {fleiss.informative >= 100 && fleiss.violations == 0 && agreement.violations == 0 &&
              inter.violations == 0,
          d.str()};
}

// 8
Result Sweep() {
  testing::Tally t = testing::SweepConsistency(testing::SeedMatcher(), 21, 20);
  std::ostringstream d;
  d << t.cases << " corpora x t=0..9, " << t.violations << " violations";
  return {t.violations == 0 && t.informative > 0, d.str()};
}

// 9
Result Ensemble() {
  testing::Tally t = testing::EnsembleOracle(13, 300);
  std::ostringstream d;
  d << t.cases << " fixtures, " << t.violations << " mismatches";
  return {t.violations == 0 && t.informative > 0, d.str()};
}

// Synthetic resources at the expanded scale: 23 patterns, 163 indicators.
std::string ScalePatterns() {
  std::string dsl = ReadFile(testing::DataPath("seed/patterns.care"));
  dsl +=
      "you-pronoun: {you} {are|were}? E* I+\n"
      "it-pronoun: {it} {is|was}? E* I+\n"
      "past-demonstrative: {this|that} {was|were} E* I+\n"
      "made-me: {this|that} {made|makes} {me} E* I+\n"
      "feel-self: {i|we} {feel|felt} E* I+\n"
      "looks: {this|that|it} {looks|seems} E* I+\n"
      "everyone: {everyone|everybody} {is|was}? E* I+\n"
      "people-are: {people} {are|were} E+ I+\n"
      "im-feeling: {im} {feeling}? E* I+\n"
      "sounds: {sounds|sound} E* I+\n"
      "what-an: {what an} E* I+\n"
      "such-a: {such a|such an} E* I+\n"
      "you-look: {you} {look|looked} E* I+\n"
      "they-look: {they} {look|looked|seem} E* I+\n"
      "how-very: {how very} E* I+\n"
      "got-me: {got me} E* I+\n"
      "so-damn: {so damn} I+\n";
  return dsl;
}

std::string SyntheticWord(int i) {
  std::string w = "zq";
  do {
    w.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return w;
}

std::string ScaleLexicon() {
  std::string tsv = ReadFile(testing::DataPath("seed/lexicon.tsv"));
  for (int i = 0; i < 123; ++i) {
    std::string indicator = SyntheticWord(i);
    if (i % 10 == 3) indicator += " " + SyntheticWord(i + 500);
    if (i % 20 == 7) indicator += " " + SyntheticWord(i + 900);
    tsv += indicator + "\t" + std::string(ClassName(kAllClasses[i % kNumClasses])) + "\n";
  }
  return tsv;
}

Corpus ScaleCorpus(const Lexicon &lexicon, size_t comments, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> indicators;
  for (const LexiconEntry &e : lexicon.Entries()) indicators.push_back(e.Key());
  const std::vector<std::string> heads = {
      "this is", "that was", "i am", "we are", "they are", "he is", "some people are",
      "what a", "how", "you are", "it was", "this made me", "i feel", "it looks",
      "everyone is", "such a", "sounds", "so", "really"};
  const std::vector<std::string> exaggerators = {"", "", "so ", "really ", "very ", "so very ",
                                                 "extremely ", "sooooo "};
  std::vector<std::string> vocab;
  for (int i = 0; i < 2000; ++i) vocab.push_back("w" + std::to_string(i));

  Corpus corpus;
  const size_t per_post = 20;
  size_t posts = (comments + per_post - 1) / per_post;
  for (size_t p = 0; p < posts; ++p) {
    corpus.posts.push_back({"t" + std::to_string(p), "synthetic throughput post " + std::to_string(p)});
  }
  corpus.comments.reserve(comments);
  for (size_t i = 0; i < comments; ++i) {
    std::string text;
    int filler = 3 + static_cast<int>(rng() % 10);
    for (int w = 0; w < filler; ++w) text += vocab[rng() % vocab.size()] + " ";
    switch (rng() % 10) {
      case 0:
      case 1:
      case 2:
      case 3:
        text += ". " + heads[rng() % heads.size()] + " " + exaggerators[rng() % exaggerators.size()] +
                indicators[rng() % indicators.size()] + "!";
        break;
      case 4:
        text += ". this is not " + indicators[rng() % indicators.size()];
        break;
      case 5:
        text += ". i was " + indicators[rng() % indicators.size()] + " but it is fine";
        break;
      default:
        break;
    }
    corpus.comments.push_back(
        {"k" + std::to_string(i), corpus.posts[i / per_post].id, std::move(text)});
  }
  return corpus;
}

// 10
Result Throughput(size_t comments) {
  std::vector<CarePattern> patterns = ParsePatternDsl(ScalePatterns());
  Lexicon lexicon = ParseLexicon(ScaleLexicon());
  PipelineConfig cfg = testing::SeedConfig();
  WordLists words = LoadWordLists(cfg.exaggerators_path, cfg.negations_path, cfg.contrast_path);
  Matcher matcher(patterns, lexicon, words, cfg.matcher);
  Corpus corpus = ScaleCorpus(lexicon, comments, 99);

  fs::path root = fs::temp_directory_path() / "care_acceptance_throughput";
  fs::remove_all(root);
  const int workers = std::max(4, static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::pair<int, double>> timings;
  std::vector<std::string> outputs;
  PipelineSummary summary;
  for (int parallelism : {1, workers}) {
    PipelineConfig run = cfg;
    run.parallelism = parallelism;
    run.output_dir = (root / ("j" + std::to_string(parallelism))).string();
    auto start = Clock::now();
    summary = RunPipeline(run, corpus, matcher);
    timings.push_back({parallelism, Seconds(start)});
    outputs.push_back(ReadFile(summary.annotations_path));
  }
  fs::remove_all(root);

  bool identical = outputs[0] == outputs[1];
  double worst = std::max(timings[0].second, timings[1].second);
  std::ostringstream d;
  d << corpus.comments.size() << " comments, " << patterns.size() << " patterns, "
    << lexicon.size() << " indicators; ";
  for (const auto &[j, s] : timings) d << "j=" << j << " " << s << "s; ";
  d << summary.comments_matched << " matched, " << summary.posts_annotated << " posts labeled; "
    << (identical ? "outputs identical" : "OUTPUTS DIFFER");
  return {patterns.size() == 23 && lexicon.size() == 163 && identical && worst < 120.0 &&
              summary.posts_annotated > 0,
          d.str()};
}

}  // namespace

int main(int argc, char **argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"seed pattern golden suite", SeedGolden},
      {"instantiation combinatorics", Combinatorics},
      {"preprocessing rule table", PreprocessTable},
      {"aggregation properties", AggregationProps},
      {"expansion brute-force oracle", ExpansionOracle},
      {"candidate replay (adorable / i feel like)", TableReplay},
      {"metrics oracles", MetricsOracles},
      {"threshold sweep consistency", Sweep},
      {"ensemble union semantics", Ensemble},
      {"throughput and determinism", [quick] { return Throughput(quick ? 20000 : 1000000); }},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception &e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " -- " << r.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed") << "\n";
  return failed == 0 ? 0 : 1;
}
