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

#ifndef CARE_PIPELINE_H_
#define CARE_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "care/aggregate.h"
#include "care/corpus.h"
#include "care/expand.h"
#include "care/pattern.h"

namespace care {

struct PipelineConfig {
  // Resources.
  std::string patterns_path;
  std::string lexicon_path;
  std::string exaggerators_path;
  std::string negations_path;
  std::string contrast_path;
  std::string exclusions_path;     // optional
  std::string class_mapping_path;  // optional

  // Corpus and outputs.
  std::string posts_path;
  std::string comments_path;
  std::string output_dir = "care_out";

  AggregationConfig aggregation;
  ExpansionConfig expansion;
  MatcherOptions matcher;

  int parallelism = 1;
  uint64_t seed = 0;
  // When non-zero, this many match records are sampled (with `seed`) into
  // samples.jsonl for manual inspection.
  size_t sample_matches = 0;
  bool write_matches = false;  // also write matches.jsonl

  // Checks thresholds and that every referenced file exists (IoError
  // naming the path otherwise). `need_corpus` also requires posts/comments.
  void Validate(bool need_corpus = true) const;
};

// Resource paths pointing at the seed files in `data_dir`
// (data_dir/seed/patterns.care etc.).
PipelineConfig DefaultPipelineConfig(const std::string &data_dir);

// Overlays a JSON config onto `base`. Relative paths are resolved against
// `base_dir`. Unknown keys are rejected with ValidationError.
//
//   {"patterns": "...", "lexicon": "...", "exaggerators": "...",
//    "negations": "...", "contrast": "...", "exclusions": "...",
//    "class_mapping": "...", "posts": "...", "comments": "...",
//    "output_dir": "...",
//    "aggregation": {"threshold": 5, "per_class": {"scared": 3},
//                    "min_post_chars": 10},
//    "expansion": {"f_lexicon": 1000, "f_pattern": 100,
//                  "count_distinct_comments": false},
//    "max_gap": 2, "parallelism": 4, "seed": 7, "sample_matches": 0,
//    "write_matches": false}
PipelineConfig ParsePipelineConfig(std::string_view json_text, const std::string &base_dir,
                                   PipelineConfig base);
PipelineConfig LoadPipelineConfig(const std::string &path, PipelineConfig base);

// Loads patterns, lexicon and word lists named by `config`.
Matcher BuildMatcher(const PipelineConfig &config);
// Loads the exclusion list (if any) into config.aggregation.
void LoadExclusionsInto(PipelineConfig *config);

struct PipelineSummary {
  size_t posts_total = 0;
  size_t comments_total = 0;
  size_t comments_matched = 0;
  size_t dangling_comments = 0;
  size_t posts_annotated = 0;
  SupportCounts per_class{};
  double elapsed_seconds = 0;
  std::string annotations_path;

  // Stable JSON rendering; elapsed time is omitted when `with_timing` is
  // false.
  std::string ToJson(bool with_timing = true) const;
};

// Loads resources and corpus, annotates, and writes
// output_dir/annotations.jsonl (plus matches.jsonl / samples.jsonl when
// requested). Every file is written via write-then-rename.
PipelineSummary RunPipeline(const PipelineConfig &config);

// Same, on an in-memory corpus; returns the annotations as well.
PipelineSummary RunPipeline(const PipelineConfig &config, const Corpus &corpus,
                            const Matcher &matcher,
                            std::vector<PostAnnotation> *annotations_out = nullptr);

// One match record per line, in post_id / input order.
std::string SerializeMatchesJsonl(const LabeledCorpus &labeled);

// Picks `count` match records uniformly at random with a fixed seed.
std::vector<MatchRecord> SampleMatches(const LabeledCorpus &labeled, size_t count,
                                       uint64_t seed);

enum class ExportFormat { kClasses, kValence };

struct TrainingExample {
  std::string post_id;
  std::string text;
  std::vector<std::string> labels;
};

struct ExportResult {
  std::vector<TrainingExample> examples;
  size_t skipped_missing_post = 0;
  size_t skipped_empty = 0;

  std::string ToJsonl() const;
};

// Joins annotations with post text. In valence mode the classes collapse to
// "positive" / "negative". Annotations whose post is unknown are skipped
// and counted.
ExportResult ExportTrainingData(std::span<const PostAnnotation> annotations,
                                std::span<const Post> posts, ExportFormat format);

}  // namespace care

#endif  // CARE_PIPELINE_H_
