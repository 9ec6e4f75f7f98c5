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

#ifndef CARE_AGGREGATE_H_
#define CARE_AGGREGATE_H_

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "care/corpus.h"
#include "care/lexicon.h"
#include "care/pattern.h"
#include "care/taxonomy.h"

namespace care {

// (pattern name, indicator text) pairs whose matches are dropped before
// aggregation.
class ExclusionList {
 public:
  void Add(std::string pattern, std::string_view indicator);
  bool Contains(std::string_view pattern, std::string_view indicator) const;
  bool Excludes(const MatchRecord &r) const {
    return !pairs_.empty() && Contains(r.pattern_name, r.IndicatorText());
  }
  bool empty() const { return pairs_.empty(); }
  size_t size() const { return pairs_.size(); }
  const std::set<std::pair<std::string, std::string>> &pairs() const {
    return pairs_;
  }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

// `pattern_name<TAB>indicator` rows; '#' comments allowed.
ExclusionList ParseExclusions(std::string_view text);
ExclusionList LoadExclusions(const std::string &path);

struct AggregationConfig {
  int default_threshold = 5;
  std::map<AffectClass, int> per_class_thresholds;
  ExclusionList exclusions;
  size_t min_post_chars = 10;

  int Threshold(AffectClass c) const;
  // Smallest threshold over all classes.
  int MinThreshold() const;

  // Thresholds must be >= 1 and exclusions must name patterns known to
  // `matcher` (when given). Throws ValidationError.
  void Validate(const Matcher *matcher = nullptr) const;
};

using SupportCounts = std::array<int, kNumClasses>;

struct PostAnnotation {
  std::string post_id;
  // Distinct supporting comments per class.
  SupportCounts support{};
  ClassSet labels;

  int Support(AffectClass c) const { return support[static_cast<int>(c)]; }
  friend bool operator==(const PostAnnotation &, const PostAnnotation &) = default;
};

struct CommentClasses {
  std::string comment_id;
  ClassSet classes;
};

// True when `support` clears threshold `t`. A class never holds with zero
// supporting comments, so t = 0 behaves like t = 1.
inline bool ClearsThreshold(int support, int t) { return support > 0 && support >= t; }

// Counts, per class, the distinct comments carrying it (a comment id listed
// twice counts once) and keeps classes whose support clears their
// threshold. Exclusions and min_post_chars are not applied here.
PostAnnotation AggregatePost(std::string_view post_id,
                             std::span<const CommentClasses> comments,
                             const AggregationConfig &config);

// A comment with its raw (pre-exclusion) match records.
struct LabeledComment {
  std::string comment_id;
  std::vector<MatchRecord> matches;

  // Union of classes over matches not removed by `exclusions`.
  ClassSet Classes(const ExclusionList &exclusions) const;
};

struct LabeledPost {
  std::string post_id;
  size_t text_chars = 0;  // UTF-8 code points of the post text
  std::vector<LabeledComment> comments;  // input order
};

// Output of matching every comment of a corpus, grouped by post.
struct LabeledCorpus {
  std::vector<LabeledPost> posts;  // sorted by post_id
  size_t total_comments = 0;
  size_t matched_comments = 0;
  size_t dangling_comments = 0;  // comments whose post_id is unknown
  size_t skipped_comments = 0;   // not matched because of min_comments

  std::vector<CommentClasses> CommentClassesOf(const LabeledPost &post,
                                               const ExclusionList &exclusions) const;
};

struct LabelOptions {
  // Worker threads for comment matching; output does not depend on it.
  int parallelism = 1;
  // Posts with fewer comments are not matched (their comments are kept
  // with empty match lists and counted in skipped_comments).
  size_t min_comments = 0;
  // Posts shorter than this many characters are not matched either.
  size_t min_post_chars = 0;
};

LabeledCorpus LabelCorpus(const Corpus &corpus, const Matcher &matcher,
                          const LabelOptions &options = {});

// Applies exclusions, thresholds and min_post_chars. Only posts with a
// non-empty label set are returned, ordered by post_id.
std::vector<PostAnnotation> AggregateCorpus(const LabeledCorpus &labeled,
                                            const AggregationConfig &config);

// LabelCorpus + AggregateCorpus, skipping matching work for posts that
// cannot be emitted.
std::vector<PostAnnotation> AnnotateCorpus(const Corpus &corpus, const Matcher &matcher,
                                           const AggregationConfig &config,
                                           int parallelism = 1,
                                           LabeledCorpus *labeled_out = nullptr);

// Annotations as JSONL: {"post_id", "labels", "support"}.
std::string SerializeAnnotationsJsonl(std::span<const PostAnnotation> annotations);
// Throws ParseError, or ValidationError on a label outside the taxonomy.
std::vector<PostAnnotation> ParseAnnotationsJsonl(std::string_view text);
std::vector<PostAnnotation> LoadAnnotations(const std::string &path);

// Comment classes for one post, as consumed by the ensemble.
struct PostCommentClasses {
  std::string post_id;
  std::vector<CommentClasses> comments;
};

struct EnsembleAnnotation {
  std::string post_id;
  SupportCounts care_support{};
  SupportCounts external_support{};
  ClassSet care_labels;
  ClassSet external_labels;
  ClassSet labels;  // care_labels | external_labels
};

struct EnsembleResult {
  std::vector<EnsembleAnnotation> posts;  // input order
  // External label names with no CARE class, with occurrence counts.
  std::map<std::string, int> unmapped;
};

// Fuses pattern-based comment labels with external classifier labels.
// External names are mapped through `mapping` and counted per distinct
// comment; each side is thresholded on its own and the label sets unioned.
EnsembleResult EnsembleAnnotate(std::span<const PostCommentClasses> care,
                                const ExternalCommentLabels &external,
                                const ClassMapping &mapping, int care_threshold = 5,
                                int external_threshold = 4);

}  // namespace care

#endif  // CARE_AGGREGATE_H_
