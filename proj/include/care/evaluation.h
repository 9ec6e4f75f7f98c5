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

#ifndef CARE_EVALUATION_H_
#define CARE_EVALUATION_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "care/aggregate.h"
#include "care/taxonomy.h"

namespace care {

// Human labels for one post, one class set per annotator. "None of the
// above" answers are empty sets.
struct GoldAnnotation {
  std::string post_id;
  std::vector<ClassSet> annotators;

  // Number of annotators that chose `c`.
  int Votes(AffectClass c) const;
  // Classes chosen by at least k annotators.
  ClassSet ConsensusAt(int k) const;
};

// gold.jsonl: {"post_id": str, "annotators": [[str], ...]}. Accepts
// "none", "none of the above" and "none-of-the-above" as the explicit empty
// answer. Throws ParseError / ValidationError.
std::vector<GoldAnnotation> ParseGoldJsonl(std::string_view text);
std::vector<GoldAnnotation> LoadGold(const std::string &path);

struct AgreementRow {
  int k = 0;
  double any = 0;    // % posts with >= 1 predicted label confirmed by >= k
  double all = 0;    // % posts with every predicted label confirmed by >= k
  double other = 0;  // % posts with some unpredicted label chosen by >= k
};

struct AgreementReport {
  size_t posts = 0;
  std::vector<AgreementRow> rows;  // k = 1..max_k
};

// Joins gold and predictions on post_id; posts without a (non-empty)
// prediction are skipped. Throws ValidationError if nothing overlaps.
AgreementReport AgreementRates(std::span<const GoldAnnotation> gold,
                               std::span<const PostAnnotation> predicted, int max_k = 3);

// Fleiss' kappa for an items x categories table of rating counts. Every row
// must sum to the same number of raters n >= 2. Returns nullopt when the
// expected agreement is 1 (all ratings in a single category).
std::optional<double> FleissKappa(std::span<const std::vector<int>> counts);

// Kappa for one class from presence/absence of the label per annotator.
// Throws ValidationError if posts have differing annotator counts.
std::optional<double> FleissKappa(std::span<const GoldAnnotation> gold, AffectClass c);

struct KappaReport {
  std::array<std::optional<double>, kNumClasses> per_class;
  std::optional<double> mean;  // over non-degenerate classes
};

KappaReport FleissKappaAllClasses(std::span<const GoldAnnotation> gold);

struct PRPoint {
  AffectClass affect = AffectClass::kAdoring;
  int threshold = 0;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  std::optional<double> precision;  // null without predicted positives
  std::optional<double> recall;     // null without gold positives

  friend bool operator==(const PRPoint &, const PRPoint &) = default;
};

// Per-class precision/recall of predicted labels against gold consensus at
// level k, over every gold post (a post without a prediction predicts
// nothing). `threshold` is only copied into the points.
std::vector<PRPoint> PrecisionRecall(std::span<const GoldAnnotation> gold,
                                     std::span<const PostAnnotation> predicted, int k,
                                     int threshold);

// Re-aggregates comment labels at every t in [t_min, t_max] and scores each
// class against gold consensus at level k.
std::vector<PRPoint> ThresholdSweep(std::span<const GoldAnnotation> gold,
                                    std::span<const PostCommentClasses> comment_labels,
                                    int t_min, int t_max, int k = 2);

struct MatchFpRow {
  std::string pattern;
  std::string indicator;
  ClassSet classes;
  int count = 0;            // gold posts supported by the pair
  int false_positives = 0;  // of those, posts whose consensus has none of `classes`
  double fp_rate = 0;
};

struct MatchFpReport {
  std::vector<MatchFpRow> rows;  // count >= min_support, sorted by pattern, indicator
  int suppressed = 0;
  // Per class, sum of pair counts before suppression.
  SupportCounts class_totals{};
};

MatchFpReport MatchFpRates(const LabeledCorpus &labeled, std::span<const GoldAnnotation> gold,
                           int k = 2, int min_support = 10);

using LabelSets = std::map<std::string, std::set<std::string>>;

struct IntersectionReport {
  size_t items = 0;
  std::map<std::string, int> hits;         // annotated label also predicted
  std::map<std::string, int> occurrences;  // annotated label seen
  std::map<std::string, double> rate;      // hits / occurrences, in percent
  double macro_average = 0;
  double micro_average = 0;
};

// For every annotated label of every item present in both sources, checks
// whether the predicted set of that item contains it. Throws
// ValidationError if the sources share no item.
IntersectionReport LabelIntersectionRate(const LabelSets &annotated, const LabelSets &predicted);

// Row-wise average of per-label rates over several reports; labels missing
// from a report are averaged over the reports that have them.
std::map<std::string, double> RowwiseAverage(std::span<const IntersectionReport> reports);

struct PrevalenceReport {
  size_t posts = 0;
  SupportCounts per_class{};
  std::map<int, int> label_count_histogram;  // labels per post -> posts
};

PrevalenceReport ClassPrevalence(std::span<const PostAnnotation> annotations);

// Report renderers.
std::string AgreementTsv(const AgreementReport &report);
std::string AgreementJson(const AgreementReport &report);
std::string KappaTsv(const KappaReport &report);
std::string KappaJson(const KappaReport &report);
std::string SweepCsv(std::span<const PRPoint> points);
std::string SweepJson(std::span<const PRPoint> points);
std::string MatchFpTsv(const MatchFpReport &report);
std::string MatchFpJson(const MatchFpReport &report);
std::string IntersectionTsv(const IntersectionReport &report);
std::string IntersectionJson(const IntersectionReport &report);
std::string PrevalenceTsv(const PrevalenceReport &report);
std::string PrevalenceJson(const PrevalenceReport &report);

}  // namespace care

#endif  // CARE_EVALUATION_H_
