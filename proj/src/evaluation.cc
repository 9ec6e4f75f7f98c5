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

#include "care/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include <json.hpp>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

using ojson = nlohmann::ordered_json;

std::string Fixed(double value, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string FixedOrEmpty(const std::optional<double> &value, std::string_view empty) {
  return value ? Fixed(*value) : std::string(empty);
}

ojson OptionalJson(const std::optional<double> &value) {
  return value ? ojson(*value) : ojson(nullptr);
}

std::string Dump(const ojson &j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

bool IsNoneAnswer(std::string_view name) {
  std::string lowered = ToLower(Trim(name));
  return lowered == "none" || lowered == "none of the above" ||
         lowered == "none-of-the-above";
}

std::unordered_map<std::string_view, const GoldAnnotation *> IndexGold(
    std::span<const GoldAnnotation> gold) {
  std::unordered_map<std::string_view, const GoldAnnotation *> index;
  for (const GoldAnnotation &g : gold) index.emplace(g.post_id, &g);
  return index;
}

}  // namespace

int GoldAnnotation::Votes(AffectClass c) const {
  return static_cast<int>(std::count_if(annotators.begin(), annotators.end(),
                                        [c](ClassSet s) { return s.Contains(c); }));
}

ClassSet GoldAnnotation::ConsensusAt(int k) const {
  ClassSet out;
  for (AffectClass c : kAllClasses) {
    if (Votes(c) >= k) out.Insert(c);
  }
  return out;
}

std::vector<GoldAnnotation> ParseGoldJsonl(std::string_view text) {
  std::vector<GoldAnnotation> gold;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object() || !obj.contains("post_id") || !obj["post_id"].is_string() ||
        !obj.contains("annotators") || !obj["annotators"].is_array()) {
      throw ParseError("expected {\"post_id\": str, \"annotators\": [[str], ...]}", line_no);
    }
    GoldAnnotation g;
    g.post_id = obj["post_id"].get<std::string>();
    for (const auto &answer : obj["annotators"]) {
      if (!answer.is_array()) throw ParseError("each annotator answer must be an array", line_no);
      ClassSet set;
      for (const auto &name : answer) {
        if (!name.is_string()) throw ParseError("labels must be strings", line_no);
        std::string label = name.get<std::string>();
        if (IsNoneAnswer(label)) continue;
        auto c = ParseClass(label);
        if (!c) {
          throw ValidationError("line " + std::to_string(line_no) + ": unknown class '" +
                                label + "'");
        }
        set.Insert(*c);
      }
      g.annotators.push_back(set);
    }
    if (g.annotators.empty()) throw ValidationError("line " + std::to_string(line_no) +
                                                    ": post has no annotators");
    gold.push_back(std::move(g));
  }
  return gold;
}

std::vector<GoldAnnotation> LoadGold(const std::string &path) {
  return ParseGoldJsonl(ReadFile(path));
}

AgreementReport AgreementRates(std::span<const GoldAnnotation> gold,
                               std::span<const PostAnnotation> predicted, int max_k) {
  auto index = IndexGold(gold);
  AgreementReport report;
  std::vector<int> any(max_k + 1, 0), all(max_k + 1, 0), other(max_k + 1, 0);
  for (const PostAnnotation &p : predicted) {
    if (p.labels.Empty()) continue;
    auto it = index.find(p.post_id);
    if (it == index.end()) continue;
    ++report.posts;
    for (int k = 1; k <= max_k; ++k) {
      ClassSet confirmed = it->second->ConsensusAt(k);
      if (!(p.labels & confirmed).Empty()) ++any[k];
      if (p.labels.SubsetOf(confirmed)) ++all[k];
      if (!confirmed.SubsetOf(p.labels)) ++other[k];
    }
  }
  if (report.posts == 0) throw ValidationError("no overlapping posts");
  double n = static_cast<double>(report.posts);
  for (int k = 1; k <= max_k; ++k) {
    report.rows.push_back({k, 100.0 * any[k] / n, 100.0 * all[k] / n, 100.0 * other[k] / n});
  }
  return report;
}

std::optional<double> FleissKappa(std::span<const std::vector<int>> counts) {
  if (counts.empty()) throw ValidationError("kappa needs at least one item");
  const size_t categories = counts.front().size();
  int raters = 0;
  for (int v : counts.front()) raters += v;
  if (raters < 2) throw ValidationError("kappa needs at least two raters per item");

  std::vector<double> category_totals(categories, 0.0);
  double agreement_sum = 0;
  for (const std::vector<int> &row : counts) {
    if (row.size() != categories) throw ValidationError("ragged kappa table");
    int row_raters = 0;
    double squares = 0;
    for (size_t j = 0; j < categories; ++j) {
      if (row[j] < 0) throw ValidationError("negative rating count");
      row_raters += row[j];
      squares += static_cast<double>(row[j]) * row[j];
      category_totals[j] += row[j];
    }
    if (row_raters != raters) {
      throw ValidationError("every item must have the same number of raters");
    }
    agreement_sum += (squares - raters) / (static_cast<double>(raters) * (raters - 1));
  }
  const double items = static_cast<double>(counts.size());
  const double observed = agreement_sum / items;
  double expected = 0;
  for (double total : category_totals) {
    double p = total / (items * raters);
    expected += p * p;
  }
  if (expected >= 1.0 - 1e-12) return std::nullopt;
  return (observed - expected) / (1.0 - expected);
}

std::optional<double> FleissKappa(std::span<const GoldAnnotation> gold, AffectClass c) {
  std::vector<std::vector<int>> counts;
  counts.reserve(gold.size());
  for (const GoldAnnotation &g : gold) {
    int present = g.Votes(c);
    counts.push_back({present, static_cast<int>(g.annotators.size()) - present});
  }
  return FleissKappa(counts);
}

KappaReport FleissKappaAllClasses(std::span<const GoldAnnotation> gold) {
  KappaReport report;
  double sum = 0;
  int defined = 0;
  for (AffectClass c : kAllClasses) {
    auto kappa = FleissKappa(gold, c);
    report.per_class[static_cast<int>(c)] = kappa;
    if (kappa) {
      sum += *kappa;
      ++defined;
    }
  }
  if (defined > 0) report.mean = sum / defined;
  return report;
}

std::vector<PRPoint> PrecisionRecall(std::span<const GoldAnnotation> gold,
                                     std::span<const PostAnnotation> predicted, int k,
                                     int threshold) {
  std::unordered_map<std::string_view, ClassSet> labels_of;
  for (const PostAnnotation &p : predicted) labels_of[p.post_id] |= p.labels;

  std::vector<PRPoint> points;
  for (AffectClass c : kAllClasses) {
    PRPoint point;
    point.affect = c;
    point.threshold = threshold;
    for (const GoldAnnotation &g : gold) {
      bool truth = g.ConsensusAt(k).Contains(c);
      auto it = labels_of.find(g.post_id);
      bool guess = it != labels_of.end() && it->second.Contains(c);
      if (guess && truth) ++point.true_positives;
      if (guess && !truth) ++point.false_positives;
      if (!guess && truth) ++point.false_negatives;
    }
    int predicted_positive = point.true_positives + point.false_positives;
    int actual_positive = point.true_positives + point.false_negatives;
    if (predicted_positive > 0) {
      point.precision = static_cast<double>(point.true_positives) / predicted_positive;
    }
    if (actual_positive > 0) {
      point.recall = static_cast<double>(point.true_positives) / actual_positive;
    }
    points.push_back(point);
  }
  return points;
}

std::vector<PRPoint> ThresholdSweep(std::span<const GoldAnnotation> gold,
                                    std::span<const PostCommentClasses> comment_labels,
                                    int t_min, int t_max, int k) {
  if (t_min < 0 || t_max < t_min) throw ValidationError("invalid threshold range");
  std::vector<PRPoint> points;
  for (int t = t_min; t <= t_max; ++t) {
    AggregationConfig config;
    config.default_threshold = t;
    std::vector<PostAnnotation> annotations;
    annotations.reserve(comment_labels.size());
    for (const PostCommentClasses &post : comment_labels) {
      annotations.push_back(AggregatePost(post.post_id, post.comments, config));
    }
    for (PRPoint &p : PrecisionRecall(gold, annotations, k, t)) points.push_back(p);
  }
  return points;
}

MatchFpReport MatchFpRates(const LabeledCorpus &labeled, std::span<const GoldAnnotation> gold,
                           int k, int min_support) {
  auto index = IndexGold(gold);
  std::map<std::pair<std::string, std::string>, MatchFpRow> rows;
  for (const LabeledPost &post : labeled.posts) {
    auto it = index.find(post.post_id);
    if (it == index.end()) continue;
    ClassSet consensus = it->second->ConsensusAt(k);

    std::map<std::pair<std::string, std::string>, ClassSet> pairs;
    for (const LabeledComment &c : post.comments) {
      for (const MatchRecord &r : c.matches) {
        pairs[{r.pattern_name, r.IndicatorText()}] |= r.classes;
      }
    }
    for (const auto &[key, classes] : pairs) {
      MatchFpRow &row = rows[key];
      row.pattern = key.first;
      row.indicator = key.second;
      row.classes |= classes;
      ++row.count;
      if ((consensus & classes).Empty()) ++row.false_positives;
    }
  }

  MatchFpReport report;
  for (auto &[key, row] : rows) {
    for (AffectClass c : row.classes.ToVector()) {
      report.class_totals[static_cast<int>(c)] += row.count;
    }
    if (row.count < min_support) {
      ++report.suppressed;
      continue;
    }
    row.fp_rate = static_cast<double>(row.false_positives) / row.count;
    report.rows.push_back(std::move(row));
  }
  return report;
}

IntersectionReport LabelIntersectionRate(const LabelSets &annotated, const LabelSets &predicted) {
  IntersectionReport report;
  for (const auto &[item, labels] : annotated) {
    auto it = predicted.find(item);
    if (it == predicted.end()) continue;
    ++report.items;
    for (const std::string &label : labels) {
      ++report.occurrences[label];
      int &hits = report.hits[label];
      if (it->second.contains(label)) ++hits;
    }
  }
  if (report.items == 0) throw ValidationError("no overlapping items");
  int total_hits = 0;
  int total = 0;
  double rate_sum = 0;
  for (const auto &[label, seen] : report.occurrences) {
    int hits = report.hits[label];
    double rate = 100.0 * hits / seen;
    report.rate[label] = rate;
    rate_sum += rate;
    total_hits += hits;
    total += seen;
  }
  if (!report.rate.empty()) report.macro_average = rate_sum / report.rate.size();
  if (total > 0) report.micro_average = 100.0 * total_hits / total;
  return report;
}

std::map<std::string, double> RowwiseAverage(std::span<const IntersectionReport> reports) {
  std::map<std::string, std::pair<double, int>> sums;
  for (const IntersectionReport &r : reports) {
    for (const auto &[label, rate] : r.rate) {
      sums[label].first += rate;
      ++sums[label].second;
    }
  }
  std::map<std::string, double> out;
  for (const auto &[label, sum] : sums) out[label] = sum.first / sum.second;
  return out;
}

PrevalenceReport ClassPrevalence(std::span<const PostAnnotation> annotations) {
  PrevalenceReport report;
  for (const PostAnnotation &a : annotations) {
    ++report.posts;
    for (AffectClass c : a.labels.ToVector()) ++report.per_class[static_cast<int>(c)];
    ++report.label_count_histogram[a.labels.Size()];
  }
  return report;
}

std::string AgreementTsv(const AgreementReport &report) {
  std::string out = "k\tany_care\tall_care\tother\n";
  for (const AgreementRow &row : report.rows) {
    out += std::to_string(row.k) + '\t' + Fixed(row.any, 2) + '\t' + Fixed(row.all, 2) +
           '\t' + Fixed(row.other, 2) + '\n';
  }
  return out;
}

std::string AgreementJson(const AgreementReport &report) {
  ojson j;
  j["posts"] = report.posts;
  j["rows"] = ojson::array();
  for (const AgreementRow &row : report.rows) {
    j["rows"].push_back({{"k", row.k}, {"any_care", row.any}, {"all_care", row.all},
                         {"other", row.other}});
  }
  return Dump(j);
}

std::string KappaTsv(const KappaReport &report) {
  std::string out = "class\tkappa\n";
  for (AffectClass c : kAllClasses) {
    out += std::string(ClassName(c)) + '\t' +
           FixedOrEmpty(report.per_class[static_cast<int>(c)], "degenerate") + '\n';
  }
  out += "mean\t" + FixedOrEmpty(report.mean, "degenerate") + '\n';
  return out;
}

std::string KappaJson(const KappaReport &report) {
  ojson j;
  ojson per_class = ojson::object();
  for (AffectClass c : kAllClasses) {
    per_class[std::string(ClassName(c))] = OptionalJson(report.per_class[static_cast<int>(c)]);
  }
  j["per_class"] = std::move(per_class);
  j["mean"] = OptionalJson(report.mean);
  return Dump(j);
}

std::string SweepCsv(std::span<const PRPoint> points) {
  std::string out = "t,class,precision,recall\n";
  for (const PRPoint &p : points) {
    out += std::to_string(p.threshold) + ',' + std::string(ClassName(p.affect)) + ',' +
           FixedOrEmpty(p.precision, "") + ',' + FixedOrEmpty(p.recall, "") + '\n';
  }
  return out;
}

std::string SweepJson(std::span<const PRPoint> points) {
  ojson j = ojson::array();
  for (const PRPoint &p : points) {
    j.push_back({{"t", p.threshold},
                 {"class", std::string(ClassName(p.affect))},
                 {"tp", p.true_positives},
                 {"fp", p.false_positives},
                 {"fn", p.false_negatives},
                 {"precision", OptionalJson(p.precision)},
                 {"recall", OptionalJson(p.recall)}});
  }
  return Dump(j);
}

std::string MatchFpTsv(const MatchFpReport &report) {
  std::string out = "pattern\tindicator\tclasses\tcount\tfp_rate\n";
  for (const MatchFpRow &row : report.rows) {
    out += row.pattern + '\t' + row.indicator + '\t' + JoinClassNames(row.classes) + '\t' +
           std::to_string(row.count) + '\t' + Fixed(row.fp_rate) + '\n';
  }
  return out;
}

std::string MatchFpJson(const MatchFpReport &report) {
  ojson j;
  j["rows"] = ojson::array();
  for (const MatchFpRow &row : report.rows) {
    j["rows"].push_back({{"pattern", row.pattern},
                         {"indicator", row.indicator},
                         {"classes", row.classes.Names()},
                         {"count", row.count},
                         {"fp_rate", row.fp_rate}});
  }
  j["suppressed"] = report.suppressed;
  ojson totals = ojson::object();
  for (AffectClass c : kAllClasses) {
    totals[std::string(ClassName(c))] = report.class_totals[static_cast<int>(c)];
  }
  j["class_totals"] = std::move(totals);
  return Dump(j);
}

std::string IntersectionTsv(const IntersectionReport &report) {
  std::string out = "label\toccurrences\trate\n";
  for (const auto &[label, rate] : report.rate) {
    out += label + '\t' + std::to_string(report.occurrences.at(label)) + '\t' +
           Fixed(rate, 2) + '\n';
  }
  out += "macro_average\t\t" + Fixed(report.macro_average, 2) + '\n';
  out += "micro_average\t\t" + Fixed(report.micro_average, 2) + '\n';
  return out;
}

std::string IntersectionJson(const IntersectionReport &report) {
  ojson j;
  j["items"] = report.items;
  ojson rates = ojson::object();
  for (const auto &[label, rate] : report.rate) rates[label] = rate;
  j["rate"] = std::move(rates);
  j["macro_average"] = report.macro_average;
  j["micro_average"] = report.micro_average;
  return Dump(j);
}

std::string PrevalenceTsv(const PrevalenceReport &report) {
  std::string out = "class\tposts\n";
  for (AffectClass c : kAllClasses) {
    out += std::string(ClassName(c)) + '\t' +
           std::to_string(report.per_class[static_cast<int>(c)]) + '\n';
  }
  out += "\nlabels_per_post\tposts\n";
  for (const auto &[n, posts] : report.label_count_histogram) {
    out += std::to_string(n) + '\t' + std::to_string(posts) + '\n';
  }
  return out;
}

std::string PrevalenceJson(const PrevalenceReport &report) {
  ojson j;
  j["posts"] = report.posts;
  ojson per_class = ojson::object();
  for (AffectClass c : kAllClasses) {
    per_class[std::string(ClassName(c))] = report.per_class[static_cast<int>(c)];
  }
  j["per_class"] = std::move(per_class);
  ojson histogram = ojson::object();
  for (const auto &[n, posts] : report.label_count_histogram) {
    histogram[std::to_string(n)] = posts;
  }
  j["label_count_histogram"] = std::move(histogram);
  return Dump(j);
}

}  // namespace care
