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

#include "care/aggregate.h"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

// Splits [0, n) into `workers` contiguous chunks and runs fn(begin, end) on
// each in its own thread.
template <typename Fn>
void ParallelChunks(size_t n, int workers, Fn fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  size_t w = std::min<size_t>(static_cast<size_t>(workers), std::max<size_t>(n, 1));
  if (w <= 1) {
    fn(size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  size_t chunk = (n + w - 1) / w;
  for (size_t begin = 0; begin < n; begin += chunk) {
    threads.emplace_back(fn, begin, std::min(n, begin + chunk));
  }
  for (std::thread &t : threads) t.join();
}

}  // namespace

void ExclusionList::Add(std::string pattern, std::string_view indicator) {
  pairs_.emplace(std::move(pattern), Join(SplitWhitespace(ToLower(indicator)), " "));
}

bool ExclusionList::Contains(std::string_view pattern, std::string_view indicator) const {
  return pairs_.count({std::string(pattern), std::string(indicator)}) > 0;
}

ExclusionList ParseExclusions(std::string_view text) {
  ExclusionList list;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != 2 || Trim(cols[0]).empty() || Trim(cols[1]).empty()) {
      throw ParseError("expected pattern_name<TAB>indicator", line_no);
    }
    list.Add(std::string(Trim(cols[0])), cols[1]);
  }
  return list;
}

ExclusionList LoadExclusions(const std::string &path) {
  return ParseExclusions(ReadFile(path));
}

int AggregationConfig::Threshold(AffectClass c) const {
  auto it = per_class_thresholds.find(c);
  return it == per_class_thresholds.end() ? default_threshold : it->second;
}

int AggregationConfig::MinThreshold() const {
  int t = default_threshold;
  for (const auto &[c, value] : per_class_thresholds) t = std::min(t, value);
  return t;
}

void AggregationConfig::Validate(const Matcher *matcher) const {
  if (default_threshold < 1) throw ValidationError("threshold must be >= 1");
  for (const auto &[c, value] : per_class_thresholds) {
    if (value < 1) {
      throw ValidationError("threshold for " + std::string(ClassName(c)) + " must be >= 1");
    }
  }
  if (matcher != nullptr) {
    for (const auto &[pattern, indicator] : exclusions.pairs()) {
      if (!matcher->HasPattern(pattern)) {
        throw ValidationError("exclusion references unknown pattern '" + pattern + "'");
      }
    }
  }
}

PostAnnotation AggregatePost(std::string_view post_id,
                             std::span<const CommentClasses> comments,
                             const AggregationConfig &config) {
  // Merge repeated comment ids first so each comment counts once per class.
  std::vector<const CommentClasses *> order;
  order.reserve(comments.size());
  for (const CommentClasses &c : comments) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const CommentClasses *a, const CommentClasses *b) {
    return a->comment_id < b->comment_id;
  });

  PostAnnotation annotation;
  annotation.post_id = std::string(post_id);
  for (size_t i = 0; i < order.size();) {
    ClassSet merged;
    size_t j = i;
    while (j < order.size() && order[j]->comment_id == order[i]->comment_id) {
      merged |= order[j]->classes;
      ++j;
    }
    for (AffectClass c : merged.ToVector()) ++annotation.support[static_cast<int>(c)];
    i = j;
  }
  for (AffectClass c : kAllClasses) {
    if (ClearsThreshold(annotation.Support(c), config.Threshold(c))) annotation.labels.Insert(c);
  }
  return annotation;
}

ClassSet LabeledComment::Classes(const ExclusionList &exclusions) const {
  ClassSet classes;
  for (const MatchRecord &r : matches) {
    if (!exclusions.Excludes(r)) classes |= r.classes;
  }
  return classes;
}

std::vector<CommentClasses> LabeledCorpus::CommentClassesOf(
    const LabeledPost &post, const ExclusionList &exclusions) const {
  std::vector<CommentClasses> out;
  out.reserve(post.comments.size());
  for (const LabeledComment &c : post.comments) {
    out.push_back({c.comment_id, c.Classes(exclusions)});
  }
  return out;
}

LabeledCorpus LabelCorpus(const Corpus &corpus, const Matcher &matcher,
                          const LabelOptions &options) {
  LabeledCorpus labeled;
  std::vector<size_t> post_order(corpus.posts.size());
  for (size_t i = 0; i < post_order.size(); ++i) post_order[i] = i;
  std::sort(post_order.begin(), post_order.end(), [&](size_t a, size_t b) {
    return corpus.posts[a].id < corpus.posts[b].id;
  });

  std::unordered_map<std::string_view, size_t> slot_of;
  slot_of.reserve(post_order.size());
  labeled.posts.reserve(post_order.size());
  for (size_t i : post_order) {
    const Post &p = corpus.posts[i];
    if (!slot_of.emplace(p.id, labeled.posts.size()).second) {
      throw ValidationError("duplicate post_id '" + p.id + "'");
    }
    labeled.posts.push_back({p.id, Utf8Length(p.text), {}});
  }

  // Resolve every comment's post and count comments per post.
  constexpr size_t kDangling = static_cast<size_t>(-1);
  std::vector<size_t> comment_post(corpus.comments.size(), kDangling);
  std::vector<size_t> comment_count(labeled.posts.size(), 0);
  for (size_t i = 0; i < corpus.comments.size(); ++i) {
    auto it = slot_of.find(corpus.comments[i].post_id);
    if (it == slot_of.end()) {
      ++labeled.dangling_comments;
      continue;
    }
    comment_post[i] = it->second;
    ++comment_count[it->second];
  }

  std::vector<size_t> work;
  work.reserve(corpus.comments.size());
  for (size_t i = 0; i < corpus.comments.size(); ++i) {
    size_t slot = comment_post[i];
    if (slot == kDangling) continue;
    ++labeled.total_comments;
    if (comment_count[slot] < options.min_comments ||
        labeled.posts[slot].text_chars < options.min_post_chars) {
      ++labeled.skipped_comments;
      continue;
    }
    work.push_back(i);
  }

  std::vector<std::vector<MatchRecord>> matches(corpus.comments.size());
  ParallelChunks(work.size(), options.parallelism, [&](size_t begin, size_t end) {
    for (size_t w = begin; w < end; ++w) {
      const Comment &c = corpus.comments[work[w]];
      matches[work[w]] = matcher.LabelComment(c.id, c.text).matches;
    }
  });

  for (size_t slot = 0; slot < labeled.posts.size(); ++slot) {
    labeled.posts[slot].comments.reserve(comment_count[slot]);
  }
  for (size_t i = 0; i < corpus.comments.size(); ++i) {
    if (comment_post[i] == kDangling) continue;
    if (!matches[i].empty()) ++labeled.matched_comments;
    labeled.posts[comment_post[i]].comments.push_back(
        {corpus.comments[i].id, std::move(matches[i])});
  }
  return labeled;
}

std::vector<PostAnnotation> AggregateCorpus(const LabeledCorpus &labeled,
                                            const AggregationConfig &config) {
  std::vector<PostAnnotation> out;
  for (const LabeledPost &post : labeled.posts) {
    if (post.text_chars < config.min_post_chars) continue;
    std::vector<CommentClasses> comments = labeled.CommentClassesOf(post, config.exclusions);
    PostAnnotation annotation = AggregatePost(post.post_id, comments, config);
    if (!annotation.labels.Empty()) out.push_back(std::move(annotation));
  }
  return out;
}

std::vector<PostAnnotation> AnnotateCorpus(const Corpus &corpus, const Matcher &matcher,
                                           const AggregationConfig &config,
                                           int parallelism, LabeledCorpus *labeled_out) {
  LabelOptions options;
  options.parallelism = parallelism;
  options.min_comments = static_cast<size_t>(std::max(1, config.MinThreshold()));
  options.min_post_chars = config.min_post_chars;
  LabeledCorpus labeled = LabelCorpus(corpus, matcher, options);
  std::vector<PostAnnotation> annotations = AggregateCorpus(labeled, config);
  if (labeled_out != nullptr) *labeled_out = std::move(labeled);
  return annotations;
}

std::string SerializeAnnotationsJsonl(std::span<const PostAnnotation> annotations) {
  std::string out;
  for (const PostAnnotation &a : annotations) {
    nlohmann::ordered_json obj;
    obj["post_id"] = a.post_id;
    obj["labels"] = a.labels.Names();
    nlohmann::ordered_json support = nlohmann::ordered_json::object();
    for (AffectClass c : kAllClasses) {
      if (a.Support(c) > 0) support[std::string(ClassName(c))] = a.Support(c);
    }
    obj["support"] = std::move(support);
    out += obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<PostAnnotation> ParseAnnotationsJsonl(std::string_view text) {
  std::vector<PostAnnotation> out;
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
        !obj.contains("labels") || !obj["labels"].is_array()) {
      throw ParseError("expected {\"post_id\": str, \"labels\": [str], ...}", line_no);
    }
    PostAnnotation a;
    a.post_id = obj["post_id"].get<std::string>();
    for (const auto &name : obj["labels"]) {
      if (!name.is_string()) throw ParseError("labels must be strings", line_no);
      auto c = ParseClass(name.get<std::string>());
      if (!c) {
        throw ValidationError("line " + std::to_string(line_no) + ": label '" +
                              name.get<std::string>() + "' is not an affect class");
      }
      a.labels.Insert(*c);
    }
    if (auto it = obj.find("support"); it != obj.end() && it->is_object()) {
      for (const auto &[name, count] : it->items()) {
        auto c = ParseClass(name);
        if (!c || !count.is_number_integer()) {
          throw ParseError("bad support entry '" + name + "'", line_no);
        }
        a.support[static_cast<int>(*c)] = count.get<int>();
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<PostAnnotation> LoadAnnotations(const std::string &path) {
  return ParseAnnotationsJsonl(ReadFile(path));
}

EnsembleResult EnsembleAnnotate(std::span<const PostCommentClasses> care,
                                const ExternalCommentLabels &external,
                                const ClassMapping &mapping, int care_threshold,
                                int external_threshold) {
  EnsembleResult result;
  AggregationConfig care_config;
  care_config.default_threshold = care_threshold;
  AggregationConfig external_config;
  external_config.default_threshold = external_threshold;

  for (const PostCommentClasses &post : care) {
    std::vector<CommentClasses> mapped;
    mapped.reserve(post.comments.size());
    for (const CommentClasses &c : post.comments) {
      auto it = external.find(c.comment_id);
      if (it == external.end()) continue;
      ClassSet classes;
      for (const std::string &name : it->second) {
        if (auto cls = mapping.Resolve(name)) {
          classes.Insert(*cls);
        } else {
          ++result.unmapped[name];
        }
      }
      mapped.push_back({c.comment_id, classes});
    }
    PostAnnotation from_care = AggregatePost(post.post_id, post.comments, care_config);
    PostAnnotation from_external = AggregatePost(post.post_id, mapped, external_config);

    EnsembleAnnotation e;
    e.post_id = post.post_id;
    e.care_support = from_care.support;
    e.external_support = from_external.support;
    e.care_labels = from_care.labels;
    e.external_labels = from_external.labels;
    e.labels = e.care_labels | e.external_labels;
    result.posts.push_back(std::move(e));
  }
  return result;
}

}  // namespace care
