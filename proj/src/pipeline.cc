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

#include "care/pipeline.h"

#include <chrono>
#include <filesystem>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "care/errors.h"
#include "care/log.h"
#include "care/strings.h"

namespace care {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string Resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

void RequireFile(const std::string &path, std::string_view what) {
  if (path.empty()) throw ValidationError(std::string(what) + " path is not set");
  if (!fs::is_regular_file(path)) {
    throw IoError(std::string(what) + " file not found: '" + path + "'");
  }
}

template <typename T>
T Get(const json &obj, const char *key, const char *type_name) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &) {
    throw ValidationError(std::string("config key '") + key + "' must be " + type_name);
  }
}

std::string DumpLine(const ojson &j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace) + '\n';
}

ojson MatchJson(const std::string &post_id, const MatchRecord &r) {
  ojson j;
  j["comment_id"] = r.comment_id;
  j["post_id"] = post_id;
  j["pattern"] = r.pattern_name;
  j["exaggerators"] = r.exaggerators;
  j["indicator"] = r.IndicatorText();
  j["classes"] = r.classes.Names();
  j["sentence_index"] = r.sentence_index;
  return j;
}

}  // namespace

void PipelineConfig::Validate(bool need_corpus) const {
  aggregation.Validate();
  expansion.Validate();
  if (parallelism < 1) throw ValidationError("parallelism must be >= 1");
  if (matcher.max_gap < 0) throw ValidationError("max_gap must be >= 0");
  RequireFile(patterns_path, "patterns");
  RequireFile(lexicon_path, "lexicon");
  RequireFile(exaggerators_path, "exaggerators");
  RequireFile(negations_path, "negations");
  RequireFile(contrast_path, "contrast");
  if (!exclusions_path.empty()) RequireFile(exclusions_path, "exclusions");
  if (!class_mapping_path.empty()) RequireFile(class_mapping_path, "class_mapping");
  if (need_corpus) {
    RequireFile(posts_path, "posts");
    RequireFile(comments_path, "comments");
  }
}

PipelineConfig DefaultPipelineConfig(const std::string &data_dir) {
  PipelineConfig config;
  fs::path seed = fs::path(data_dir) / "seed";
  config.patterns_path = (seed / "patterns.care").string();
  config.lexicon_path = (seed / "lexicon.tsv").string();
  config.exaggerators_path = (seed / "exaggerators.txt").string();
  config.negations_path = (seed / "negations.txt").string();
  config.contrast_path = (seed / "contrast.txt").string();
  config.class_mapping_path = (seed / "class_mapping.tsv").string();
  return config;
}

PipelineConfig ParsePipelineConfig(std::string_view json_text, const std::string &base_dir,
                                   PipelineConfig config) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config must be a JSON object");

  const std::pair<const char *, std::string *> paths[] = {
      {"patterns", &config.patterns_path},
      {"lexicon", &config.lexicon_path},
      {"exaggerators", &config.exaggerators_path},
      {"negations", &config.negations_path},
      {"contrast", &config.contrast_path},
      {"exclusions", &config.exclusions_path},
      {"class_mapping", &config.class_mapping_path},
      {"posts", &config.posts_path},
      {"comments", &config.comments_path},
      {"output_dir", &config.output_dir},
  };
  for (const auto &[key, value] : root.items()) {
    bool known = false;
    for (const auto &[name, target] : paths) {
      if (key == name) {
        *target = Resolve(base_dir, Get<std::string>(root, name, "a string"));
        known = true;
      }
    }
    if (known) continue;
    if (key == "aggregation") {
      for (const auto &[akey, avalue] : value.items()) {
        if (akey == "threshold") {
          config.aggregation.default_threshold = Get<int>(value, "threshold", "an integer");
        } else if (akey == "min_post_chars") {
          config.aggregation.min_post_chars = Get<size_t>(value, "min_post_chars", "an integer");
        } else if (akey == "per_class") {
          if (!avalue.is_object()) throw ValidationError("per_class must be an object");
          for (const auto &[cls, t] : avalue.items()) {
            if (!t.is_number_integer()) throw ValidationError("per_class thresholds must be integers");
            config.aggregation.per_class_thresholds[ParseClassOrThrow(cls)] = t.get<int>();
          }
        } else {
          throw ValidationError("unknown config key 'aggregation." + akey + "'");
        }
      }
    } else if (key == "expansion") {
      for (const auto &[ekey, evalue] : value.items()) {
        if (ekey == "f_lexicon") {
          config.expansion.f_lexicon = Get<int64_t>(value, "f_lexicon", "an integer");
        } else if (ekey == "f_pattern") {
          config.expansion.f_pattern = Get<int64_t>(value, "f_pattern", "an integer");
        } else if (ekey == "count_distinct_comments") {
          config.expansion.count_distinct_comments =
              Get<bool>(value, "count_distinct_comments", "a boolean");
        } else {
          throw ValidationError("unknown config key 'expansion." + ekey + "'");
        }
      }
    } else if (key == "max_gap") {
      config.matcher.max_gap = Get<int>(root, "max_gap", "an integer");
    } else if (key == "parallelism") {
      config.parallelism = Get<int>(root, "parallelism", "an integer");
    } else if (key == "seed") {
      config.seed = Get<uint64_t>(root, "seed", "an integer");
    } else if (key == "sample_matches") {
      config.sample_matches = Get<size_t>(root, "sample_matches", "an integer");
    } else if (key == "write_matches") {
      config.write_matches = Get<bool>(root, "write_matches", "a boolean");
    } else {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  return config;
}

PipelineConfig LoadPipelineConfig(const std::string &path, PipelineConfig base) {
  std::string base_dir = fs::path(path).parent_path().string();
  return ParsePipelineConfig(ReadFile(path), base_dir, std::move(base));
}

Matcher BuildMatcher(const PipelineConfig &config) {
  std::vector<CarePattern> patterns = LoadPatterns(config.patterns_path);
  Lexicon lexicon = LoadLexicon(config.lexicon_path);
  WordLists words =
      LoadWordLists(config.exaggerators_path, config.negations_path, config.contrast_path);
  CARE_LOG(Debug) << "loaded " << patterns.size() << " patterns, " << lexicon.size()
                  << " indicators, " << words.exaggerators.size() << " exaggerators";
  return Matcher(std::move(patterns), std::move(lexicon), std::move(words), config.matcher);
}

void LoadExclusionsInto(PipelineConfig *config) {
  if (!config->exclusions_path.empty()) {
    config->aggregation.exclusions = LoadExclusions(config->exclusions_path);
  }
}

std::string PipelineSummary::ToJson(bool with_timing) const {
  ojson j;
  j["posts_total"] = posts_total;
  j["comments_total"] = comments_total;
  j["comments_matched"] = comments_matched;
  j["dangling_comments"] = dangling_comments;
  j["posts_annotated"] = posts_annotated;
  ojson per_class = ojson::object();
  for (AffectClass c : kAllClasses) {
    per_class[std::string(ClassName(c))] = this->per_class[static_cast<int>(c)];
  }
  j["per_class"] = std::move(per_class);
  if (with_timing) j["elapsed_seconds"] = elapsed_seconds;
  j["annotations_path"] = annotations_path;
  return j.dump(2) + "\n";
}

PipelineSummary RunPipeline(const PipelineConfig &config, const Corpus &corpus,
                            const Matcher &matcher,
                            std::vector<PostAnnotation> *annotations_out) {
  auto start = std::chrono::steady_clock::now();
  config.aggregation.Validate(&matcher);

  LabeledCorpus labeled;
  std::vector<PostAnnotation> annotations =
      AnnotateCorpus(corpus, matcher, config.aggregation, config.parallelism, &labeled);
  if (labeled.dangling_comments > 0) {
    CARE_LOG(Warning) << labeled.dangling_comments << " comments reference unknown posts";
  }

  PipelineSummary summary;
  summary.posts_total = corpus.posts.size();
  summary.comments_total = labeled.total_comments;
  summary.comments_matched = labeled.matched_comments;
  summary.dangling_comments = labeled.dangling_comments;
  summary.posts_annotated = annotations.size();
  for (const PostAnnotation &a : annotations) {
    for (AffectClass c : a.labels.ToVector()) ++summary.per_class[static_cast<int>(c)];
  }

  fs::path out_dir(config.output_dir);
  summary.annotations_path = (out_dir / "annotations.jsonl").string();
  WriteFileAtomically(summary.annotations_path, SerializeAnnotationsJsonl(annotations));
  if (config.write_matches) {
    WriteFileAtomically((out_dir / "matches.jsonl").string(), SerializeMatchesJsonl(labeled));
  }
  if (config.sample_matches > 0) {
    CARE_LOG(Info) << "sampling " << config.sample_matches << " matches with seed "
                   << config.seed;
    std::unordered_map<std::string_view, std::string_view> post_of;
    for (const LabeledPost &p : labeled.posts) {
      for (const LabeledComment &c : p.comments) post_of[c.comment_id] = p.post_id;
    }
    std::string samples;
    for (const MatchRecord &r : SampleMatches(labeled, config.sample_matches, config.seed)) {
      samples += DumpLine(MatchJson(std::string(post_of[r.comment_id]), r));
    }
    WriteFileAtomically((out_dir / "samples.jsonl").string(), samples);
  }

  summary.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (annotations_out != nullptr) *annotations_out = std::move(annotations);
  return summary;
}

PipelineSummary RunPipeline(const PipelineConfig &config) {
  config.Validate();
  PipelineConfig resolved = config;
  LoadExclusionsInto(&resolved);
  Matcher matcher = BuildMatcher(resolved);
  Corpus corpus = LoadCorpus(resolved.posts_path, resolved.comments_path);
  CARE_LOG(Info) << "loaded " << corpus.posts.size() << " posts and " << corpus.comments.size()
                 << " comments";
  return RunPipeline(resolved, corpus, matcher);
}

std::string SerializeMatchesJsonl(const LabeledCorpus &labeled) {
  std::string out;
  for (const LabeledPost &post : labeled.posts) {
    for (const LabeledComment &c : post.comments) {
      for (const MatchRecord &r : c.matches) out += DumpLine(MatchJson(post.post_id, r));
    }
  }
  return out;
}

std::vector<MatchRecord> SampleMatches(const LabeledCorpus &labeled, size_t count,
                                       uint64_t seed) {
  std::vector<const MatchRecord *> all;
  for (const LabeledPost &post : labeled.posts) {
    for (const LabeledComment &c : post.comments) {
      for (const MatchRecord &r : c.matches) all.push_back(&r);
    }
  }
  std::mt19937_64 rng(seed);
  count = std::min(count, all.size());
  for (size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  std::vector<MatchRecord> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(*all[i]);
  return out;
}

std::string ExportResult::ToJsonl() const {
  std::string out;
  for (const TrainingExample &e : examples) {
    ojson j;
    j["post_id"] = e.post_id;
    j["text"] = e.text;
    j["labels"] = e.labels;
    out += DumpLine(j);
  }
  return out;
}

ExportResult ExportTrainingData(std::span<const PostAnnotation> annotations,
                                std::span<const Post> posts, ExportFormat format) {
  std::unordered_map<std::string_view, const Post *> post_of;
  for (const Post &p : posts) post_of.emplace(p.id, &p);

  ExportResult result;
  for (const PostAnnotation &a : annotations) {
    auto it = post_of.find(a.post_id);
    if (it == post_of.end()) {
      ++result.skipped_missing_post;
      continue;
    }
    if (a.labels.Empty()) {
      ++result.skipped_empty;
      continue;
    }
    TrainingExample example{a.post_id, it->second->text, {}};
    if (format == ExportFormat::kValence) {
      bool positive = false;
      bool negative = false;
      for (AffectClass c : a.labels.ToVector()) {
        (ClassValence(c) == Valence::kPositive ? positive : negative) = true;
      }
      if (positive) example.labels.emplace_back(ValenceName(Valence::kPositive));
      if (negative) example.labels.emplace_back(ValenceName(Valence::kNegative));
    } else {
      example.labels = a.labels.Names();
    }
    result.examples.push_back(std::move(example));
  }
  if (result.skipped_missing_post > 0) {
    CARE_LOG(Warning) << result.skipped_missing_post << " annotations have no post text";
  }
  return result;
}

}  // namespace care
