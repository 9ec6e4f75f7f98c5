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

// Command-line front end: annotate, expand, review-apply, ensemble, eval,
// export and count-instantiations.
//
// Exit codes: 0 success, 1 validation/parse error, 2 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "care/aggregate.h"
#include "care/corpus.h"
#include "care/errors.h"
#include "care/evaluation.h"
#include "care/expand.h"
#include "care/lexicon.h"
#include "care/log.h"
#include "care/pattern.h"
#include "care/pipeline.h"
#include "care/strings.h"

#ifndef CARE_DEFAULT_DATA_DIR
#define CARE_DEFAULT_DATA_DIR "data"
#endif

namespace {

namespace fs = std::filesystem;
using care::PipelineConfig;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string DataDir() {
  const char *env = std::getenv("CARE_DATA_DIR");
  return env != nullptr ? env : CARE_DEFAULT_DATA_DIR;
}

// Flags shared by every subcommand that loads resources or a corpus. Unset
// values leave the config-file (or default) value alone.
struct CommonFlags {
  std::string config;
  std::string patterns, lexicon, exaggerators, negations, contrast, exclusions, mapping;
  std::string posts, comments, out_dir;
  std::optional<int> threshold, min_post_chars, parallelism, max_gap;
  std::vector<std::string> class_thresholds;  // class=t
  std::optional<uint64_t> seed;

  void Register(CLI::App *app, bool corpus) {
    app->add_option("--config", config, "JSON pipeline config");
    app->add_option("--patterns", patterns, "Pattern DSL file");
    app->add_option("--lexicon", lexicon, "Lexicon TSV");
    app->add_option("--exaggerators", exaggerators, "Exaggerator word list");
    app->add_option("--negations", negations, "Negation word list");
    app->add_option("--contrast", contrast, "Contrast marker word list");
    app->add_option("--exclusions", exclusions, "pattern<TAB>indicator exclusions");
    app->add_option("--max-gap", max_gap, "Tokens allowed between literal and E/I slots");
    if (!corpus) return;
    app->add_option("--mapping", mapping, "care_class<TAB>external_name mapping");
    app->add_option("--posts", posts, "posts.jsonl");
    app->add_option("--comments", comments, "comments.jsonl");
    app->add_option("--out-dir", out_dir, "Output directory");
    app->add_option("-t,--threshold", threshold, "Default support threshold");
    app->add_option("--class-threshold", class_thresholds, "Per-class threshold, class=t");
    app->add_option("--min-post-chars", min_post_chars, "Minimum post length");
    app->add_option("-j,--parallelism", parallelism, "Worker threads");
    app->add_option("--seed", seed, "Seed for sampling utilities");
  }

  PipelineConfig Build() const {
    PipelineConfig c = care::DefaultPipelineConfig(DataDir());
    if (!config.empty()) c = care::LoadPipelineConfig(config, std::move(c));
    auto set = [](std::string *target, const std::string &value) {
      if (!value.empty()) *target = value;
    };
    set(&c.patterns_path, patterns);
    set(&c.lexicon_path, lexicon);
    set(&c.exaggerators_path, exaggerators);
    set(&c.negations_path, negations);
    set(&c.contrast_path, contrast);
    set(&c.exclusions_path, exclusions);
    set(&c.class_mapping_path, mapping);
    set(&c.posts_path, posts);
    set(&c.comments_path, comments);
    set(&c.output_dir, out_dir);
    if (threshold) c.aggregation.default_threshold = *threshold;
    if (min_post_chars) {
      if (*min_post_chars < 0) throw care::ValidationError("min-post-chars must be >= 0");
      c.aggregation.min_post_chars = static_cast<size_t>(*min_post_chars);
    }
    if (parallelism) c.parallelism = *parallelism;
    if (max_gap) c.matcher.max_gap = *max_gap;
    if (seed) c.seed = *seed;
    for (const std::string &entry : class_thresholds) {
      size_t eq = entry.find('=');
      if (eq == std::string::npos) throw care::ValidationError("expected class=t, got '" + entry + "'");
      int t = 0;
      try {
        t = std::stoi(entry.substr(eq + 1));
      } catch (const std::exception &) {
        throw care::ValidationError("bad threshold in '" + entry + "'");
      }
      c.aggregation.per_class_thresholds[care::ParseClassOrThrow(entry.substr(0, eq))] = t;
    }
    return c;
  }
};

void Emit(const std::string &path, const std::string &contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    care::WriteFileAtomically(path, contents);
  }
}

// Loads annotations-shaped JSONL ({"post_id"|"id", "labels": [...]}) as free
// label sets, optionally mapping external names into CARE class names.
care::LabelSets LoadLabelSets(const std::string &path, const care::ClassMapping *mapping) {
  care::LabelSets sets;
  const std::string text = care::ReadFile(path);
  int line_no = 0;
  for (std::string_view line : care::Split(text, '\n')) {
    ++line_no;
    if (care::Trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw care::ParseError(path + ": invalid JSON", line_no);
    }
    std::string id;
    for (const char *key : {"post_id", "comment_id", "id"}) {
      if (obj.contains(key) && obj[key].is_string()) {
        id = obj[key].get<std::string>();
        break;
      }
    }
    if (id.empty() || !obj.contains("labels") || !obj["labels"].is_array()) {
      throw care::ParseError(path + ": expected an id and a labels array", line_no);
    }
    std::set<std::string> &labels = sets[id];
    for (const auto &name : obj["labels"]) {
      std::string label = care::ToLower(name.get<std::string>());
      if (mapping != nullptr) {
        if (auto c = mapping->Resolve(label)) label = std::string(care::ClassName(*c));
      }
      labels.insert(label);
    }
  }
  return sets;
}

// Posts below the length floor are dropped, as annotate does.
std::vector<care::PostCommentClasses> CommentClasses(const care::LabeledCorpus &labeled,
                                                     const care::AggregationConfig &config) {
  std::vector<care::PostCommentClasses> out;
  out.reserve(labeled.posts.size());
  for (const care::LabeledPost &p : labeled.posts) {
    if (p.text_chars < config.min_post_chars) continue;
    out.push_back({p.post_id, labeled.CommentClassesOf(p, config.exclusions)});
  }
  return out;
}

// Loads everything a corpus-level subcommand needs.
struct Loaded {
  PipelineConfig config;
  care::Matcher matcher;
  care::Corpus corpus;
};

Loaded LoadAll(const CommonFlags &flags) {
  PipelineConfig config = flags.Build();
  config.Validate();
  care::LoadExclusionsInto(&config);
  care::Matcher matcher = care::BuildMatcher(config);
  config.aggregation.Validate(&matcher);
  care::Corpus corpus = care::LoadCorpus(config.posts_path, config.comments_path);
  return {std::move(config), std::move(matcher), std::move(corpus)};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"CARE: affective-response annotation from comment patterns"};
  app.require_subcommand(1);

  // annotate
  CommonFlags annotate_flags;
  bool write_matches = false;
  std::optional<size_t> sample_matches;
  CLI::App *annotate = app.add_subcommand("annotate", "Label posts from their comments");
  annotate_flags.Register(annotate, true);
  annotate->add_flag("--matches", write_matches, "Also write matches.jsonl");
  annotate->add_option("--sample", sample_matches, "Write N seeded sample matches");

  // expand
  CommonFlags expand_flags;
  std::optional<int64_t> f_lexicon, f_pattern;
  bool distinct_comments = false;
  CLI::App *expand = app.add_subcommand("expand", "Mine lexicon and pattern candidates");
  expand_flags.Register(expand, true);
  expand->add_option("--f-lexicon", f_lexicon, "Minimum class-exclusive frequency");
  expand->add_option("--f-pattern", f_pattern, "Minimum cross-class frequency");
  expand->add_flag("--distinct-comments", distinct_comments,
                   "Count n-grams once per comment");

  // review-apply
  std::string review_path, lexicon_out, patterns_out;
  CommonFlags review_flags;
  CLI::App *review = app.add_subcommand("review-apply", "Apply reviewed candidates");
  review_flags.Register(review, false);
  review->add_option("--review", review_path, "Review file")->required();
  review->add_option("--lexicon-out", lexicon_out, "Expanded lexicon")->required();
  review->add_option("--patterns-out", patterns_out, "Expanded patterns")->required();

  // ensemble
  CommonFlags ensemble_flags;
  std::string external_path, ensemble_out;
  int t_care = 5, t_ext = 4;
  CLI::App *ensemble = app.add_subcommand("ensemble", "Fuse pattern and external labels");
  ensemble_flags.Register(ensemble, true);
  ensemble->add_option("--external", external_path, "external_labels.jsonl")->required();
  ensemble->add_option("--t-care", t_care, "Threshold for pattern labels");
  ensemble->add_option("--t-ext", t_ext, "Threshold for external labels");
  ensemble->add_option("-o,--out", ensemble_out, "Output annotations (default stdout)");

  // eval
  CLI::App *eval = app.add_subcommand("eval", "Evaluation reports");
  eval->require_subcommand(1);
  std::string gold_path, annotations_path, report_out;
  bool as_json = false;
  int k = 2, t_min = 0, t_max = 9, min_support = 10;

  CLI::App *agreement = eval->add_subcommand("agreement", "Annotator agreement rates");
  agreement->add_option("--gold", gold_path, "gold.jsonl")->required();
  agreement->add_option("--annotations", annotations_path, "annotations.jsonl")->required();

  CLI::App *kappa = eval->add_subcommand("kappa", "Per-class Fleiss' kappa");
  kappa->add_option("--gold", gold_path, "gold.jsonl")->required();

  CommonFlags sweep_flags;
  CLI::App *sweep = eval->add_subcommand("sweep", "Precision/recall over thresholds");
  sweep_flags.Register(sweep, true);
  sweep->add_option("--gold", gold_path, "gold.jsonl")->required();
  sweep->add_option("--t-min", t_min, "Smallest threshold");
  sweep->add_option("--t-max", t_max, "Largest threshold");
  sweep->add_option("--k", k, "Gold consensus level");

  CommonFlags fp_flags;
  CLI::App *fp = eval->add_subcommand("fp", "False-positive rate per (pattern, indicator)");
  fp_flags.Register(fp, true);
  fp->add_option("--gold", gold_path, "gold.jsonl")->required();
  fp->add_option("--k", k, "Gold consensus level");
  fp->add_option("--min-support", min_support, "Minimum supported posts");

  CLI::App *prevalence = eval->add_subcommand("prevalence", "Posts per class");
  prevalence->add_option("--annotations", annotations_path, "annotations.jsonl")->required();

  std::string annotated_path, predicted_path, intersect_mapping;
  CLI::App *intersect = eval->add_subcommand("intersect", "Label intersection rate");
  intersect->add_option("--annotated", annotated_path, "Reference label JSONL")->required();
  intersect->add_option("--predicted", predicted_path, "Predicted label JSONL")->required();
  intersect->add_option("--mapping", intersect_mapping, "Map external names to classes");

  for (CLI::App *sub : eval->get_subcommands({})) {
    sub->add_flag("--json", as_json, "JSON instead of TSV/CSV");
    sub->add_option("-o,--out", report_out, "Report path (default stdout)");
  }

  // export
  std::string export_posts, export_out;
  bool valence = false;
  CLI::App *export_cmd = app.add_subcommand("export", "Training-ready JSONL");
  export_cmd->add_option("--annotations", annotations_path, "annotations.jsonl")->required();
  export_cmd->add_option("--posts", export_posts, "posts.jsonl")->required();
  export_cmd->add_option("-o,--out", export_out, "Output path (default stdout)");
  export_cmd->add_flag("--valence", valence, "Collapse classes to positive/negative");

  // count-instantiations
  uint64_t n_patterns = 0, n_indicators = 0, n_exaggerators = 0;
  CLI::App *count = app.add_subcommand("count-instantiations",
                                       "Distinct expressions and instantiations");
  count->add_option("patterns", n_patterns)->required();
  count->add_option("indicators", n_indicators)->required();
  count->add_option("exaggerators", n_exaggerators)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*annotate) {
      PipelineConfig config = annotate_flags.Build();
      if (write_matches) config.write_matches = true;
      if (sample_matches) config.sample_matches = *sample_matches;
      care::PipelineSummary summary = care::RunPipeline(config);
      std::cout << summary.ToJson();
    } else if (*expand) {
      Loaded loaded = LoadAll(expand_flags);
      if (f_lexicon) loaded.config.expansion.f_lexicon = *f_lexicon;
      if (f_pattern) loaded.config.expansion.f_pattern = *f_pattern;
      if (distinct_comments) loaded.config.expansion.count_distinct_comments = true;
      loaded.config.expansion.Validate();
      std::vector<care::PostAnnotation> labeled = care::AnnotateCorpus(
          loaded.corpus, loaded.matcher, loaded.config.aggregation, loaded.config.parallelism);
      care::NgramStats stats = care::CollectNgrams(labeled, loaded.corpus, loaded.matcher,
                                                   loaded.config.expansion);
      auto lex = care::ProposeLexiconCandidates(stats, loaded.config.expansion);
      auto pat = care::ProposePatternCandidates(stats, loaded.config.expansion);
      fs::path dir(loaded.config.output_dir);
      care::WriteFileAtomically((dir / "candidates_lexicon.tsv").string(),
                                care::SerializeLexiconCandidates(lex));
      care::WriteFileAtomically((dir / "candidates_pattern.tsv").string(),
                                care::SerializePatternCandidates(pat));
      std::cout << "labeled posts: " << labeled.size() << "\nlexicon candidates: " << lex.size()
                << "\npattern candidates: " << pat.size() << "\n";
    } else if (*review) {
      PipelineConfig config = review_flags.Build();
      care::ReviewOutcome outcome = care::ApplyReviewedCandidates(
          care::LoadLexicon(config.lexicon_path), care::LoadPatterns(config.patterns_path),
          care::ReadFile(review_path));
      care::SaveLexicon(outcome.lexicon, lexicon_out);
      std::string dsl;
      for (const care::CarePattern &p : outcome.patterns) dsl += care::FormatPattern(p) + "\n";
      care::WriteFileAtomically(patterns_out, dsl);
      std::cout << "accepted indicators: " << outcome.accepted_lexicon
                << "\naccepted patterns: " << outcome.accepted_patterns
                << "\nrejected: " << outcome.rejected << "\nlexicon size: "
                << outcome.lexicon.size() << "\npatterns: " << outcome.patterns.size() << "\n";
    } else if (*ensemble) {
      Loaded loaded = LoadAll(ensemble_flags);
      if (loaded.config.class_mapping_path.empty()) {
        throw care::ValidationError("ensemble needs --mapping");
      }
      care::ClassMapping mapping = care::LoadClassMapping(loaded.config.class_mapping_path);
      care::ExternalCommentLabels external = care::LoadExternalLabels(external_path);
      care::LabelOptions options;
      options.parallelism = loaded.config.parallelism;
      care::LabeledCorpus labeled = care::LabelCorpus(loaded.corpus, loaded.matcher, options);
      auto comments = CommentClasses(labeled, loaded.config.aggregation);
      care::EnsembleResult result =
          care::EnsembleAnnotate(comments, external, mapping, t_care, t_ext);
      std::string jsonl;
      for (const care::EnsembleAnnotation &e : result.posts) {
        if (e.labels.Empty()) continue;
        nlohmann::ordered_json j;
        j["post_id"] = e.post_id;
        j["labels"] = e.labels.Names();
        j["care_labels"] = e.care_labels.Names();
        j["external_labels"] = e.external_labels.Names();
        jsonl += j.dump() + "\n";
      }
      Emit(ensemble_out, jsonl);
      for (const auto &[name, n] : result.unmapped) {
        CARE_LOG(Info) << "unmapped external label '" << name << "': " << n;
      }
    } else if (*eval) {
      std::string report;
      if (*agreement) {
        auto r = care::AgreementRates(care::LoadGold(gold_path),
                                      care::LoadAnnotations(annotations_path));
        report = as_json ? care::AgreementJson(r) : care::AgreementTsv(r);
      } else if (*kappa) {
        auto r = care::FleissKappaAllClasses(care::LoadGold(gold_path));
        report = as_json ? care::KappaJson(r) : care::KappaTsv(r);
      } else if (*sweep) {
        Loaded loaded = LoadAll(sweep_flags);
        care::LabelOptions options;
        options.parallelism = loaded.config.parallelism;
        care::LabeledCorpus labeled = care::LabelCorpus(loaded.corpus, loaded.matcher, options);
        auto points = care::ThresholdSweep(
            care::LoadGold(gold_path), CommentClasses(labeled, loaded.config.aggregation),
            t_min, t_max, k);
        report = as_json ? care::SweepJson(points) : care::SweepCsv(points);
      } else if (*fp) {
        Loaded loaded = LoadAll(fp_flags);
        care::LabelOptions options;
        options.parallelism = loaded.config.parallelism;
        options.min_post_chars = loaded.config.aggregation.min_post_chars;
        care::LabeledCorpus labeled = care::LabelCorpus(loaded.corpus, loaded.matcher, options);
        auto r = care::MatchFpRates(labeled, care::LoadGold(gold_path), k, min_support);
        report = as_json ? care::MatchFpJson(r) : care::MatchFpTsv(r);
      } else if (*prevalence) {
        auto r = care::ClassPrevalence(care::LoadAnnotations(annotations_path));
        report = as_json ? care::PrevalenceJson(r) : care::PrevalenceTsv(r);
      } else if (*intersect) {
        std::optional<care::ClassMapping> mapping;
        if (!intersect_mapping.empty()) mapping = care::LoadClassMapping(intersect_mapping);
        const care::ClassMapping *m = mapping ? &*mapping : nullptr;
        auto r = care::LabelIntersectionRate(LoadLabelSets(annotated_path, m),
                                             LoadLabelSets(predicted_path, m));
        report = as_json ? care::IntersectionJson(r) : care::IntersectionTsv(r);
      }
      Emit(report_out, report);
    } else if (*export_cmd) {
      care::ExportResult result = care::ExportTrainingData(
          care::LoadAnnotations(annotations_path), care::LoadPosts(export_posts),
          valence ? care::ExportFormat::kValence : care::ExportFormat::kClasses);
      Emit(export_out, result.ToJsonl());
      CARE_LOG(Info) << "exported " << result.examples.size() << " examples, skipped "
                     << result.skipped_missing_post << " without post text";
    } else if (*count) {
      care::InstantiationCount n =
          care::CountInstantiations(n_patterns, n_indicators, n_exaggerators);
      std::cout << "expressions\t" << n.expressions << "\ninstantiations\t" << n.instantiations
                << "\n";
    }
  } catch (const care::IoError &e) {
    CARE_LOG(Error) << e.what();
    return kExitIo;
  } catch (const care::ParseError &e) {
    CARE_LOG(Error) << e.what();
    return kExitValidation;
  } catch (const care::ValidationError &e) {
    CARE_LOG(Error) << e.what();
    return kExitValidation;
  }
  return 0;
}
