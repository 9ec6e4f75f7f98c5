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

// Straightforward reference implementations used as test oracles. They are
// written from the definitions and share no code with the library beyond the
// data types and the tokenizer.

#ifndef CARE_TESTS_ORACLES_H_
#define CARE_TESTS_ORACLES_H_

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "care/aggregate.h"
#include "care/corpus.h"
#include "care/evaluation.h"
#include "care/expand.h"
#include "care/pattern.h"

namespace care::oracle {

// ngram -> class -> frequency
using Recount = std::map<std::string, std::map<AffectClass, long>>;

inline Recount RecountNgrams(const std::vector<PostAnnotation> &labeled, const Corpus &corpus,
                             const Matcher &matcher, int max_order, bool distinct) {
  std::map<std::string, ClassSet> labels;
  for (const PostAnnotation &a : labeled) labels[a.post_id] = labels[a.post_id] | a.labels;
  Recount out;
  for (const Comment &c : corpus.comments) {
    auto it = labels.find(c.post_id);
    if (it == labels.end() || it->second.Empty()) continue;
    if (!matcher.LabelComment(c.id, c.text).matches.empty()) continue;
    std::map<std::string, long> local;
    for (const PreprocessedSentence &s : matcher.Preprocess(c.text)) {
      for (int n = 1; n <= max_order; ++n) {
        for (size_t i = 0; i + n <= s.tokens.size(); ++i) {
          std::string g = s.tokens[i];
          for (int j = 1; j < n; ++j) g += " " + s.tokens[i + j];
          ++local[g];
        }
      }
    }
    for (const auto &[g, n] : local) {
      for (AffectClass a : kAllClasses) {
        if (it->second.Contains(a)) out[g][a] += distinct ? 1 : n;
      }
    }
  }
  return out;
}

inline bool AllStopWords(const std::string &g, const StringSet &stop) {
  size_t start = 0;
  while (start <= g.size()) {
    size_t end = g.find(' ', start);
    if (end == std::string::npos) end = g.size();
    if (!stop.contains(g.substr(start, end - start))) return false;
    start = end + 1;
  }
  return true;
}

using LexSet = std::set<std::tuple<std::string, AffectClass, long>>;
using PatSet = std::set<std::tuple<std::string, long, uint8_t>>;

inline LexSet LexiconFilter(const Recount &r, long f_lex, const StringSet &stop) {
  LexSet out;
  for (const auto &[g, per_class] : r) {
    for (const auto &[a, freq] : per_class) {
      if (freq < f_lex) continue;
      bool exclusive = true;
      for (const auto &[b, other] : per_class) {
        if (b != a && other >= f_lex) exclusive = false;
      }
      if (exclusive && !AllStopWords(g, stop)) out.insert({g, a, freq});
    }
  }
  return out;
}

inline PatSet PatternFilter(const Recount &r, long f_lex, long f_pat, const StringSet &stop) {
  std::set<std::string> lex;
  for (const auto &t : LexiconFilter(r, f_lex, stop)) lex.insert(std::get<0>(t));
  PatSet out;
  for (const auto &[g, per_class] : r) {
    long total = 0;
    ClassSet classes;
    for (const auto &[a, freq] : per_class) {
      if (freq <= 0) continue;
      total += freq;
      classes.Insert(a);
    }
    if (classes.Size() >= 2 && total >= f_pat && !lex.contains(g)) {
      out.insert({g, total, classes.bits()});
    }
  }
  return out;
}

// Fleiss' kappa with per-item agreement computed by enumerating rater pairs.
// ratings[i][r] is the category chosen by rater r on item i.
inline double PairwiseFleiss(const std::vector<std::vector<int>> &ratings, int categories) {
  const size_t n_items = ratings.size();
  const size_t raters = ratings.front().size();
  double p_bar = 0;
  std::vector<double> share(categories, 0);
  for (const auto &item : ratings) {
    int agree = 0, pairs = 0;
    for (size_t a = 0; a < raters; ++a) {
      for (size_t b = 0; b < raters; ++b) {
        if (a == b) continue;
        ++pairs;
        if (item[a] == item[b]) ++agree;
      }
    }
    p_bar += static_cast<double>(agree) / pairs;
    for (int v : item) share[v] += 1.0;
  }
  p_bar /= n_items;
  double p_e = 0;
  for (double s : share) {
    double p = s / (n_items * raters);
    p_e += p * p;
  }
  return (p_bar - p_e) / (1 - p_e);
}

struct AgreementCounts {
  int posts = 0;
  std::map<int, int> any, all, other;
};

// Agreement by enumerating every class for every post.
inline AgreementCounts BruteAgreement(const std::vector<GoldAnnotation> &gold,
                                      const std::vector<PostAnnotation> &pred, int max_k) {
  AgreementCounts out;
  for (const PostAnnotation &p : pred) {
    if (p.labels.Empty()) continue;
    const GoldAnnotation *g = nullptr;
    for (const GoldAnnotation &x : gold) {
      if (x.post_id == p.post_id) g = &x;
    }
    if (g == nullptr) continue;
    ++out.posts;
    for (int k = 1; k <= max_k; ++k) {
      bool any = false, all = true, other = false;
      for (AffectClass c : kAllClasses) {
        int votes = 0;
        for (ClassSet s : g->annotators) votes += s.Contains(c) ? 1 : 0;
        bool confirmed = votes >= k;
        bool predicted = p.labels.Contains(c);
        if (predicted && confirmed) any = true;
        if (predicted && !confirmed) all = false;
        if (!predicted && confirmed) other = true;
      }
      out.any[k] += any;
      out.all[k] += all;
      out.other[k] += other;
    }
  }
  return out;
}

// label -> (hits, occurrences)
inline std::map<std::string, std::pair<int, int>> BruteIntersection(const LabelSets &annotated,
                                                                   const LabelSets &predicted) {
  std::map<std::string, std::pair<int, int>> out;
  for (const auto &[item, labels] : annotated) {
    if (!predicted.contains(item)) continue;
    for (const std::string &l : labels) {
      ++out[l].second;
      for (const std::string &q : predicted.at(item)) {
        if (q == l) ++out[l].first;
      }
    }
  }
  return out;
}

}  // namespace care::oracle

#endif  // CARE_TESTS_ORACLES_H_
