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

#ifndef CARE_CORPUS_H_
#define CARE_CORPUS_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "care/lexicon.h"

namespace care {

struct Post {
  std::string id;
  std::string text;
};

struct Comment {
  std::string id;
  std::string post_id;
  std::string text;
};

struct Corpus {
  std::vector<Post> posts;
  std::vector<Comment> comments;
};

// Label names attached to a comment by some external classifier.
using ExternalCommentLabels =
    std::unordered_map<std::string, std::vector<std::string>, StringHash, std::equal_to<>>;

// JSONL readers. Each throws ParseError (with the line number) on malformed
// JSON or a missing/mistyped field, and IoError if the file cannot be read.
std::vector<Post> ParsePostsJsonl(std::string_view text);
std::vector<Comment> ParseCommentsJsonl(std::string_view text);
ExternalCommentLabels ParseExternalLabelsJsonl(std::string_view text);

std::vector<Post> LoadPosts(const std::string &path);
std::vector<Comment> LoadComments(const std::string &path);
Corpus LoadCorpus(const std::string &posts_path, const std::string &comments_path);
ExternalCommentLabels LoadExternalLabels(const std::string &path);

std::string SerializePostsJsonl(const std::vector<Post> &posts);
std::string SerializeCommentsJsonl(const std::vector<Comment> &comments);

}  // namespace care

#endif  // CARE_CORPUS_H_
