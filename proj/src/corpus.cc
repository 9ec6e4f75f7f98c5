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

#include "care/corpus.h"

#include <json.hpp>

#include "care/errors.h"
#include "care/strings.h"

namespace care {
namespace {

using json = nlohmann::json;

// Calls `fn(object, line_no)` for every non-blank line.
template <typename Fn>
void ForEachJsonLine(std::string_view text, Fn fn) {
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    fn(obj, line_no);
  }
}

std::string StringField(const json &obj, const char *key, int line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", line_no);
  if (it->is_string()) return it->get<std::string>();
  // Numeric ids are common in dumps; accept them as their decimal text.
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw ParseError(std::string("field '") + key + "' must be a string", line_no);
}

}  // namespace

std::vector<Post> ParsePostsJsonl(std::string_view text) {
  std::vector<Post> posts;
  ForEachJsonLine(text, [&](const json &obj, int line_no) {
    posts.push_back({StringField(obj, "post_id", line_no), StringField(obj, "text", line_no)});
  });
  return posts;
}

std::vector<Comment> ParseCommentsJsonl(std::string_view text) {
  std::vector<Comment> comments;
  ForEachJsonLine(text, [&](const json &obj, int line_no) {
    comments.push_back({StringField(obj, "comment_id", line_no),
                        StringField(obj, "post_id", line_no),
                        StringField(obj, "text", line_no)});
  });
  return comments;
}

ExternalCommentLabels ParseExternalLabelsJsonl(std::string_view text) {
  ExternalCommentLabels labels;
  ForEachJsonLine(text, [&](const json &obj, int line_no) {
    std::string id = StringField(obj, "comment_id", line_no);
    auto it = obj.find("labels");
    if (it == obj.end() || !it->is_array()) {
      throw ParseError("field 'labels' must be an array", line_no);
    }
    std::vector<std::string> &names = labels[id];
    for (const json &name : *it) {
      if (!name.is_string()) throw ParseError("labels must be strings", line_no);
      names.push_back(ToLower(name.get<std::string>()));
    }
  });
  return labels;
}

std::vector<Post> LoadPosts(const std::string &path) {
  return ParsePostsJsonl(ReadFile(path));
}

std::vector<Comment> LoadComments(const std::string &path) {
  return ParseCommentsJsonl(ReadFile(path));
}

Corpus LoadCorpus(const std::string &posts_path, const std::string &comments_path) {
  return {LoadPosts(posts_path), LoadComments(comments_path)};
}

ExternalCommentLabels LoadExternalLabels(const std::string &path) {
  return ParseExternalLabelsJsonl(ReadFile(path));
}

std::string SerializePostsJsonl(const std::vector<Post> &posts) {
  std::string out;
  for (const Post &p : posts) {
    nlohmann::ordered_json obj;
    obj["post_id"] = p.id;
    obj["text"] = p.text;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string SerializeCommentsJsonl(const std::vector<Comment> &comments) {
  std::string out;
  for (const Comment &c : comments) {
    nlohmann::ordered_json obj;
    obj["comment_id"] = c.id;
    obj["post_id"] = c.post_id;
    obj["text"] = c.text;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace care
