// Copyright 2026 The edner Authors.
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

#include "edner/postprocess.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "edner/error.h"
#include "json.hpp"

namespace edner {
namespace {

using Json = nlohmann::ordered_json;

Json entity_list(std::span<const TaggedEntity> entities) {
  Json out = Json::array();
  for (const TaggedEntity& e : entities) {
    out.push_back({{"rank", e.rank}, {"type", e.type_label}, {"surface", e.surface}});
  }
  return out;
}

}  // namespace

std::vector<RawAnswer> parse_raw_answers(std::string_view jsonl, std::string_view name) {
  std::vector<RawAnswer> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    const std::size_t nl = std::min(jsonl.find('\n', pos), jsonl.size());
    std::string_view line = jsonl.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::string where = std::string(name) + ":" + std::to_string(line_no);
    try {
      const Json j = Json::parse(line);
      RawAnswer r;
      r.line = line_no;
      r.doc_id = j.at("doc_id").get<std::string>();
      const std::string mode = j.at("mode").get<std::string>();
      const auto parsed_mode = parse_prompt_mode(mode);
      if (!parsed_mode) throw ParseError(where + ": unknown mode '" + mode + "'");
      r.mode = *parsed_mode;
      if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
      if (j.contains("answer") && !j["answer"].is_null()) {
        r.answer = j["answer"].get<std::string>();
      } else if (!r.error) {
        throw ParseError(where + ": record has neither \"answer\" nor \"error\"");
      }
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return out;
}

PostprocessResult postprocess_answers(const Corpus& corpus, std::span<const RawAnswer> answers) {
  std::set<std::string_view> seen;
  std::vector<std::string> problems;
  for (const RawAnswer& r : answers) {
    if (!corpus.contains(r.doc_id)) {
      problems.push_back("line " + std::to_string(r.line) + ": unknown doc_id '" + r.doc_id + "'");
    } else if (!seen.insert(r.doc_id).second) {
      problems.push_back("line " + std::to_string(r.line) + ": second answer for '" + r.doc_id +
                         "'");
    }
  }
  if (!problems.empty()) {
    std::string msg = "raw answers do not match the corpus:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }

  PostprocessResult result;
  std::vector<Prediction> all;
  for (const RawAnswer& r : answers) {
    const Document& doc = *corpus.find(r.doc_id);
    std::vector<std::string> warnings;
    AlignmentOutcome outcome = postprocess_answer(r.answer, r.mode, doc, &warnings);

    Json diag;
    diag["doc_id"] = r.doc_id;
    diag["mode"] = std::string(to_string(r.mode));
    diag["aligned"] = outcome.aligned.size();
    diag["unaligned"] = entity_list(outcome.unaligned);
    diag["dropped"] = entity_list(outcome.dropped);
    diag["warnings"] = warnings;
    if (r.error) diag["error"] = *r.error;
    result.diagnostics_jsonl += diag.dump(-1, ' ', false, Json::error_handler_t::replace) + "\n";

    std::move(outcome.aligned.begin(), outcome.aligned.end(), std::back_inserter(all));
  }

  std::unordered_map<std::string_view, std::size_t> doc_rank;
  const auto docs = corpus.documents();
  for (std::size_t i = 0; i < docs.size(); ++i) doc_rank.emplace(docs[i].doc_id, i);
  std::vector<Prediction> unique = dedupe_predictions(all);
  std::stable_sort(unique.begin(), unique.end(), [&](const Prediction& a, const Prediction& b) {
    return std::tuple(doc_rank.at(a.doc_id), a.start_pos, a.end_pos, a.type) <
           std::tuple(doc_rank.at(b.doc_id), b.start_pos, b.end_pos, b.type);
  });
  result.predictions = std::move(unique);
  return result;
}

}  // namespace edner
