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

#include "edner/finetune_export.h"

#include "edner/error.h"
#include "edner/utf8.h"
#include "json.hpp"

namespace edner {
namespace {

using Json = nlohmann::ordered_json;

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return !((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
             cp == '_');
  }
  return (cp >= 0x00A1 && cp <= 0x00BF && cp != 0x00AA && cp != 0x00B2 && cp != 0x00B3 &&
          cp != 0x00B5 && cp != 0x00B9 && cp != 0x00BA) ||
         cp == 0x00D7 || cp == 0x00F7 || cp == 0x0387 || cp == 0x037E ||
         (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x3000 && cp <= 0x303F);
}

}  // namespace

std::vector<Token> tokenize_words(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t index = 0;
  bool in_word = false;
  for (std::size_t pos = 0; pos < text.size(); ++index) {
    const std::size_t begin = pos;
    const char32_t cp = utf8::decode(text, pos);
    const std::string_view bytes = text.substr(begin, pos - begin);
    if (utf8::is_space(cp)) {
      in_word = false;
    } else if (is_punctuation(cp)) {
      tokens.push_back({std::string(bytes), index, index + 1});
      in_word = false;
    } else if (in_word) {
      tokens.back().text += bytes;
      tokens.back().end = index + 1;
    } else {
      tokens.push_back({std::string(bytes), index, index + 1});
      in_word = true;
    }
  }
  return tokens;
}

std::string render_finetune_json(const Corpus& corpus) {
  Json records = Json::array();
  for (const Document& doc : corpus.documents()) {
    const std::vector<Token> tokens = tokenize_words(doc.text);
    Json words = Json::array();
    for (const Token& t : tokens) words.push_back(t.text);

    Json ner = Json::array();
    Json spans = Json::array();
    for (const Annotation& a : corpus.annotations_of(doc.doc_id)) {
      const std::string label(italian_label(a.type));
      std::size_t first = tokens.size();
      std::size_t last = 0;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].end > a.start_pos && tokens[i].start < a.end_pos) {
          first = std::min(first, i);
          last = i;
        }
      }
      if (first < tokens.size()) ner.push_back(Json::array({first, last, label}));
      spans.push_back({{"start", a.start_pos},
                       {"end", a.end_pos},
                       {"label", label},
                       {"surface", a.surface},
                       {"identifier", a.identifier}});
    }
    records.push_back({{"doc_id", doc.doc_id},
                       {"text", doc.text},
                       {"tokenized_text", std::move(words)},
                       {"ner", std::move(ner)},
                       {"spans", std::move(spans)}});
  }
  return records.dump(1) + "\n";
}

Corpus parse_finetune_json(std::string_view json, std::vector<std::string>* warnings) {
  std::vector<Document> docs;
  std::vector<Annotation> anns;
  try {
    const Json records = Json::parse(json);
    if (!records.is_array()) throw ParseError("fine-tuning data: expected a JSON array");
    for (const Json& r : records) {
      Document doc{r.at("doc_id").get<std::string>(), r.at("text").get<std::string>()};
      doc.placeholder = doc.text.empty();
      for (const Json& s : r.at("spans")) {
        const std::string label = s.at("label").get<std::string>();
        const auto type = canonicalize_type(label);
        if (!type) throw ParseError("fine-tuning data: unknown label '" + label + "'");
        anns.push_back({doc.doc_id, s.at("surface").get<std::string>(),
                        s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>(),
                        s.at("identifier").get<std::string>(), *type});
      }
      docs.push_back(std::move(doc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fine-tuning data: ") + e.what());
  }
  return Corpus::create(std::move(docs), std::move(anns), warnings);
}

}  // namespace edner
