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

// Training data for span-based NER fine-tuning. One JSON record per
// document:
//
//   {"doc_id": "...", "text": "...",
//    "tokenized_text": ["Anche", "il", "Gelli", ...],
//    "ner": [[2, 2, "persona"], ...],              // inclusive token span
//    "spans": [{"start": 9, "end": 14, "label": "persona",
//               "surface": "Gelli", "identifier": "Q518160"}, ...]}
//
// Labels use the Italian class names. "spans" keeps the character offsets,
// so the file converts back to the corpus exactly.

#ifndef EDNER_FINETUNE_EXPORT_H_
#define EDNER_FINETUNE_EXPORT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner {

struct Token {
  std::string text;
  std::size_t start = 0;  // code points
  std::size_t end = 0;
};

// Word runs (letters, digits, underscore) and single punctuation marks;
// whitespace separates tokens and is dropped.
std::vector<Token> tokenize_words(std::string_view text);

std::string render_finetune_json(const Corpus& corpus);

Corpus parse_finetune_json(std::string_view json,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace edner

#endif  // EDNER_FINETUNE_EXPORT_H_
