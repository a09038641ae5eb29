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

// Batch conversion of raw model answers (JSON Lines) into predictions.
//
// Input, one object per line:
//   {"doc_id": "...", "answer": "...", "mode": "generative" | "extractive"}
// A record may carry "error" instead of (or alongside) "answer" when the
// model call failed; it then contributes no predictions.

#ifndef EDNER_POSTPROCESS_H_
#define EDNER_POSTPROCESS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"
#include "edner/tagged_text.h"

namespace edner {

struct RawAnswer {
  std::string doc_id;
  std::string answer;
  PromptMode mode = PromptMode::kGenerative;
  std::optional<std::string> error;
  std::size_t line = 0;
};

// Blank lines are skipped. Throws ParseError naming the line.
std::vector<RawAnswer> parse_raw_answers(std::string_view jsonl,
                                         std::string_view name = "answers");

struct PostprocessResult {
  // Deduplicated, in corpus document order then offset order.
  std::vector<Prediction> predictions;
  // One JSON line per record: aligned count, unaligned and dropped entities,
  // parser warnings and the model error if any.
  std::string diagnostics_jsonl;
};

// Throws ValidationError for unknown or repeated doc_ids.
PostprocessResult postprocess_answers(const Corpus& corpus, std::span<const RawAnswer> answers);

}  // namespace edner

#endif  // EDNER_POSTPROCESS_H_
