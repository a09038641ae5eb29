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

// Codec between standoff spans and the two tagged answer formats produced by
// chat models:
//
//   generative  "Anche il <PER>Gelli</PER> confessava (ap. <PER>Perticari</PER> ..."
//   extractive  "<PER>Gelli</PER>, <WORK>Degli Scritt. del Trecento</WORK>"
//
// Post-processing an answer is parse -> filter_known_types -> align_to_source.

#ifndef EDNER_TAGGED_TEXT_H_
#define EDNER_TAGGED_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner {

struct TaggedEntity {
  std::string type_label;  // as emitted, or canonical after filtering
  std::string surface;
  std::size_t rank = 0;  // order of appearance in the answer

  bool operator==(const TaggedEntity&) const = default;
};

// Finds `<label>...</label>` pairs, label matching [A-Za-z_][A-Za-z0-9_ ]*
// and the closing label equal to the opening one. Nested pairs collapse to
// the outermost, with every inner tag removed from the surface. Unclosed
// openers and stray closers are ignored (and reported in `warnings`); pairs
// inside an unclosed opener are still found. Pairs with empty content are
// skipped.
std::vector<TaggedEntity> parse_inline_tagged(std::string_view answer,
                                              std::vector<std::string>* warnings = nullptr);

// Same grammar for list-shaped answers; separators and any prose around the
// list are ignored.
std::vector<TaggedEntity> parse_entity_list(std::string_view answer,
                                            std::vector<std::string>* warnings = nullptr);

struct TypeFilterResult {
  std::vector<TaggedEntity> kept;  // labels rewritten to PER/LOC/WORK
  std::vector<TaggedEntity> dropped;
};

TypeFilterResult filter_known_types(std::span<const TaggedEntity> entities);

struct AlignmentOutcome {
  std::vector<Prediction> aligned;
  std::vector<TaggedEntity> unaligned;  // surface not found in the source
  std::vector<TaggedEntity> dropped;    // unknown type label
};

// Left-to-right consuming alignment. A cursor starts at 0; each entity, in
// rank order, takes the first exact occurrence of its surface at or after
// the cursor, or failing that the first occurrence from the start of the
// text. The cursor then moves to the end of the match. Surfaces that never
// occur are reported as unaligned. Entities whose label is not a known type
// end up in `dropped`.
AlignmentOutcome align_to_source(std::span<const TaggedEntity> entities, const Document& source);

enum class PromptMode { kGenerative, kExtractive };

std::string_view to_string(PromptMode mode);
std::optional<PromptMode> parse_prompt_mode(std::string_view text);

// parse (per mode) -> filter -> align, with filtered-out entities in
// `dropped`.
AlignmentOutcome postprocess_answer(std::string_view answer, PromptMode mode,
                                    const Document& source,
                                    std::vector<std::string>* warnings = nullptr);

// Inserts <TYPE>...</TYPE> around each span. Throws PreconditionError for
// overlapping or out-of-range spans. Parsing the result gives back the spans'
// types and surfaces in offset order as long as the document text itself
// contains no tag-shaped sequences.
std::string render_inline_tagged(const Document& doc, std::span<const Annotation> spans);
std::string render_inline_tagged(const Document& doc, std::span<const Prediction> spans);

}  // namespace edner

#endif  // EDNER_TAGGED_TEXT_H_
