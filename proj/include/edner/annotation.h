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

// Core domain model: documents, gold annotations, predictions and the
// corpus container that ties them together.
//
// Offsets are code point indices into Document::text, start inclusive and
// end exclusive.

#ifndef EDNER_ANNOTATION_H_
#define EDNER_ANNOTATION_H_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace edner {

enum class EntityType { kPer, kLoc, kWork };

inline constexpr std::array<EntityType, 3> kEntityTypes = {
    EntityType::kPer, EntityType::kLoc, EntityType::kWork};

// "PER", "LOC" or "WORK".
std::string_view to_string(EntityType type);

// "persona", "luogo" or "opera".
std::string_view italian_label(EntityType type);

// Case-insensitive, whitespace-trimmed label mapping. Returns nullopt for
// labels outside the three known classes (e.g. "DATE", "ORG").
std::optional<EntityType> canonicalize_type(std::string_view label);

struct Document {
  std::string doc_id;
  std::string text;
  // Set by ingestion for notes whose body could not be recovered. Only
  // placeholders may carry empty text.
  bool placeholder = false;

  bool operator==(const Document&) const = default;
};

struct Annotation {
  std::string doc_id;
  std::string surface;
  std::size_t start_pos = 0;
  std::size_t end_pos = 0;
  std::string identifier;  // Wikidata QID or VIAF id
  EntityType type = EntityType::kPer;

  bool operator==(const Annotation&) const = default;
};

struct Prediction {
  std::string doc_id;
  std::string surface;
  std::size_t start_pos = 0;
  std::size_t end_pos = 0;
  EntityType type = EntityType::kPer;

  bool operator==(const Prediction&) const = default;
};

Prediction to_prediction(const Annotation& ann);

// `Q[0-9]+` or `viaf[0-9]+`.
bool is_valid_identifier(std::string_view identifier);

struct Violation {
  enum class Kind {
    kDocumentMismatch,
    kEmptySpan,
    kOutOfBounds,
    kSurfaceMismatch,
    kIdentifierPattern,  // warning only
  };
  Kind kind;
  std::string message;

  bool is_warning() const { return kind == Kind::kIdentifierPattern; }
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has_errors() const;
  std::string summary() const;
};

ValidationResult validate_annotation(const Document& doc,
                                     const Annotation& ann);
ValidationResult validate_prediction(const Document& doc,
                                     const Prediction& pred);

// Drops repeated (doc_id, start, end, type) keys, keeping the first.
std::vector<Prediction> dedupe_predictions(std::span<const Prediction> preds);

// Validated set of documents and their gold annotations. Documents keep
// insertion order; annotations are stored grouped by document (in document
// order) and sorted by offset within each document.
class Corpus {
 public:
  // Describes input row i for error messages, e.g. "annotations.csv:12".
  using RowLabel = std::function<std::string(std::size_t)>;

  Corpus() = default;

  // Validates every invariant and throws ValidationError listing all
  // offending rows. Identifier-pattern problems are appended to `warnings`.
  static Corpus create(std::vector<Document> documents,
                       std::vector<Annotation> annotations,
                       std::vector<std::string>* warnings = nullptr,
                       const RowLabel& row_label = {});

  std::span<const Document> documents() const { return documents_; }
  std::span<const Annotation> annotations() const { return annotations_; }

  const Document* find(std::string_view doc_id) const;
  bool contains(std::string_view doc_id) const { return find(doc_id); }

  // Annotations of one document, offset-sorted. Empty for unknown ids.
  std::span<const Annotation> annotations_of(std::string_view doc_id) const;

  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  bool operator==(const Corpus& other) const {
    return documents_ == other.documents_ &&
           annotations_ == other.annotations_;
  }

 private:
  struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  std::vector<Document> documents_;
  std::vector<Annotation> annotations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Range> ranges_;  // parallel to documents_
};

}  // namespace edner

#endif  // EDNER_ANNOTATION_H_
