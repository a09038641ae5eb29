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

#include "edner/annotation.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "edner/error.h"
#include "edner/utf8.h"

namespace edner {
namespace {

std::string trim_lower(std::string_view s) {
  const auto is_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_span(const Document& doc, std::string_view doc_id,
                std::string_view surface, std::size_t start, std::size_t end,
                std::vector<Violation>& out) {
  using Kind = Violation::Kind;
  if (doc_id != doc.doc_id) {
    out.push_back({Kind::kDocumentMismatch,
                   "doc_id '" + std::string(doc_id) +
                       "' does not match document '" + doc.doc_id + "'"});
  }
  if (start >= end) {
    out.push_back({Kind::kEmptySpan, "empty span [" + std::to_string(start) +
                                         ", " + std::to_string(end) + ")"});
    return;
  }
  const utf8::CodePointIndex index(doc.text);
  if (end > index.size()) {
    out.push_back({Kind::kOutOfBounds,
                   "span end " + std::to_string(end) +
                       " exceeds text length " + std::to_string(index.size())});
    return;
  }
  const std::string_view actual = *index.slice(start, end);
  if (actual != surface) {
    out.push_back({Kind::kSurfaceMismatch,
                   "substring mismatch: text has '" + std::string(actual) +
                       "', surface is '" + std::string(surface) + "'"});
  }
}

}  // namespace

std::string_view to_string(EntityType type) {
  switch (type) {
    case EntityType::kPer: return "PER";
    case EntityType::kLoc: return "LOC";
    case EntityType::kWork: return "WORK";
  }
  return "?";
}

std::string_view italian_label(EntityType type) {
  switch (type) {
    case EntityType::kPer: return "persona";
    case EntityType::kLoc: return "luogo";
    case EntityType::kWork: return "opera";
  }
  return "?";
}

std::optional<EntityType> canonicalize_type(std::string_view label) {
  const std::string key = trim_lower(label);
  if (key == "per" || key == "person" || key == "persona") return EntityType::kPer;
  if (key == "loc" || key == "location" || key == "luogo" || key == "place") {
    return EntityType::kLoc;
  }
  if (key == "work" || key == "opera") return EntityType::kWork;
  return std::nullopt;
}

Prediction to_prediction(const Annotation& ann) {
  return {ann.doc_id, ann.surface, ann.start_pos, ann.end_pos, ann.type};
}

bool is_valid_identifier(std::string_view identifier) {
  if (identifier.starts_with("Q")) return all_digits(identifier.substr(1));
  if (identifier.starts_with("viaf")) return all_digits(identifier.substr(4));
  return false;
}

bool ValidationResult::has_errors() const {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return !v.is_warning(); });
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationResult validate_annotation(const Document& doc,
                                     const Annotation& ann) {
  ValidationResult result;
  check_span(doc, ann.doc_id, ann.surface, ann.start_pos, ann.end_pos,
             result.violations);
  if (!is_valid_identifier(ann.identifier)) {
    result.violations.push_back(
        {Violation::Kind::kIdentifierPattern,
         "identifier '" + ann.identifier + "' is neither Q<digits> nor viaf<digits>"});
  }
  return result;
}

ValidationResult validate_prediction(const Document& doc,
                                     const Prediction& pred) {
  ValidationResult result;
  check_span(doc, pred.doc_id, pred.surface, pred.start_pos, pred.end_pos,
             result.violations);
  return result;
}

std::vector<Prediction> dedupe_predictions(std::span<const Prediction> preds) {
  using Key = std::tuple<std::string_view, std::size_t, std::size_t, EntityType>;
  std::set<Key> seen;
  std::vector<Prediction> out;
  out.reserve(preds.size());
  for (const Prediction& p : preds) {
    if (seen.emplace(p.doc_id, p.start_pos, p.end_pos, p.type).second) {
      out.push_back(p);
    }
  }
  return out;
}

Corpus Corpus::create(std::vector<Document> documents,
                      std::vector<Annotation> annotations,
                      std::vector<std::string>* warnings,
                      const RowLabel& row_label) {
  const auto label = [&](std::size_t i) {
    return row_label ? row_label(i) : "annotation " + std::to_string(i);
  };
  std::vector<std::string> errors;

  Corpus corpus;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const Document& doc = documents[i];
    if (doc.doc_id.empty()) {
      errors.push_back("document " + std::to_string(i) + ": empty doc_id");
      continue;
    }
    if (doc.text.empty() && !doc.placeholder) {
      errors.push_back("document '" + doc.doc_id +
                       "': empty text on a non-placeholder document");
    }
    if (!corpus.index_.emplace(doc.doc_id, i).second) {
      errors.push_back("duplicate doc_id '" + doc.doc_id + "'");
    }
  }

  // Sort a permutation so diagnostics keep the caller's row numbers.
  std::vector<std::size_t> order;
  order.reserve(annotations.size());
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const Annotation& ann = annotations[i];
    auto it = corpus.index_.find(ann.doc_id);
    if (it == corpus.index_.end()) {
      errors.push_back(label(i) + ": unknown doc_id '" + ann.doc_id + "'");
      continue;
    }
    const ValidationResult check = validate_annotation(documents[it->second], ann);
    for (const Violation& v : check.violations) {
      if (v.is_warning()) {
        if (warnings) warnings->push_back(label(i) + ": " + v.message);
      } else {
        errors.push_back(label(i) + ": " + v.message);
      }
    }
    order.push_back(i);
  }

  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Annotation& x = annotations[a];
    const Annotation& y = annotations[b];
    return std::tuple(corpus.index_.at(x.doc_id), x.start_pos, x.end_pos, x.type) <
           std::tuple(corpus.index_.at(y.doc_id), y.start_pos, y.end_pos, y.type);
  });

  // `reach` is the annotation with the largest end seen so far in the
  // current document; any later start before that end collides with it.
  std::size_t reach = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Annotation& cur = annotations[order[k]];
    if (annotations[order[reach]].doc_id != cur.doc_id) {
      reach = k;
      continue;
    }
    const Annotation& prev = annotations[order[reach]];
    if (cur.start_pos < prev.end_pos) {
      errors.push_back(label(order[reach]) + " and " + label(order[k]) +
                       " overlap in '" + cur.doc_id + "' ([" +
                       std::to_string(prev.start_pos) + ", " +
                       std::to_string(prev.end_pos) + ") vs [" +
                       std::to_string(cur.start_pos) + ", " +
                       std::to_string(cur.end_pos) + "))");
    }
    if (cur.end_pos > prev.end_pos) reach = k;
  }

  if (!errors.empty()) {
    std::ostringstream msg;
    msg << errors.size() << " corpus invariant violation(s):";
    constexpr std::size_t kMaxListed = 50;
    for (std::size_t i = 0; i < errors.size() && i < kMaxListed; ++i) {
      msg << "\n  " << errors[i];
    }
    if (errors.size() > kMaxListed) msg << "\n  ...";
    throw ValidationError(msg.str());
  }

  corpus.documents_ = std::move(documents);
  corpus.ranges_.assign(corpus.documents_.size(), Range{});
  corpus.annotations_.reserve(order.size());
  for (std::size_t i : order) {
    const std::size_t doc = corpus.index_.at(annotations[i].doc_id);
    if (corpus.ranges_[doc].begin == corpus.ranges_[doc].end) {
      corpus.ranges_[doc].begin = corpus.annotations_.size();
    }
    corpus.annotations_.push_back(std::move(annotations[i]));
    corpus.ranges_[doc].end = corpus.annotations_.size();
  }
  return corpus;
}

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = index_.find(std::string(doc_id));
  return it == index_.end() ? nullptr : &documents_[it->second];
}

std::span<const Annotation> Corpus::annotations_of(std::string_view doc_id) const {
  auto it = index_.find(std::string(doc_id));
  if (it == index_.end()) return {};
  const Range r = ranges_[it->second];
  return std::span<const Annotation>(annotations_).subspan(r.begin, r.end - r.begin);
}

}  // namespace edner
