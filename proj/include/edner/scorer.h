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

// Span-level NER scoring with exact and fuzzy (overlap) matching.
//
// Matching is one-to-one and class-segregated: a prediction can only match
// a gold span of the same document and the same type. Fuzzy matching first
// commits every exact match, then pairs the remaining spans greedily by
// decreasing overlap length (ties: smaller gold start, then smaller
// prediction start), so the exact pair set is always a subset of the fuzzy
// one.

#ifndef EDNER_SCORER_H_
#define EDNER_SCORER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner {

enum class MatchMode { kExact, kFuzzy };

std::string_view to_string(MatchMode mode);
std::optional<MatchMode> parse_match_mode(std::string_view text);

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ClassCounts& operator+=(const ClassCounts& o) {
    tp += o.tp, fp += o.fp, fn += o.fn;
    return *this;
  }
  bool operator==(const ClassCounts&) const = default;
};

struct MatchPair {
  std::size_t gold;  // index into the gold input
  std::size_t pred;  // index into the prediction input

  bool operator==(const MatchPair&) const = default;
};

struct MatchResult {
  std::array<ClassCounts, 3> per_class{};  // indexed like kEntityTypes
  std::vector<MatchPair> pairs;            // sorted by gold index

  const ClassCounts& counts(EntityType t) const {
    return per_class[static_cast<std::size_t>(t)];
  }
  ClassCounts pooled() const;

  bool operator==(const MatchResult&) const = default;
};

// Both matchers throw ValidationError when gold spans overlap inside a
// document.
MatchResult match_exact(std::span<const Annotation> gold, std::span<const Prediction> preds);
MatchResult match_fuzzy(std::span<const Annotation> gold, std::span<const Prediction> preds);
MatchResult match(std::span<const Annotation> gold, std::span<const Prediction> preds,
                  MatchMode mode);

// Exact non-negative rational, always reduced; 0/0 is represented as 0/1.
class Ratio {
 public:
  Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // value * 100 rounded half-up to two decimals, in hundredths
  // (1/3 -> 3333, 2/3 -> 6667).
  std::int64_t percent_hundredths() const;

  friend Ratio operator+(const Ratio& a, const Ratio& b);
  Ratio divided_by(std::int64_t k) const;

  bool operator==(const Ratio&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct Metrics {
  Ratio precision;
  Ratio recall;
  Ratio f1;

  bool operator==(const Metrics&) const = default;
};

// P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R); every 0/0 is 0.
Metrics prf(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvaluationReport {
  MatchMode mode = MatchMode::kExact;
  std::array<Metrics, 3> per_class{};
  Metrics micro;  // from pooled counts
  Metrics macro;  // unweighted mean over PER, LOC and WORK
  MatchResult totals;

  const Metrics& metrics(EntityType t) const { return per_class[static_cast<std::size_t>(t)]; }
};

// Derives every metric from the counts in `totals`.
EvaluationReport make_report(MatchMode mode, MatchResult totals);

// Throws ValidationError listing prediction doc_ids unknown to the corpus,
// or predictions whose span is empty, out of range or does not spell the
// surface. Duplicate predictions are removed before matching.
EvaluationReport evaluate(const Corpus& gold, std::span<const Prediction> preds, MatchMode mode);

}  // namespace edner

#endif  // EDNER_SCORER_H_
