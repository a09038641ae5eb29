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

#ifndef EDNER_CORPUS_OPS_H_
#define EDNER_CORPUS_OPS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "edner/annotation.h"

namespace edner {

// Keeps documents with at most `max_tokens` whitespace tokens and at least
// `min_annotations` gold annotations.
Corpus filter_training_notes(const Corpus& corpus, std::size_t max_tokens = 350,
                             std::size_t min_annotations = 1);

struct SplitSpec {
  // train_fraction = numerator / denominator, strictly between 0 and 1.
  std::uint64_t numerator = 9;
  std::uint64_t denominator = 10;
  std::uint64_t seed = 0;
};

// Document-level split. Documents are shuffled with a seeded mt19937_64 and
// an explicit Fisher-Yates pass (so the result does not depend on the
// standard library), the first ceil(N * fraction) go to training, clamped so
// both sides are non-empty. Each partition keeps the input document order.
// Throws PreconditionError for fewer than 2 documents or a bad fraction.
std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus, const SplitSpec& spec);

struct CorpusStats {
  std::array<std::size_t, 3> per_type{};  // indexed like kEntityTypes
  std::size_t annotations = 0;
  std::size_t documents = 0;
  std::size_t min_tokens = 0;
  double median_tokens = 0;
  std::size_t max_tokens = 0;

  std::size_t count(EntityType t) const { return per_type[static_cast<std::size_t>(t)]; }
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace edner

#endif  // EDNER_CORPUS_OPS_H_
