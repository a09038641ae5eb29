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

#include "edner/corpus_ops.h"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_set>

#include "edner/error.h"
#include "edner/utf8.h"

namespace edner {
namespace {

Corpus subset(const Corpus& corpus, const std::vector<bool>& keep) {
  std::vector<Document> docs;
  std::vector<Annotation> anns;
  const auto all = corpus.documents();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!keep[i]) continue;
    docs.push_back(all[i]);
    const auto of = corpus.annotations_of(all[i].doc_id);
    anns.insert(anns.end(), of.begin(), of.end());
  }
  return Corpus::create(std::move(docs), std::move(anns));
}

// Uniform in [0, bound) by rejection; independent of the standard library's
// distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Corpus filter_training_notes(const Corpus& corpus, std::size_t max_tokens,
                             std::size_t min_annotations) {
  const auto docs = corpus.documents();
  std::vector<bool> keep(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    keep[i] = utf8::count_tokens(docs[i].text) <= max_tokens &&
              corpus.annotations_of(docs[i].doc_id).size() >= min_annotations;
  }
  return subset(corpus, keep);
}

std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.denominator == 0 || spec.numerator == 0 || spec.numerator >= spec.denominator) {
    throw PreconditionError("train fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = corpus.size();
  if (n < 2) throw PreconditionError("corpus too small to split: need at least 2 documents");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[bounded(rng, i + 1)]);
  }

  std::uint64_t train = (static_cast<std::uint64_t>(n) * spec.numerator + spec.denominator - 1) /
                        spec.denominator;
  train = std::clamp<std::uint64_t>(train, 1, n - 1);

  std::vector<bool> in_train(n, false);
  for (std::size_t k = 0; k < train; ++k) in_train[order[k]] = true;
  std::vector<bool> in_val(n);
  for (std::size_t i = 0; i < n; ++i) in_val[i] = !in_train[i];
  return {subset(corpus, in_train), subset(corpus, in_val)};
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (const Annotation& a : corpus.annotations()) {
    ++stats.per_type[static_cast<std::size_t>(a.type)];
  }
  stats.annotations = corpus.annotations().size();
  stats.documents = corpus.size();
  if (corpus.empty()) return stats;

  std::vector<std::size_t> tokens;
  tokens.reserve(corpus.size());
  for (const Document& d : corpus.documents()) tokens.push_back(utf8::count_tokens(d.text));
  std::sort(tokens.begin(), tokens.end());
  stats.min_tokens = tokens.front();
  stats.max_tokens = tokens.back();
  const std::size_t mid = tokens.size() / 2;
  stats.median_tokens = tokens.size() % 2 == 1
                            ? static_cast<double>(tokens[mid])
                            : (static_cast<double>(tokens[mid - 1]) + tokens[mid]) / 2.0;
  return stats;
}

}  // namespace edner
