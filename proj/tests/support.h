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

// Fixtures and random generators shared by the unit and acceptance tests.

#ifndef EDNER_TESTS_SUPPORT_H_
#define EDNER_TESTS_SUPPORT_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner::testing {

inline constexpr std::string_view kNoteId = "https://digitalzibaldone.net/node/p2721_1";
inline constexpr std::string_view kNoteText =
    "Anche il Gelli confessava (ap. Perticari Degli Scritt. del Trecento l. 2. c. 13. p. 183.) "
    "che la lingua toscana non era stata applicata alle scienze. (24. Maggio 1823.).";

inline std::filesystem::path data_path(std::string_view name) {
  return std::filesystem::path(EDNER_TEST_DATA) / name;
}

inline Document note_document() { return {std::string(kNoteId), std::string(kNoteText)}; }

inline std::vector<Annotation> note_annotations() {
  const std::string id(kNoteId);
  return {{id, "Gelli", 9, 14, "Q518160", EntityType::kPer},
          {id, "Perticari", 31, 40, "Q3769747", EntityType::kPer},
          {id, "Degli Scritt. del Trecento", 41, 67, "viaf34613848", EntityType::kWork}};
}

inline Corpus note_corpus() { return Corpus::create({note_document()}, note_annotations()); }

template <typename T>
std::vector<T> to_vector(std::span<const T> items) {
  return {items.begin(), items.end()};
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("edner-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  // Inclusive bounds.
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  EntityType type() { return kEntityTypes[uniform(0, 2)]; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[uniform(0, items.size() - 1)];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Mixed-width UTF-8 pieces: ASCII, CSV and tag-like punctuation, Italian
// accents, Greek, a supplementary-plane symbol and a no-break space. No '>',
// so generated text never contains a complete tag.
inline const std::vector<std::string>& text_alphabet() {
  static const std::vector<std::string> pieces = {
      "a", "e", "i", "o", "u", "L", "G", "r", "s", "t", "n", "1", "9", " ", " ", " ",
      ",", ".", ";", "\"", "'", "(", ")", "\n", "\r", "<", "/", "_", "\xc3\xa0",
      "\xc3\xa8", "\xc3\xa9", "\xc3\xb2", "\xce\xb1", "\xce\xbb", "\xcf\x89",
      "\xf0\x9f\x93\x9c", "\xc2\xa0"};
  return pieces;
}

// Returns text of exactly `length` code points.
inline std::string random_text(Gen& gen, std::size_t length) {
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out += gen.pick(text_alphabet());
  return out;
}

struct Span {
  std::size_t start;
  std::size_t end;
  EntityType type;
};

// Sorted, non-overlapping, non-empty spans inside [0, length); adjacent
// spans are allowed.
inline std::vector<Span> random_disjoint_spans(Gen& gen, std::size_t length,
                                               std::size_t max_spans) {
  std::vector<Span> spans;
  const std::size_t want = gen.uniform(0, max_spans);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < want && pos < length; ++k) {
    const std::size_t start = pos + gen.uniform(0, std::min<std::size_t>(6, length - pos - 1));
    const std::size_t end = start + gen.uniform(1, std::min<std::size_t>(8, length - start));
    spans.push_back({start, end, gen.type()});
    pos = end;
  }
  return spans;
}

// Cuts `text` (code points) at `spans` to build annotations with the exact
// surfaces.
inline std::vector<Annotation> annotations_for(const Document& doc, const std::vector<Span>& spans) {
  std::vector<std::string> cps;
  for (std::size_t i = 0; i < doc.text.size();) {
    std::size_t n = 1;
    const auto lead = static_cast<unsigned char>(doc.text[i]);
    if (lead >= 0xF0) {
      n = 4;
    } else if (lead >= 0xE0) {
      n = 3;
    } else if (lead >= 0xC0) {
      n = 2;
    }
    cps.push_back(doc.text.substr(i, n));
    i += n;
  }
  std::vector<Annotation> out;
  std::size_t qid = 1;
  for (const Span& s : spans) {
    std::string surface;
    for (std::size_t i = s.start; i < s.end; ++i) surface += cps[i];
    out.push_back({doc.doc_id, surface, s.start, s.end, "Q" + std::to_string(qid++), s.type});
  }
  return out;
}

// A (gold, predictions) pair over a few documents. Predictions mix copies
// of gold spans, shifted boundaries, retyped spans, duplicates and noise, and
// may overlap each other.
struct Instance {
  std::vector<Annotation> gold;
  std::vector<Prediction> preds;
};

inline Instance random_instance(Gen& gen, std::size_t max_spans = 10) {
  Instance inst;
  const std::size_t docs = gen.uniform(1, 3);
  for (std::size_t d = 0; d < docs; ++d) {
    const std::string doc_id = "doc" + std::to_string(d);
    const std::size_t length = 60;
    const std::size_t doc_gold_begin = inst.gold.size();
    for (const Span& s : random_disjoint_spans(gen, length, max_spans)) {
      inst.gold.push_back({doc_id, "", s.start, s.end, "Q1", s.type});
    }
    const std::size_t n_preds = gen.uniform(0, max_spans);
    for (std::size_t k = 0; k < n_preds; ++k) {
      Prediction p{doc_id, "", 0, 0, gen.type()};
      const bool has_gold = doc_gold_begin < inst.gold.size();
      const std::size_t mode = gen.uniform(0, has_gold ? 4 : 0);
      if (mode == 0) {
        p.start_pos = gen.uniform(0, length - 1);
        p.end_pos = gen.uniform(p.start_pos + 1, std::min(length, p.start_pos + 12));
      } else {
        const Annotation& g = inst.gold[gen.uniform(doc_gold_begin, inst.gold.size() - 1)];
        p.start_pos = g.start_pos;
        p.end_pos = g.end_pos;
        if (mode >= 2) p.type = g.type;
        if (mode >= 3) {
          const std::size_t lo = g.start_pos >= 3 ? g.start_pos - 3 : 0;
          p.start_pos = gen.uniform(lo, g.end_pos - 1);
          p.end_pos = gen.uniform(p.start_pos + 1, std::min(length, g.end_pos + 3));
        }
      }
      inst.preds.push_back(p);
      if (gen.chance(0.05)) inst.preds.push_back(p);
    }
  }
  std::shuffle(inst.preds.begin(), inst.preds.end(), gen.engine());
  return inst;
}

}  // namespace edner::testing

#endif  // EDNER_TESTS_SUPPORT_H_
