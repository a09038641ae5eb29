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

#include <gtest/gtest.h>

#include "edner/error.h"
#include "edner/utf8.h"
#include "support.h"

namespace edner {
namespace {

using testing::kNoteId;
using testing::note_annotations;
using testing::note_document;

bool has_kind(const ValidationResult& r, Violation::Kind kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(EntityType, CanonicalizeLabels) {
  EXPECT_EQ(canonicalize_type("persona"), EntityType::kPer);
  EXPECT_EQ(canonicalize_type("PER"), EntityType::kPer);
  EXPECT_EQ(canonicalize_type(" Person "), EntityType::kPer);
  EXPECT_EQ(canonicalize_type("luogo"), EntityType::kLoc);
  EXPECT_EQ(canonicalize_type("Place"), EntityType::kLoc);
  EXPECT_EQ(canonicalize_type("LOCATION"), EntityType::kLoc);
  EXPECT_EQ(canonicalize_type("opera"), EntityType::kWork);
  EXPECT_EQ(canonicalize_type("work"), EntityType::kWork);
  EXPECT_FALSE(canonicalize_type("DATE").has_value());
  EXPECT_FALSE(canonicalize_type("ORG").has_value());
  EXPECT_FALSE(canonicalize_type("").has_value());
}

TEST(EntityType, CanonicalizeIsIdempotentOnRenderedNames) {
  for (EntityType t : kEntityTypes) {
    EXPECT_EQ(canonicalize_type(to_string(t)), t);
    EXPECT_EQ(canonicalize_type(italian_label(t)), t);
  }
}

TEST(Validate, NoteAnnotationsAreOk) {
  const Document doc = note_document();
  for (const Annotation& a : note_annotations()) {
    EXPECT_TRUE(validate_annotation(doc, a).ok()) << a.surface;
  }
}

TEST(Validate, EmptySpan) {
  const Document doc = note_document();
  const Annotation a{doc.doc_id, "", 5, 5, "Q1", EntityType::kPer};
  const auto r = validate_annotation(doc, a);
  EXPECT_TRUE(has_kind(r, Violation::Kind::kEmptySpan));
  EXPECT_NE(r.summary().find("empty span"), std::string::npos);
}

TEST(Validate, SubstringMismatch) {
  const Document doc{"d", "abc"};
  const auto r = validate_annotation(doc, {"d", "abd", 0, 3, "Q1", EntityType::kPer});
  EXPECT_TRUE(has_kind(r, Violation::Kind::kSurfaceMismatch));
  EXPECT_NE(r.summary().find("substring mismatch"), std::string::npos);
}

TEST(Validate, OutOfBoundsAndWrongDocument) {
  const Document doc{"d", "abc"};
  EXPECT_TRUE(has_kind(validate_annotation(doc, {"d", "bcd", 1, 4, "Q1", EntityType::kPer}),
                       Violation::Kind::kOutOfBounds));
  EXPECT_TRUE(has_kind(validate_annotation(doc, {"e", "a", 0, 1, "Q1", EntityType::kPer}),
                       Violation::Kind::kDocumentMismatch));
}

TEST(Validate, OffsetsAreCodePoints) {
  const Document doc{"d", "\xce\xb4\xce\xb9\xce\xb1 Roma"};  // Greek "dia"
  EXPECT_TRUE(validate_annotation(doc, {"d", "Roma", 4, 8, "Q220", EntityType::kLoc}).ok());
  EXPECT_TRUE(has_kind(validate_annotation(doc, {"d", "Roma", 7, 11, "Q220", EntityType::kLoc}),
                       Violation::Kind::kOutOfBounds));
}

TEST(Validate, IdentifierPatternIsOnlyAWarning) {
  const Document doc{"d", "abc"};
  const auto r = validate_annotation(doc, {"d", "abc", 0, 3, "http://example.org/x", EntityType::kWork});
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(r.has_errors());
  EXPECT_TRUE(r.violations[0].is_warning());
  EXPECT_TRUE(is_valid_identifier("Q518160"));
  EXPECT_TRUE(is_valid_identifier("viaf34613848"));
  EXPECT_FALSE(is_valid_identifier("Q"));
  EXPECT_FALSE(is_valid_identifier("viaf"));
  EXPECT_FALSE(is_valid_identifier("q12"));
  EXPECT_FALSE(is_valid_identifier("Q12x"));
}

TEST(Dedupe, KeepsFirstOccurrence) {
  const Prediction p1{"d", "Gelli", 0, 5, EntityType::kPer};
  const Prediction p2{"d", "Roma", 7, 11, EntityType::kLoc};
  Prediction p1_other_surface = p1;
  p1_other_surface.surface = "GELLI";
  EXPECT_EQ(dedupe_predictions(std::vector{p1, p1, p2}), (std::vector{p1, p2}));
  EXPECT_EQ(dedupe_predictions(std::vector{p1_other_surface, p1}), (std::vector{p1_other_surface}));
  EXPECT_TRUE(dedupe_predictions(std::vector<Prediction>{}).empty());
}

TEST(Dedupe, DifferentTypesAreDistinct) {
  const Prediction a{"d", "x", 0, 5, EntityType::kPer};
  const Prediction b{"d", "x", 0, 5, EntityType::kLoc};
  EXPECT_EQ(dedupe_predictions(std::vector{a, b}).size(), 2u);
}

TEST(Dedupe, IdempotentAndOrderPreserving) {
  testing::Gen gen(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<Prediction> preds;
    for (std::size_t i = gen.uniform(0, 20); i > 0; --i) {
      const std::size_t s = gen.uniform(0, 5);
      preds.push_back({gen.chance(0.5) ? "a" : "b", "", s, s + gen.uniform(1, 2), gen.type()});
    }
    const auto once = dedupe_predictions(preds);
    EXPECT_EQ(dedupe_predictions(once), once);
    // Survivors appear in input order.
    std::size_t cursor = 0;
    for (const Prediction& p : once) {
      while (cursor < preds.size() && !(preds[cursor] == p)) ++cursor;
      ASSERT_LT(cursor, preds.size());
      ++cursor;
    }
  }
}

TEST(Corpus, CreateSortsAnnotationsPerDocument) {
  auto anns = note_annotations();
  std::swap(anns[0], anns[2]);
  const Corpus c = Corpus::create({note_document()}, anns);
  ASSERT_EQ(c.annotations().size(), 3u);
  EXPECT_EQ(c.annotations()[0].surface, "Gelli");
  EXPECT_EQ(c.annotations()[2].surface, "Degli Scritt. del Trecento");
  EXPECT_EQ(c.annotations_of(kNoteId).size(), 3u);
  EXPECT_TRUE(c.annotations_of("missing").empty());
  EXPECT_TRUE(c.contains(kNoteId));
  EXPECT_FALSE(c.contains("missing"));
}

TEST(Corpus, RejectsOverlappingGold) {
  const Document doc{"d", "Pier Vettori"};
  const std::vector<Annotation> anns = {{"d", "Pier Vettori", 0, 12, "Q1", EntityType::kPer},
                                        {"d", "Vettori", 5, 12, "Q2", EntityType::kPer}};
  try {
    Corpus::create({doc}, anns);
    FAIL() << "overlap accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("overlap"), std::string::npos);
  }
}

TEST(Corpus, RejectsOverlapHiddenBehindALongSpan) {
  // [0,10) contains [2,3) and [5,6); the last two do not touch each other.
  const Document doc{"d", "abcdefghij"};
  const std::vector<Annotation> anns = {{"d", "abcdefghij", 0, 10, "Q1", EntityType::kPer},
                                        {"d", "c", 2, 3, "Q2", EntityType::kPer},
                                        {"d", "f", 5, 6, "Q3", EntityType::kLoc}};
  EXPECT_THROW(Corpus::create({doc}, anns), ValidationError);
}

TEST(Corpus, AdjacentSpansAreFine) {
  const Document doc{"d", "abcd"};
  EXPECT_NO_THROW(Corpus::create({doc}, {{"d", "ab", 0, 2, "Q1", EntityType::kPer},
                                         {"d", "cd", 2, 4, "Q2", EntityType::kLoc}}));
}

TEST(Corpus, RejectsStructuralErrors) {
  EXPECT_THROW(Corpus::create({{"d", "a"}, {"d", "b"}}, {}), ValidationError);
  EXPECT_THROW(Corpus::create({{"", "a"}}, {}), ValidationError);
  EXPECT_THROW(Corpus::create({{"d", ""}}, {}), ValidationError);
  EXPECT_NO_THROW(Corpus::create({{"d", "", true}}, {}));
  EXPECT_THROW(Corpus::create({{"d", "abc"}}, {{"x", "a", 0, 1, "Q1", EntityType::kPer}}),
               ValidationError);
  EXPECT_THROW(Corpus::create({{"d", "abc"}}, {{"d", "b", 0, 1, "Q1", EntityType::kPer}}),
               ValidationError);
}

TEST(Corpus, IdentifierWarningsAreCollected) {
  std::vector<std::string> warnings;
  const Corpus c = Corpus::create({{"d", "abc"}}, {{"d", "abc", 0, 3, "bogus", EntityType::kWork}},
                                  &warnings);
  EXPECT_EQ(c.annotations().size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Corpus, ErrorMessageNamesRows) {
  try {
    Corpus::create({{"d", "abc"}}, {{"d", "abd", 0, 3, "Q1", EntityType::kPer}}, nullptr,
                   [](std::size_t i) { return "annotations.csv:" + std::to_string(i + 2); });
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("annotations.csv:2"), std::string::npos);
  }
}

TEST(Corpus, AcceptedAnnotationsSatisfyTheSubstringInvariant) {
  testing::Gen gen(3);
  for (int round = 0; round < 300; ++round) {
    const Document doc{"d", testing::random_text(gen, gen.uniform(1, 80))};
    const auto spans = testing::random_disjoint_spans(gen, utf8::length(doc.text), 8);
    const Corpus c = Corpus::create({doc}, testing::annotations_for(doc, spans));
    const utf8::CodePointIndex index(doc.text);
    for (const Annotation& a : c.annotations()) {
      ASSERT_EQ(index.slice(a.start_pos, a.end_pos).value(), a.surface);
    }
  }
}

}  // namespace
}  // namespace edner
