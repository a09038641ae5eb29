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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
// A1 and A2 need the published dataset: set EDNER_DATASET to a directory
// with train/ and test/ corpus subdirectories (documents.csv and
// annotations.csv each), or EDNER_DATASET_TRAIN and EDNER_DATASET_TEST.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edner/annotation.h"
#include "edner/cli.h"
#include "edner/corpus_io.h"
#include "edner/csv.h"
#include "edner/edition.h"
#include "edner/scorer.h"
#include "edner/tagged_text.h"
#include "edner/utf8.h"
#include "json.hpp"
#include "oracle.h"
#include "support.h"

namespace edner {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;  // 0: no runtime bound
  std::function<Outcome()> check;
};

std::optional<std::pair<fs::path, fs::path>> dataset_dirs() {
  const char* train = std::getenv("EDNER_DATASET_TRAIN");
  const char* test = std::getenv("EDNER_DATASET_TEST");
  if (train && test) return std::pair{fs::path(train), fs::path(test)};
  if (const char* root = std::getenv("EDNER_DATASET")) {
    return std::pair{fs::path(root) / "train", fs::path(root) / "test"};
  }
  return std::nullopt;
}

std::string missing_dataset() {
  return "published dataset not available (set EDNER_DATASET or EDNER_DATASET_TRAIN and "
         "EDNER_DATASET_TEST)";
}

int cli_run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (code != cli::kExitOk) std::cerr << e.str();
  return code;
}

// ------------------------------------------------------------------- A1

Outcome table3_counts() {
  const auto dirs = dataset_dirs();
  if (!dirs) return {false, missing_dataset()};
  std::string out;
  if (cli_run({"stats", "--corpus", "train=" + dirs->first.string(), "--corpus",
               "test=" + dirs->second.string(), "--format", "json"},
              &out) != cli::kExitOk) {
    return {false, "stats failed on the dataset"};
  }
  const json j = json::parse(out);
  const std::map<std::string, std::array<int, 3>> want = {{"train", {1093, 407, 635}},
                                                          {"test", {492, 61, 211}}};
  Outcome o{true, ""};
  for (const auto& [part, counts] : want) {
    const std::array<int, 3> got = {j[part]["PER"].get<int>(), j[part]["LOC"].get<int>(),
                                    j[part]["WORK"].get<int>()};
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += part + " PER/LOC/WORK=" + std::to_string(got[0]) + "/" + std::to_string(got[1]) +
                "/" + std::to_string(got[2]);
    if (got != counts) o.pass = false;
  }
  return o;
}

// ------------------------------------------------------------------- A2

struct FidelityCount {
  std::size_t rows = 0;
  std::size_t code_point_ok = 0;
  std::size_t byte_ok = 0;
};

FidelityCount offset_fidelity(const fs::path& dir) {
  FidelityCount c;
  std::map<std::string, std::string> texts;
  const auto docs = csv::parse(read_file(dir / kDocumentsFile));
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].fields.size() >= 2) texts[docs[i].fields[0]] = docs[i].fields[1];
  }
  const auto anns = csv::parse(read_file(dir / kAnnotationsFile));
  for (std::size_t i = 1; i < anns.size(); ++i) {
    const auto& f = anns[i].fields;
    ++c.rows;
    if (f.size() < 4) continue;
    const auto text = texts.find(f[0]);
    if (text == texts.end()) continue;
    std::size_t start = 0, end = 0;
    try {
      start = std::stoul(f[2]);
      end = std::stoul(f[3]);
    } catch (const std::exception&) {
      continue;
    }
    const utf8::CodePointIndex index(text->second);
    if (index.slice(start, end) == std::optional<std::string_view>(f[1])) ++c.code_point_ok;
    if (end <= text->second.size() && start <= end &&
        text->second.compare(start, end - start, f[1]) == 0) {
      ++c.byte_ok;
    }
  }
  return c;
}

Outcome offsets_are_code_points() {
  const auto dirs = dataset_dirs();
  if (!dirs) return {false, missing_dataset()};
  FidelityCount total;
  for (const fs::path& dir : {dirs->first, dirs->second}) {
    const FidelityCount c = offset_fidelity(dir);
    total.rows += c.rows;
    total.code_point_ok += c.code_point_ok;
    total.byte_ok += c.byte_ok;
  }
  return {total.rows > 0 && total.code_point_ok == total.rows,
          std::to_string(total.code_point_ok) + "/" + std::to_string(total.rows) +
              " rows match by code points (" + std::to_string(total.byte_ok) + " by bytes)"};
}

// ------------------------------------------------------------------- A3

Outcome table2_golden() {
  testing::TempDir tmp;
  fs::copy_file(testing::data_path("p2721_1.html"), tmp / "p2721_1.html");
  const Corpus c = ingest_html_dir(tmp.path(), IngestConfig{});
  const std::string id = "https://digitalzibaldone.net/node/p2721_1";
  const std::vector<Annotation> want = {
      {id, "Gelli", 9, 14, "Q518160", EntityType::kPer},
      {id, "Perticari", 31, 40, "Q3769747", EntityType::kPer},
      {id, "Degli Scritt. del Trecento", 41, 67, "viaf34613848", EntityType::kWork}};
  if (testing::to_vector(c.annotations()) != want) return {false, "annotations differ"};
  export_corpus(c, tmp / "out");
  const bool docs_ok = read_file(tmp / "out" / kDocumentsFile) ==
                       read_file(testing::data_path("p2721_1.documents.csv"));
  const bool anns_ok = read_file(tmp / "out" / kAnnotationsFile) ==
                       read_file(testing::data_path("p2721_1.annotations.csv"));
  return {docs_ok && anns_ok, std::string("3 annotations; documents.csv ") +
                                  (docs_ok ? "byte-exact" : "differs") + ", annotations.csv " +
                                  (anns_ok ? "byte-exact" : "differs")};
}

// ------------------------------------------------------------------- A4

// Random corpora where every class has gold, plus the note fixture extended
// with a location so that no class is empty.
std::vector<Corpus> self_evaluation_corpora() {
  std::vector<Corpus> out;
  const Document note = testing::note_document();
  auto anns = testing::note_annotations();
  anns.push_back({note.doc_id, "toscana", 104, 111, "Q1273", EntityType::kLoc});
  out.push_back(Corpus::create({note}, anns));

  testing::Gen gen(4);
  while (out.size() < 200) {
    std::vector<Document> docs;
    std::vector<Annotation> gold;
    for (std::size_t d = gen.uniform(1, 4); d > 0; --d) {
      Document doc{"doc" + std::to_string(d), testing::random_text(gen, gen.uniform(20, 80))};
      for (auto& a : testing::annotations_for(
               doc, testing::random_disjoint_spans(gen, utf8::length(doc.text), 10))) {
        gold.push_back(std::move(a));
      }
      docs.push_back(std::move(doc));
    }
    std::array<bool, 3> seen{};
    for (const Annotation& a : gold) seen[static_cast<std::size_t>(a.type)] = true;
    if (seen != std::array<bool, 3>{true, true, true}) continue;
    out.push_back(Corpus::create(docs, gold));
  }
  return out;
}

Outcome self_evaluation() {
  const Metrics perfect{Ratio(1, 1), Ratio(1, 1), Ratio(1, 1)};
  std::size_t failures = 0;
  const auto corpora = self_evaluation_corpora();
  for (const Corpus& c : corpora) {
    std::vector<Prediction> preds;
    for (const Annotation& a : c.annotations()) preds.push_back(to_prediction(a));
    for (MatchMode mode : {MatchMode::kExact, MatchMode::kFuzzy}) {
      const EvaluationReport r = evaluate(c, preds, mode);
      bool ok = r.micro == perfect && r.macro == perfect;
      for (EntityType t : kEntityTypes) ok = ok && r.metrics(t) == perfect;
      if (!ok) ++failures;
    }
  }
  return {failures == 0, std::to_string(corpora.size()) + " corpora x 2 modes, " +
                             std::to_string(failures) + " not at 100.00"};
}

// ------------------------------------------------------------------- A5, A6

// At most 10 gold and 10 predicted spans per document.
testing::Instance bounded_instance(testing::Gen& gen) {
  testing::Instance inst = testing::random_instance(gen, 10);
  std::map<std::string, std::size_t> per_doc;
  std::erase_if(inst.preds, [&](const Prediction& p) { return ++per_doc[p.doc_id] > 10; });
  return inst;
}

Outcome mode_monotonicity() {
  testing::Gen gen(5);
  constexpr int kInstances = 2000;
  std::size_t violations = 0;
  for (int i = 0; i < kInstances; ++i) {
    const testing::Instance inst = bounded_instance(gen);
    const auto exact = make_report(MatchMode::kExact, match_exact(inst.gold, inst.preds));
    const auto fuzzy = make_report(MatchMode::kFuzzy, match_fuzzy(inst.gold, inst.preds));
    bool ok = fuzzy.micro.precision.value() >= exact.micro.precision.value() &&
              fuzzy.micro.recall.value() >= exact.micro.recall.value();
    for (EntityType t : kEntityTypes) {
      ok = ok && fuzzy.totals.counts(t).tp >= exact.totals.counts(t).tp &&
           fuzzy.metrics(t).precision.value() >= exact.metrics(t).precision.value() &&
           fuzzy.metrics(t).recall.value() >= exact.metrics(t).recall.value();
    }
    if (!ok) ++violations;
  }
  return {violations == 0,
          std::to_string(kInstances) + " instances, " + std::to_string(violations) + " violations"};
}

Outcome oracle_equivalence() {
  testing::Gen gen(6);
  constexpr int kInstances = 2000;
  std::size_t disagreements = 0;
  for (int i = 0; i < kInstances; ++i) {
    const testing::Instance inst = bounded_instance(gen);
    for (bool fuzzy : {false, true}) {
      const MatchResult got =
          match(inst.gold, inst.preds, fuzzy ? MatchMode::kFuzzy : MatchMode::kExact);
      const auto want = testing::oracle_match(inst.gold, inst.preds, fuzzy);
      bool same = got.pairs.size() == want.pairs.size();
      for (std::size_t k = 0; same && k < want.pairs.size(); ++k) {
        same = got.pairs[k].gold == want.pairs[k].first && got.pairs[k].pred == want.pairs[k].second;
      }
      for (std::size_t t = 0; t < 3; ++t) {
        same = same && got.per_class[t].tp == want.per_class[t].tp &&
               got.per_class[t].fp == want.per_class[t].fp &&
               got.per_class[t].fn == want.per_class[t].fn;
      }
      if (!same) ++disagreements;
    }
  }
  return {disagreements == 0, std::to_string(kInstances) + " instances x 2 modes, " +
                                  std::to_string(disagreements) + " disagreements"};
}

// ------------------------------------------------------------------- A7

std::string percents(const Metrics& m) {
  const auto fmt = [](const Ratio& r) {
    const auto h = r.percent_hundredths();
    return std::to_string(h / 100) + "." + (h % 100 < 10 ? "0" : "") + std::to_string(h % 100);
  };
  return fmt(m.precision) + "/" + fmt(m.recall) + "/" + fmt(m.f1);
}

Outcome tagged_round_trips() {
  testing::Gen gen(7);
  constexpr int kDocuments = 1000;
  std::size_t failures = 0;
  for (int i = 0; i < kDocuments; ++i) {
    const Document doc{"d", testing::random_text(gen, gen.uniform(1, 120))};
    const auto anns = testing::annotations_for(
        doc, testing::random_disjoint_spans(gen, utf8::length(doc.text), 10));
    const auto parsed =
        parse_inline_tagged(render_inline_tagged(doc, std::span<const Annotation>(anns)));
    bool ok = parsed.size() == anns.size();
    for (std::size_t k = 0; ok && k < anns.size(); ++k) {
      ok = canonicalize_type(parsed[k].type_label) == anns[k].type &&
           parsed[k].surface == anns[k].surface;
    }
    if (!ok) ++failures;
  }

  // Gold (0,5,PER) (10,15,LOC); predictions (0,5,PER) (10,14,LOC) (20,25,WORK).
  const Corpus gold = Corpus::create({{"d", "Gelli e Perticari a Firenze, poi"}},
                                     {{"d", "Gelli", 0, 5, "Q1", EntityType::kPer},
                                      {"d", "Firenze", 20, 27, "Q2", EntityType::kLoc}});
  const std::vector<Prediction> preds = {{"d", "Gelli", 0, 5, EntityType::kPer},
                                         {"d", "Firenz", 20, 26, EntityType::kLoc},
                                         {"d", ", poi", 27, 32, EntityType::kWork}};
  const std::string exact = percents(evaluate(gold, preds, MatchMode::kExact).micro);
  const std::string fuzzy = percents(evaluate(gold, preds, MatchMode::kFuzzy).micro);

  // Expected figures come from the brute-force matcher, not the scorer.
  const std::vector<Annotation> g = testing::to_vector(gold.annotations());
  const auto oracle_percents = [&](bool f) {
    const auto r = testing::oracle_match(g, preds, f);
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (const auto& k : r.per_class) tp += k.tp, fp += k.fp, fn += k.fn;
    const auto fmt = [](std::int64_t h) {
      return std::to_string(h / 100) + "." + (h % 100 < 10 ? "0" : "") + std::to_string(h % 100);
    };
    return fmt(testing::oracle_percent_hundredths(tp, tp + fp)) + "/" +
           fmt(testing::oracle_percent_hundredths(tp, tp + fn)) + "/" +
           fmt(testing::oracle_percent_hundredths(2 * tp, 2 * tp + fp + fn));
  };
  const bool scenario_ok = exact == "33.33/50.00/40.00" && fuzzy == "66.67/100.00/80.00" &&
                           exact == oracle_percents(false) && fuzzy == oracle_percents(true);
  return {failures == 0 && scenario_ok,
          std::to_string(kDocuments) + " documents, " + std::to_string(failures) +
              " round-trip failures; exact P/R/F1 " + exact + ", fuzzy " + fuzzy};
}

// ------------------------------------------------------------------- A8

std::string read_tree(const fs::path& dir) {
  return read_file(dir / kDocumentsFile) + read_file(dir / kAnnotationsFile);
}

Outcome pipeline_determinism() {
  testing::TempDir tmp;
  testing::Gen gen(8);
  std::vector<Document> docs;
  std::vector<Annotation> anns;
  for (std::size_t d = 0; d < 60; ++d) {
    Document doc{"https://digitalzibaldone.net/node/p" + std::to_string(2700 + d) + "_1",
                 testing::random_text(gen, gen.uniform(10, 80))};
    for (auto& a : testing::annotations_for(
             doc, testing::random_disjoint_spans(gen, utf8::length(doc.text), 5))) {
      anns.push_back(std::move(a));
    }
    docs.push_back(std::move(doc));
  }
  const fs::path corpus = tmp / "corpus";
  export_corpus(Corpus::create(docs, anns), corpus);

  std::vector<std::string> splits;
  for (const char* run : {"1", "2"}) {
    const fs::path train = tmp / (std::string("train") + run);
    const fs::path val = tmp / (std::string("val") + run);
    if (cli_run({"split", "--corpus", corpus.string(), "--train-out", train.string(), "--val-out",
                 val.string(), "--seed", "42"}) != cli::kExitOk) {
      return {false, "split failed"};
    }
    splits.push_back(read_tree(train) + "\x1f" + read_tree(val));
  }

  const fs::path gold = tmp / "gold";
  fs::create_directories(gold);
  fs::copy_file(testing::data_path("p2721_1.documents.csv"), gold / kDocumentsFile);
  fs::copy_file(testing::data_path("p2721_1.annotations.csv"), gold / kAnnotationsFile);
  const std::string pred = (tmp / "pred.csv").string();
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    std::string report;
    if (cli_run({"postprocess", "--corpus", gold.string(), "--answers",
                 testing::data_path("p2721_1.answers.jsonl").string(), "--out", pred}) !=
            cli::kExitOk ||
        cli_run({"evaluate", "--gold", gold.string(), "--pred", pred, "--format", "json"},
                &report) != cli::kExitOk) {
      return {false, "postprocess or evaluate failed"};
    }
    reports.push_back(report);
  }
  const bool split_ok = splits[0] == splits[1];
  const bool report_ok = reports[0] == reports[1] && !reports[0].empty();
  return {split_ok && report_ok,
          std::string("split --seed 42 ") + (split_ok ? "identical" : "differs") +
              "; evaluate JSON " + (report_ok ? "byte-identical" : "differs")};
}

}  // namespace
}  // namespace edner

int main(int argc, char** argv) {
  using namespace edner;
  const std::vector<Criterion> criteria = {
      {"A1", "class counts on the published dataset", 10, table3_counts},
      {"A2", "offset fidelity on the published dataset", 10, offsets_are_code_points},
      {"A3", "golden note fixture", 0, table2_golden},
      {"A4", "scorer self-evaluation", 0, self_evaluation},
      {"A5", "exact/fuzzy monotonicity", 30, mode_monotonicity},
      {"A6", "matching oracle equivalence", 60, oracle_equivalence},
      {"A7", "tagged-text round trip and worked scores", 0, tagged_round_trips},
      {"A8", "pipeline determinism", 0, pipeline_determinism},
  };

  CLI::App app("edner acceptance checks", "edner_acceptance");
  std::vector<std::string> selected;
  app.add_option("--criterion", selected, "Criterion id (A1..A8); all when omitted");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the time budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.2f s)", seconds);
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << o.detail
              << timing << "\n";
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
