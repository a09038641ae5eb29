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

// The two-CSV corpus format and the predictions CSV.
//
//   documents.csv    doc_id,text
//   annotations.csv  doc_id,surface,start_pos,end_pos,identifier,type
//   predictions      doc_id,surface,start_pos,end_pos,type
//
// UTF-8, RFC 4180 quoting, "\n" line endings. Export is canonical (document
// order, then offset order), so import followed by export reproduces the
// files byte for byte.

#ifndef EDNER_CORPUS_IO_H_
#define EDNER_CORPUS_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner {

inline constexpr std::string_view kDocumentsFile = "documents.csv";
inline constexpr std::string_view kAnnotationsFile = "annotations.csv";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string render_documents_csv(const Corpus& corpus);
std::string render_annotations_csv(const Corpus& corpus);

// Writes documents.csv and annotations.csv, creating out_dir if needed.
void export_corpus(const Corpus& corpus, const std::filesystem::path& out_dir);

// Parses and validates both files. Errors name the file and line.
Corpus parse_corpus_csv(std::string_view documents_csv, std::string_view annotations_csv,
                        std::vector<std::string>* warnings = nullptr,
                        std::string_view documents_name = kDocumentsFile,
                        std::string_view annotations_name = kAnnotationsFile);

Corpus import_corpus(const std::filesystem::path& dir,
                     std::vector<std::string>* warnings = nullptr);

std::string render_predictions_csv(std::span<const Prediction> preds);

// Type labels go through canonicalize_type, so "persona" is accepted.
std::vector<Prediction> parse_predictions_csv(std::string_view content,
                                              std::string_view name = "predictions");

std::vector<Prediction> read_predictions(const std::filesystem::path& path);

}  // namespace edner

#endif  // EDNER_CORPUS_IO_H_
