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

#include "edner/corpus_io.h"

#include <fstream>
#include <sstream>

#include "edner/csv.h"
#include "edner/error.h"
#include "edner/utf8.h"

namespace edner {
namespace {

const std::vector<std::string> kDocumentsHeader = {"doc_id", "text"};
const std::vector<std::string> kAnnotationsHeader = {"doc_id",  "surface",    "start_pos",
                                                     "end_pos", "identifier", "type"};
const std::vector<std::string> kPredictionsHeader = {"doc_id", "surface", "start_pos", "end_pos",
                                                     "type"};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Parses `content`, checks the header and field counts, drops the header.
std::vector<csv::Record> parse_table(std::string_view content, std::string_view name,
                                     const std::vector<std::string>& header) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  if (!utf8::is_valid(content)) {
    throw ParseError(std::string(name) + ": not valid UTF-8");
  }
  std::vector<csv::Record> records;
  try {
    records = csv::parse(content);
  } catch (const ParseError& e) {
    throw ParseError(std::string(name) + ": " + e.what());
  }
  if (records.empty() || records.front().fields != header) {
    throw ParseError(std::string(name) + ": schema mismatch, expected header '" + join(header) +
                     "'");
  }
  records.erase(records.begin());
  for (const csv::Record& r : records) {
    if (r.fields.size() != header.size()) {
      throw ParseError(std::string(name) + ":" + std::to_string(r.line) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(r.fields.size()));
    }
  }
  return records;
}

std::size_t parse_offset(const std::string& field, std::string_view name, std::size_t line,
                         std::string_view column) {
  const auto fail = [&] {
    throw ParseError(std::string(name) + ":" + std::to_string(line) + ": " +
                     std::string(column) + " '" + field + "' is not a non-negative integer");
  };
  if (field.empty() || field.size() > 12) fail();
  std::size_t value = 0;
  for (char c : field) {
    if (c < '0' || c > '9') fail();
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

EntityType parse_type(const std::string& field, std::string_view name, std::size_t line,
                      bool strict) {
  if (strict) {
    for (EntityType t : kEntityTypes) {
      if (to_string(t) == field) return t;
    }
  } else if (const auto t = canonicalize_type(field)) {
    return *t;
  }
  throw ParseError(std::string(name) + ":" + std::to_string(line) + ": unknown type '" + field +
                   "'");
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::string render_documents_csv(const Corpus& corpus) {
  std::string out = csv::format_record(kDocumentsHeader);
  for (const Document& doc : corpus.documents()) {
    out += csv::format_record({doc.doc_id, doc.text});
  }
  return out;
}

std::string render_annotations_csv(const Corpus& corpus) {
  std::string out = csv::format_record(kAnnotationsHeader);
  for (const Annotation& a : corpus.annotations()) {
    out += csv::format_record({a.doc_id, a.surface, std::to_string(a.start_pos),
                               std::to_string(a.end_pos), a.identifier, to_string(a.type)});
  }
  return out;
}

void export_corpus(const Corpus& corpus, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / kDocumentsFile, render_documents_csv(corpus));
  write_file(out_dir / kAnnotationsFile, render_annotations_csv(corpus));
}

Corpus parse_corpus_csv(std::string_view documents_csv, std::string_view annotations_csv,
                        std::vector<std::string>* warnings, std::string_view documents_name,
                        std::string_view annotations_name) {
  std::vector<Document> documents;
  for (csv::Record& r : parse_table(documents_csv, documents_name, kDocumentsHeader)) {
    Document doc{std::move(r.fields[0]), std::move(r.fields[1])};
    doc.placeholder = doc.text.empty();
    documents.push_back(std::move(doc));
  }

  std::vector<Annotation> annotations;
  std::vector<std::size_t> lines;
  for (csv::Record& r : parse_table(annotations_csv, annotations_name, kAnnotationsHeader)) {
    Annotation a;
    a.start_pos = parse_offset(r.fields[2], annotations_name, r.line, "start_pos");
    a.end_pos = parse_offset(r.fields[3], annotations_name, r.line, "end_pos");
    a.type = parse_type(r.fields[5], annotations_name, r.line, /*strict=*/true);
    a.doc_id = std::move(r.fields[0]);
    a.surface = std::move(r.fields[1]);
    a.identifier = std::move(r.fields[4]);
    annotations.push_back(std::move(a));
    lines.push_back(r.line);
  }

  const std::string name(annotations_name);
  return Corpus::create(std::move(documents), std::move(annotations), warnings,
                        [&](std::size_t i) { return name + ":" + std::to_string(lines[i]); });
}

Corpus import_corpus(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  const auto docs = dir / kDocumentsFile;
  const auto anns = dir / kAnnotationsFile;
  return parse_corpus_csv(read_file(docs), read_file(anns), warnings, docs.string(),
                          anns.string());
}

std::string render_predictions_csv(std::span<const Prediction> preds) {
  std::string out = csv::format_record(kPredictionsHeader);
  for (const Prediction& p : preds) {
    out += csv::format_record({p.doc_id, p.surface, std::to_string(p.start_pos),
                               std::to_string(p.end_pos), to_string(p.type)});
  }
  return out;
}

std::vector<Prediction> parse_predictions_csv(std::string_view content, std::string_view name) {
  std::vector<Prediction> preds;
  for (csv::Record& r : parse_table(content, name, kPredictionsHeader)) {
    Prediction p;
    p.start_pos = parse_offset(r.fields[2], name, r.line, "start_pos");
    p.end_pos = parse_offset(r.fields[3], name, r.line, "end_pos");
    p.type = parse_type(r.fields[4], name, r.line, /*strict=*/false);
    p.doc_id = std::move(r.fields[0]);
    p.surface = std::move(r.fields[1]);
    preds.push_back(std::move(p));
  }
  return preds;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  return parse_predictions_csv(read_file(path), path.string());
}

}  // namespace edner
