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

// Building a corpus from a whole edition: page-list expansion, fetching and
// parsing every note.

#ifndef EDNER_EDITION_H_
#define EDNER_EDITION_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "edner/annotation.h"
#include "edner/ingest.h"

namespace edner {

// Returns the page body for a URI, or throws StatusError/FetchError.
using PageSource = std::function<std::string(const std::string& uri)>;

// Makes one source per worker from the network settings of `config`.
std::function<PageSource()> http_page_sources(const IngestConfig& config);

// Fetches and parses every note named by config.pages. Explicit notes must
// exist; inside a page range, note numbers are probed from the first note
// upward until the server answers 404 (or max_notes_per_page is reached).
// Pages are distributed over config.parallelism workers; the resulting
// corpus is in (page, note) order regardless of scheduling.
Corpus ingest_edition(const IngestConfig& config, const std::function<PageSource()>& make_source,
                      std::vector<std::string>* warnings = nullptr);

// Offline variant: every `<note id>.html` in `dir` becomes one document with
// doc_id = config.base_url + note id, in (page, note) order.
Corpus ingest_html_dir(const std::filesystem::path& dir, const IngestConfig& config,
                       std::vector<std::string>* warnings = nullptr);

}  // namespace edner

#endif  // EDNER_EDITION_H_
