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

#include "edner/edition.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <optional>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "edner/corpus_io.h"
#include "edner/error.h"
#include "edner/fetch.h"

namespace edner {
namespace {

struct Job {
  int page;
  int first_note;
  int last_note;
  bool required;  // explicit note: 404 is an error
};

struct FetchedNote {
  NoteId id;
  ParsedNote parsed;
};

std::vector<Job> expand(const std::vector<PageSpan>& spans, int max_notes) {
  std::vector<Job> jobs;
  for (const PageSpan& s : spans) {
    if (!s.last_page) {
      jobs.push_back({s.first.page, s.first.note, s.first.note, true});
      continue;
    }
    for (int page = s.first.page; page <= *s.last_page; ++page) {
      const int first = page == s.first.page ? s.first.note : 1;
      const int last = page == *s.last_page && s.last_note ? *s.last_note : max_notes;
      if (first <= last) jobs.push_back({page, first, last, false});
    }
  }
  return jobs;
}

// Numeric (page, note) for "p12_3"; nullopt for other names.
std::optional<NoteId> note_id_of(const std::string& stem) {
  try {
    const auto spans = parse_page_spec(stem);
    if (spans.size() == 1 && !spans[0].last_page) return spans[0].first;
  } catch (const PreconditionError&) {
  }
  return std::nullopt;
}

Corpus assemble(std::vector<FetchedNote> notes, std::vector<std::string>* warnings) {
  std::stable_sort(notes.begin(), notes.end(), [](const FetchedNote& a, const FetchedNote& b) {
    return std::tie(a.id.page, a.id.note) < std::tie(b.id.page, b.id.note);
  });
  std::vector<Document> docs;
  std::vector<Annotation> anns;
  std::unordered_set<std::string> seen;
  for (FetchedNote& n : notes) {
    if (warnings) {
      warnings->insert(warnings->end(), n.parsed.warnings.begin(), n.parsed.warnings.end());
    }
    if (!seen.insert(n.parsed.document.doc_id).second) {
      if (warnings) warnings->push_back(n.parsed.document.doc_id + ": listed twice, kept once");
      continue;
    }
    docs.push_back(std::move(n.parsed.document));
    std::move(n.parsed.annotations.begin(), n.parsed.annotations.end(), std::back_inserter(anns));
  }
  return Corpus::create(std::move(docs), std::move(anns), warnings);
}

}  // namespace

std::function<PageSource()> http_page_sources(const IngestConfig& config) {
  FetchOptions options;
  options.delay_ms = config.delay_ms;
  options.retries = config.retries;
  options.timeout_ms = config.timeout_ms;
  return [options] {
    auto fetcher = std::make_shared<Fetcher>(options);
    return PageSource([fetcher](const std::string& uri) { return fetcher->fetch_note(uri); });
  };
}

Corpus ingest_edition(const IngestConfig& config, const std::function<PageSource()>& make_source,
                      std::vector<std::string>* warnings) {
  const std::vector<PageSpan> spans = parse_page_spec(config.pages);
  if (!parse_http_uri(config.base_url + "p1_1")) {
    throw PreconditionError("base URL is not an absolute http(s) URI: '" + config.base_url + "'");
  }
  const std::vector<Job> jobs = expand(spans, config.max_notes_per_page);

  std::vector<std::vector<FetchedNote>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    PageSource source = make_source();
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      try {
        for (int note = job.first_note; note <= job.last_note; ++note) {
          const NoteId id{job.page, note};
          const std::string doc_id = config.base_url + id.str();
          std::string body;
          try {
            body = source(doc_id);
          } catch (const StatusError& e) {
            if (e.status() == 404 && !job.required) break;
            throw;
          }
          results[j].push_back({id, parse_note_html(body, doc_id, config.parser)});
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.parallelism)), jobs.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<FetchedNote> notes;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(notes));
  return assemble(std::move(notes), warnings);
}

Corpus ingest_html_dir(const std::filesystem::path& dir, const IngestConfig& config,
                       std::vector<std::string>* warnings) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".html") {
      files.push_back(entry.path());
    }
  }
  // Named notes first in (page, note) order, anything else by name after.
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    const auto ia = note_id_of(a.stem().string());
    const auto ib = note_id_of(b.stem().string());
    if (ia && ib) return std::tie(ia->page, ia->note) < std::tie(ib->page, ib->note);
    if (ia || ib) return ia.has_value();
    return a.filename() < b.filename();
  });

  std::vector<FetchedNote> notes;
  int ordinal = 0;
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    const std::string doc_id = config.base_url + stem;
    // Unnamed files sort after every real note id, keeping directory order.
    const NoteId id = note_id_of(stem).value_or(NoteId{1 << 30, ++ordinal});
    notes.push_back({id, parse_note_html(read_file(file), doc_id, config.parser)});
  }
  return assemble(std::move(notes), warnings);
}

}  // namespace edner
