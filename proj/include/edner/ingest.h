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

// Turning one digital-edition note page into a Document plus standoff
// annotations, and the configuration that drives it.

#ifndef EDNER_INGEST_H_
#define EDNER_INGEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edner/annotation.h"

namespace edner {

// Classifies an anchor element. Rules are tried in order; the first match
// decides the type.
struct LinkRule {
  enum class Field {
    kClass,  // `pattern` is one class token of the anchor, compared exactly
    kHref,   // `pattern` is an ECMAScript regex searched in the href
  };
  Field field = Field::kClass;
  std::string pattern;
  EntityType type = EntityType::kPer;
};

// Locates the note body inside the page. Selectors are tried in order; the
// first one matching any element wins. With no match the whole <body> (or
// the whole document) is used.
struct ContentSelector {
  enum class Kind { kClass, kId, kTag };
  Kind kind = Kind::kClass;
  std::string value;
};

struct NoteParserConfig {
  std::vector<ContentSelector> content;
  std::vector<LinkRule> rules;

  // Selectors and class rules used when no config file overrides them.
  static NoteParserConfig defaults();
};

struct ParsedNote {
  Document document;
  std::vector<Annotation> annotations;  // document order
  std::vector<std::string> warnings;
};

// "https://www.wikidata.org/wiki/Q518160" -> "Q518160",
// "https://viaf.org/viaf/34613848/" -> "viaf34613848"; nullopt otherwise.
std::optional<std::string> identifier_from_uri(std::string_view uri);

// Extracts the note text and its classified links.
//
// Whitespace policy: every run of HTML whitespace (space, tab, CR, LF, FF),
// and every block-level element boundary or <br>, becomes at most one space;
// the text is trimmed at both ends. Script, style, noscript and template
// contents are dropped. Annotation spans exclude whitespace at the edges of
// the anchor text.
//
// Anchors that match no rule and do not point to an authority file are
// ordinary hyperlinks and are ignored silently. Anchors that point to an
// authority file but match no rule, or match a rule but carry no
// recognizable identifier, are skipped with a warning.
ParsedNote parse_note_html(std::string_view html, std::string_view doc_id,
                           const NoteParserConfig& config);

// Everything the `ingest` pipeline needs. Loaded from JSON:
//
//   {
//     "base_url": "https://digitalzibaldone.net/node/",
//     "pages": "p2700_1..p3000",
//     "delay_ms": 1000, "retries": 3, "timeout_ms": 30000,
//     "parallelism": 1, "max_notes_per_page": 30,
//     "content": [{"class": "field--name-body"}, {"tag": "article"}],
//     "rules": [{"class": "person", "type": "PER"},
//               {"href": "viaf\\.org", "type": "WORK"}]
//   }
//
// Every key is optional.
struct IngestConfig {
  std::string base_url = "https://digitalzibaldone.net/node/";
  std::string pages;
  int delay_ms = 1000;
  int retries = 3;
  int timeout_ms = 30000;
  int parallelism = 1;
  int max_notes_per_page = 30;
  NoteParserConfig parser = NoteParserConfig::defaults();

  static IngestConfig from_json_text(std::string_view json);
  static IngestConfig load(const std::filesystem::path& path);

  // Applies EDNER_BASE_URL, EDNER_DELAY_MS, EDNER_RETRIES, EDNER_TIMEOUT_MS
  // and EDNER_PARALLELISM when set.
  void apply_environment();
};

// A note identifier on the edition, `p<page>_<note>`.
struct NoteId {
  int page = 0;
  int note = 0;

  std::string str() const;
  bool operator==(const NoteId&) const = default;
};

// One entry of a --pages list: either a single note, or an inclusive
// range of pages whose notes are discovered by probing note numbers.
struct PageSpan {
  NoteId first;
  // Page range end; nullopt for a single explicit note.
  std::optional<int> last_page;
  // Last note on the last page, when the range end names one.
  std::optional<int> last_note;
};

// Parses "p2721_1,p2722_1,p2700_1..p3000,p10..p12_2". Each range start may
// omit the note (defaults to 1). Throws PreconditionError on any malformed
// id before any network activity happens.
std::vector<PageSpan> parse_page_spec(std::string_view spec);

}  // namespace edner

#endif  // EDNER_INGEST_H_
