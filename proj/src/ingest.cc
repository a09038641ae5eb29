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

#include "edner/ingest.h"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "edner/error.h"
#include "edner/html.h"
#include "edner/utf8.h"
#include "json.hpp"

namespace edner {
namespace {

using html::Node;

bool is_skipped_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template" ||
         tag == "head";
}

struct OpenAnchor {
  const Node* node = nullptr;
  std::string href;
  std::size_t first = 0;  // code point offsets; first == last means empty
  std::size_t last = 0;
  bool seen_text = false;
};

struct AnchorSpan {
  const Node* node;
  std::string href;
  std::size_t start;
  std::size_t end;
};

// Serializes a content subtree to cleaned text while recording anchor spans.
class TextCollector {
 public:
  void walk(const Node& node) {
    if (node.kind == Node::Kind::kText) {
      add_text(node.text);
      return;
    }
    if (is_skipped_element(node.tag)) return;
    const bool block = html::is_block_element(node.tag);
    if (block) soft_break();

    const bool anchor = node.tag == "a" && node.attribute("href").has_value();
    if (anchor) open_.push_back({&node, std::string(*node.attribute("href"))});
    for (const auto& child : node.children) walk(*child);
    if (anchor) {
      OpenAnchor a = std::move(open_.back());
      open_.pop_back();
      if (a.seen_text) {
        spans_.push_back({a.node, std::move(a.href), a.first, a.last});
      } else {
        empty_.push_back(std::move(a.href));
      }
    }

    if (block) soft_break();
  }

  std::string& text() { return out_; }
  std::vector<AnchorSpan>& spans() { return spans_; }
  const std::vector<std::string>& empty_anchors() const { return empty_; }

 private:
  static bool is_html_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f';
  }

  void soft_break() {
    if (length_ > 0) pending_space_ = true;
  }

  void add_text(std::string_view text) {
    for (std::size_t pos = 0; pos < text.size();) {
      const char32_t cp = utf8::decode(text, pos);
      if (is_html_space(cp)) {
        soft_break();
        continue;
      }
      if (pending_space_) {
        out_.push_back(' ');
        ++length_;
        pending_space_ = false;
      }
      for (OpenAnchor& a : open_) {
        if (!a.seen_text) {
          a.first = length_;
          a.seen_text = true;
        }
        a.last = length_ + 1;
      }
      utf8::append(out_, cp);
      ++length_;
    }
  }

  std::string out_;
  std::size_t length_ = 0;
  bool pending_space_ = false;
  std::vector<OpenAnchor> open_;
  std::vector<AnchorSpan> spans_;
  std::vector<std::string> empty_;
};

const Node* locate_content(const Node& root, const std::vector<ContentSelector>& selectors) {
  for (const ContentSelector& sel : selectors) {
    const Node* hit = html::find_first(root, [&](const Node& n) {
      switch (sel.kind) {
        case ContentSelector::Kind::kClass: return n.has_class(sel.value);
        case ContentSelector::Kind::kId: return n.attribute("id") == sel.value;
        case ContentSelector::Kind::kTag: return n.tag == sel.value;
      }
      return false;
    });
    if (hit) return hit;
  }
  if (const Node* body = html::find_first(root, [](const Node& n) { return n.tag == "body"; })) {
    return body;
  }
  return &root;
}

EntityType parse_type_field(const nlohmann::json& rule) {
  if (!rule.contains("type") || !rule["type"].is_string()) {
    throw ParseError("config: rule without a string \"type\"");
  }
  const std::string label = rule["type"].get<std::string>();
  const auto type = canonicalize_type(label);
  if (!type) throw ParseError("config: unknown entity type '" + label + "'");
  return *type;
}

template <typename T>
void read_int(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number_integer()) {
    throw ParseError(std::string("config: \"") + key + "\" must be an integer");
  }
  out = j[key].get<T>();
}

int parse_positive(std::string_view digits, std::string_view item) {
  if (digits.empty() || digits.size() > 7) {
    throw PreconditionError("invalid note id '" + std::string(item) + "'");
  }
  int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw PreconditionError("invalid note id '" + std::string(item) + "'");
    value = value * 10 + (c - '0');
  }
  if (value < 1) throw PreconditionError("invalid note id '" + std::string(item) + "'");
  return value;
}

// "p2721_1" -> {2721, 1}; "p2721" -> {2721, nullopt}.
std::pair<int, std::optional<int>> parse_note_token(std::string_view token) {
  if (token.size() < 2 || token[0] != 'p') {
    throw PreconditionError("invalid note id '" + std::string(token) + "'");
  }
  const std::string_view body = token.substr(1);
  const std::size_t underscore = body.find('_');
  if (underscore == std::string_view::npos) return {parse_positive(body, token), std::nullopt};
  return {parse_positive(body.substr(0, underscore), token),
          parse_positive(body.substr(underscore + 1), token)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

NoteParserConfig NoteParserConfig::defaults() {
  using K = ContentSelector::Kind;
  using F = LinkRule::Field;
  NoteParserConfig config;
  config.content = {{K::kClass, "field--name-body"},
                    {K::kClass, "note-text"},
                    {K::kTag, "article"},
                    {K::kTag, "main"}};
  config.rules = {
      {F::kClass, "person", EntityType::kPer},  {F::kClass, "persName", EntityType::kPer},
      {F::kClass, "per", EntityType::kPer},     {F::kClass, "place", EntityType::kLoc},
      {F::kClass, "placeName", EntityType::kLoc}, {F::kClass, "location", EntityType::kLoc},
      {F::kClass, "loc", EntityType::kLoc},     {F::kClass, "work", EntityType::kWork},
      {F::kClass, "bibl", EntityType::kWork},   {F::kClass, "title", EntityType::kWork},
  };
  return config;
}

std::optional<std::string> identifier_from_uri(std::string_view uri) {
  static const std::regex kWikidata(
      R"(^https?://(?:www\.|m\.)?wikidata\.org/(?:wiki|entity)/(Q[0-9]+)(?:[/?#].*)?$)",
      std::regex::icase);
  static const std::regex kViaf(R"(^https?://(?:www\.)?viaf\.org/viaf/([0-9]+)(?:[/?#].*)?$)",
                                std::regex::icase);
  const std::string s(trim(uri));
  std::smatch m;
  if (std::regex_match(s, m, kWikidata)) {
    std::string id = m[1].str();
    id[0] = 'Q';
    return id;
  }
  if (std::regex_match(s, m, kViaf)) return "viaf" + m[1].str();
  return std::nullopt;
}

ParsedNote parse_note_html(std::string_view html_text, std::string_view doc_id,
                           const NoteParserConfig& config) {
  const auto root = html::parse(html_text);
  const Node* content = locate_content(*root, config.content);

  TextCollector collector;
  collector.walk(*content);

  ParsedNote note;
  note.document.doc_id = std::string(doc_id);
  note.document.text = std::move(collector.text());
  if (note.document.text.empty()) {
    note.document.placeholder = true;
    note.warnings.push_back(std::string(doc_id) + ": empty note body, kept as placeholder");
  }

  std::vector<std::regex> href_patterns;
  href_patterns.reserve(config.rules.size());
  for (const LinkRule& rule : config.rules) {
    href_patterns.emplace_back(rule.field == LinkRule::Field::kHref ? rule.pattern : "");
  }

  for (const std::string& href : collector.empty_anchors()) {
    if (identifier_from_uri(href)) {
      note.warnings.push_back(std::string(doc_id) + ": link to " + href +
                              " has no text, skipped");
    }
  }

  const utf8::CodePointIndex index(note.document.text);
  for (const AnchorSpan& span : collector.spans()) {
    std::optional<EntityType> type;
    for (std::size_t i = 0; i < config.rules.size() && !type; ++i) {
      const LinkRule& rule = config.rules[i];
      const bool hit = rule.field == LinkRule::Field::kClass
                           ? span.node->has_class(rule.pattern)
                           : std::regex_search(span.href, href_patterns[i]);
      if (hit) type = rule.type;
    }
    const auto identifier = identifier_from_uri(span.href);
    const std::string surface(*index.slice(span.start, span.end));
    if (!type) {
      if (identifier) {
        note.warnings.push_back(std::string(doc_id) + ": unclassifiable link '" + surface +
                                "' -> " + span.href + ", skipped");
      }
      continue;
    }
    if (!identifier) {
      note.warnings.push_back(std::string(doc_id) + ": link '" + surface + "' -> " + span.href +
                              " has no Wikidata/VIAF identifier, skipped");
      continue;
    }
    note.annotations.push_back(
        {std::string(doc_id), surface, span.start, span.end, *identifier, *type});
  }
  return note;
}

namespace {

IngestConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  IngestConfig config;
  if (j.contains("base_url")) config.base_url = j["base_url"].get<std::string>();
  if (j.contains("pages")) config.pages = j["pages"].get<std::string>();
  read_int(j, "delay_ms", config.delay_ms);
  read_int(j, "retries", config.retries);
  read_int(j, "timeout_ms", config.timeout_ms);
  read_int(j, "parallelism", config.parallelism);
  read_int(j, "max_notes_per_page", config.max_notes_per_page);

  if (j.contains("content")) {
    config.parser.content.clear();
    for (const auto& sel : j["content"]) {
      using K = ContentSelector::Kind;
      if (sel.contains("class")) {
        config.parser.content.push_back({K::kClass, sel["class"].get<std::string>()});
      } else if (sel.contains("id")) {
        config.parser.content.push_back({K::kId, sel["id"].get<std::string>()});
      } else if (sel.contains("tag")) {
        config.parser.content.push_back({K::kTag, sel["tag"].get<std::string>()});
      } else {
        throw ParseError("config: content selector needs \"class\", \"id\" or \"tag\"");
      }
    }
  }
  if (j.contains("rules")) {
    config.parser.rules.clear();
    for (const auto& rule : j["rules"]) {
      LinkRule r;
      r.type = parse_type_field(rule);
      if (rule.contains("class")) {
        r.field = LinkRule::Field::kClass;
        r.pattern = rule["class"].get<std::string>();
      } else if (rule.contains("href")) {
        r.field = LinkRule::Field::kHref;
        r.pattern = rule["href"].get<std::string>();
        try {
          std::regex probe(r.pattern);
        } catch (const std::regex_error&) {
          throw ParseError("config: invalid href pattern '" + r.pattern + "'");
        }
      } else {
        throw ParseError("config: rule needs \"class\" or \"href\"");
      }
      config.parser.rules.push_back(std::move(r));
    }
  }
  if (config.retries < 0 || config.delay_ms < 0 || config.parallelism < 1 ||
      config.max_notes_per_page < 1 || config.timeout_ms < 1) {
    throw ParseError("config: numeric setting out of range");
  }
  return config;
}

}  // namespace

IngestConfig IngestConfig::from_json_text(std::string_view json_text) {
  try {
    return config_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

IngestConfig IngestConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

void IngestConfig::apply_environment() {
  const auto env_int = [](const char* name, int& out) {
    if (const char* v = std::getenv(name); v && *v) {
      char* end = nullptr;
      const long value = std::strtol(v, &end, 10);
      if (*end != '\0' || value < 0) {
        throw PreconditionError(std::string(name) + " must be a non-negative integer");
      }
      out = static_cast<int>(value);
    }
  };
  if (const char* v = std::getenv("EDNER_BASE_URL"); v && *v) base_url = v;
  env_int("EDNER_DELAY_MS", delay_ms);
  env_int("EDNER_RETRIES", retries);
  env_int("EDNER_TIMEOUT_MS", timeout_ms);
  env_int("EDNER_PARALLELISM", parallelism);
}

std::string NoteId::str() const {
  return "p" + std::to_string(page) + "_" + std::to_string(note);
}

std::vector<PageSpan> parse_page_spec(std::string_view spec) {
  std::vector<PageSpan> spans;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string_view item = trim(spec.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) {
      if (comma == spec.size() && spans.size() > 0) break;
      throw PreconditionError("empty entry in page list '" + std::string(spec) + "'");
    }
    const std::size_t dots = item.find("..");
    PageSpan span;
    if (dots == std::string_view::npos) {
      const auto [page, note] = parse_note_token(item);
      span.first = {page, note.value_or(1)};
      if (!note) span.last_page = page;
    } else {
      const auto [p0, n0] = parse_note_token(trim(item.substr(0, dots)));
      const auto [p1, n1] = parse_note_token(trim(item.substr(dots + 2)));
      if (p1 < p0 || (p1 == p0 && n0 && n1 && *n1 < *n0)) {
        throw PreconditionError("descending range '" + std::string(item) + "'");
      }
      span.first = {p0, n0.value_or(1)};
      span.last_page = p1;
      span.last_note = n1;
    }
    spans.push_back(span);
  }
  return spans;
}

}  // namespace edner
