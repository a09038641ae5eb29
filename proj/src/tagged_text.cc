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

#include "edner/tagged_text.h"

#include <algorithm>
#include <tuple>

#include "edner/error.h"
#include "edner/utf8.h"

namespace edner {
namespace {

struct TagToken {
  std::size_t begin;  // byte offset of '<'
  std::size_t end;    // one past '>'
  std::string_view label;
  bool closing;
};

bool label_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool label_char(char c) {
  return label_start(c) || (c >= '0' && c <= '9') || c == ' ';
}

std::vector<TagToken> scan_tags(std::string_view s) {
  std::vector<TagToken> tags;
  for (std::size_t pos = s.find('<'); pos != std::string_view::npos; pos = s.find('<', pos)) {
    const bool closing = pos + 1 < s.size() && s[pos + 1] == '/';
    const std::size_t name = pos + (closing ? 2 : 1);
    if (name >= s.size() || !label_start(s[name])) {
      ++pos;
      continue;
    }
    std::size_t i = name + 1;
    while (i < s.size() && label_char(s[i])) ++i;
    if (i < s.size() && s[i] == '>') {
      tags.push_back({pos, i + 1, s.substr(name, i - name), closing});
      pos = i + 1;
    } else {
      ++pos;
    }
  }
  return tags;
}

std::vector<TaggedEntity> parse_tagged(std::string_view answer, std::vector<std::string>* warnings) {
  const std::vector<TagToken> tags = scan_tags(answer);
  const auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  // Pair closers with the nearest open tag of the same label; whatever sits
  // above it on the stack was never closed.
  struct Pair {
    std::size_t open;
    std::size_t close;
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> stack;
  for (std::size_t t = 0; t < tags.size(); ++t) {
    if (!tags[t].closing) {
      stack.push_back(t);
      continue;
    }
    auto it = std::find_if(stack.rbegin(), stack.rend(),
                           [&](std::size_t o) { return tags[o].label == tags[t].label; });
    if (it == stack.rend()) {
      warn("stray closing tag </" + std::string(tags[t].label) + "> at byte " +
           std::to_string(tags[t].begin));
      continue;
    }
    const std::size_t depth = static_cast<std::size_t>(stack.rend() - it) - 1;
    for (std::size_t k = depth + 1; k < stack.size(); ++k) {
      warn("unclosed tag <" + std::string(tags[stack[k]].label) + "> at byte " +
           std::to_string(tags[stack[k]].begin));
    }
    pairs.push_back({stack[depth], t});
    stack.resize(depth);
  }
  for (std::size_t o : stack) {
    warn("unclosed tag <" + std::string(tags[o].label) + "> at byte " +
         std::to_string(tags[o].begin));
  }

  // Pairs are properly nested, so after sorting by opener the outermost ones
  // are those starting past the end of the last accepted outer pair.
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.open < b.open; });
  std::vector<TaggedEntity> out;
  std::size_t covered_until = 0;
  for (const Pair& p : pairs) {
    if (p.open < covered_until) continue;
    covered_until = p.close + 1;

    std::string surface;
    std::size_t pos = tags[p.open].end;
    for (std::size_t t = p.open + 1; t < p.close; ++t) {
      surface.append(answer.substr(pos, tags[t].begin - pos));
      pos = tags[t].end;
    }
    surface.append(answer.substr(pos, tags[p.close].begin - pos));
    if (surface.empty()) {
      warn("empty <" + std::string(tags[p.open].label) + "> element skipped");
      continue;
    }
    out.push_back({std::string(tags[p.open].label), std::move(surface), out.size()});
  }
  return out;
}

template <typename Span>
std::string render(const Document& doc, std::span<const Span> spans) {
  std::vector<const Span*> sorted;
  sorted.reserve(spans.size());
  for (const Span& s : spans) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const Span* a, const Span* b) {
    return std::tie(a->start_pos, a->end_pos) < std::tie(b->start_pos, b->end_pos);
  });

  const utf8::CodePointIndex index(doc.text);
  std::string out;
  out.reserve(doc.text.size() + spans.size() * 12);
  std::size_t cursor = 0;
  for (const Span* s : sorted) {
    if (s->start_pos >= s->end_pos || s->end_pos > index.size()) {
      throw PreconditionError("span [" + std::to_string(s->start_pos) + ", " +
                              std::to_string(s->end_pos) + ") is empty or out of range");
    }
    if (s->start_pos < cursor) {
      throw PreconditionError("overlapping spans at [" + std::to_string(s->start_pos) + ", " +
                              std::to_string(s->end_pos) + ")");
    }
    const std::string_view label = to_string(s->type);
    out.append(*index.slice(cursor, s->start_pos));
    out.append("<").append(label).append(">");
    out.append(*index.slice(s->start_pos, s->end_pos));
    out.append("</").append(label).append(">");
    cursor = s->end_pos;
  }
  out.append(*index.slice(cursor, index.size()));
  return out;
}

}  // namespace

std::vector<TaggedEntity> parse_inline_tagged(std::string_view answer,
                                              std::vector<std::string>* warnings) {
  return parse_tagged(answer, warnings);
}

std::vector<TaggedEntity> parse_entity_list(std::string_view answer,
                                            std::vector<std::string>* warnings) {
  // The list grammar is the inline grammar with separators as context.
  return parse_tagged(answer, warnings);
}

TypeFilterResult filter_known_types(std::span<const TaggedEntity> entities) {
  TypeFilterResult result;
  for (const TaggedEntity& e : entities) {
    if (const auto type = canonicalize_type(e.type_label)) {
      TaggedEntity kept = e;
      kept.type_label = std::string(to_string(*type));
      result.kept.push_back(std::move(kept));
    } else {
      result.dropped.push_back(e);
    }
  }
  return result;
}

AlignmentOutcome align_to_source(std::span<const TaggedEntity> entities, const Document& source) {
  AlignmentOutcome outcome;
  const std::string_view text = source.text;
  const utf8::CodePointIndex index(text);
  std::size_t cursor = 0;  // bytes
  for (const TaggedEntity& e : entities) {
    const auto type = canonicalize_type(e.type_label);
    if (!type) {
      outcome.dropped.push_back(e);
      continue;
    }
    if (e.surface.empty() || !utf8::is_valid(e.surface)) {
      outcome.unaligned.push_back(e);
      continue;
    }
    std::size_t at = text.find(e.surface, cursor);
    if (at == std::string_view::npos) at = text.find(e.surface);
    if (at == std::string_view::npos) {
      outcome.unaligned.push_back(e);
      continue;
    }
    const std::size_t end = at + e.surface.size();
    outcome.aligned.push_back({source.doc_id, e.surface, index.code_point_at(at),
                               index.code_point_at(end), *type});
    cursor = end;
  }
  return outcome;
}

std::string_view to_string(PromptMode mode) {
  return mode == PromptMode::kGenerative ? "generative" : "extractive";
}

std::optional<PromptMode> parse_prompt_mode(std::string_view text) {
  if (text == "generative") return PromptMode::kGenerative;
  if (text == "extractive") return PromptMode::kExtractive;
  return std::nullopt;
}

AlignmentOutcome postprocess_answer(std::string_view answer, PromptMode mode,
                                    const Document& source, std::vector<std::string>* warnings) {
  const std::vector<TaggedEntity> parsed = mode == PromptMode::kGenerative
                                               ? parse_inline_tagged(answer, warnings)
                                               : parse_entity_list(answer, warnings);
  TypeFilterResult filtered = filter_known_types(parsed);
  AlignmentOutcome outcome = align_to_source(filtered.kept, source);
  outcome.dropped.insert(outcome.dropped.begin(), filtered.dropped.begin(), filtered.dropped.end());
  std::sort(outcome.dropped.begin(), outcome.dropped.end(),
            [](const TaggedEntity& a, const TaggedEntity& b) { return a.rank < b.rank; });
  return outcome;
}

std::string render_inline_tagged(const Document& doc, std::span<const Annotation> spans) {
  return render(doc, spans);
}

std::string render_inline_tagged(const Document& doc, std::span<const Prediction> spans) {
  return render(doc, spans);
}

}  // namespace edner
