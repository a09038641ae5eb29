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

// A small lenient HTML tree builder. It understands enough of the HTML
// syntax to recover text and hyperlinks from edition pages: tags and
// attributes, void and raw-text elements, comments, doctypes and character
// references. It does not implement the full HTML5 insertion-mode machine;
// mis-nested end tags are resolved by popping to the nearest open element of
// the same name and unmatched end tags are dropped.

#ifndef EDNER_HTML_H_
#define EDNER_HTML_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace edner::html {

struct Node {
  enum class Kind { kElement, kText };

  Kind kind = Kind::kElement;
  std::string tag;  // lower-case; empty for text and for the root
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded, for kText
  std::vector<std::unique_ptr<Node>> children;

  std::optional<std::string_view> attribute(std::string_view name) const;
  bool has_class(std::string_view cls) const;
};

// Throws ParseError on invalid UTF-8 or markup truncated at end of input.
std::unique_ptr<Node> parse(std::string_view html);

// Replaces character references (&amp; &#233; &#xE9; &egrave; ...) in text.
// Unknown named references are kept verbatim.
std::string decode_entities(std::string_view text);

bool is_block_element(std::string_view tag);

// Pre-order search.
const Node* find_first(const Node& root,
                       const std::function<bool(const Node&)>& pred);

}  // namespace edner::html

#endif  // EDNER_HTML_H_
