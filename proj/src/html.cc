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

#include "edner/html.h"

#include <algorithm>
#include <array>
#include <cstdint>

#include "edner/error.h"
#include "edner/utf8.h"

namespace edner::html {
namespace {

struct NamedReference {
  std::string_view name;
  char32_t code_point;
};

// HTML 4 named character references plus &apos;, sorted by name.
constexpr NamedReference kNamedReferences[] = {
    {"AElig", 0x00C6}, {"Aacute", 0x00C1}, {"Acirc", 0x00C2},
    {"Agrave", 0x00C0}, {"Alpha", 0x0391}, {"Aring", 0x00C5},
    {"Atilde", 0x00C3}, {"Auml", 0x00C4}, {"Beta", 0x0392}, {"Ccedil", 0x00C7},
    {"Chi", 0x03A7}, {"Dagger", 0x2021}, {"Delta", 0x0394}, {"ETH", 0x00D0},
    {"Eacute", 0x00C9}, {"Ecirc", 0x00CA}, {"Egrave", 0x00C8},
    {"Epsilon", 0x0395}, {"Eta", 0x0397}, {"Euml", 0x00CB}, {"Gamma", 0x0393},
    {"Iacute", 0x00CD}, {"Icirc", 0x00CE}, {"Igrave", 0x00CC},
    {"Iota", 0x0399}, {"Iuml", 0x00CF}, {"Kappa", 0x039A}, {"Lambda", 0x039B},
    {"Mu", 0x039C}, {"Ntilde", 0x00D1}, {"Nu", 0x039D}, {"OElig", 0x0152},
    {"Oacute", 0x00D3}, {"Ocirc", 0x00D4}, {"Ograve", 0x00D2},
    {"Omega", 0x03A9}, {"Omicron", 0x039F}, {"Oslash", 0x00D8},
    {"Otilde", 0x00D5}, {"Ouml", 0x00D6}, {"Phi", 0x03A6}, {"Pi", 0x03A0},
    {"Prime", 0x2033}, {"Psi", 0x03A8}, {"Rho", 0x03A1}, {"Scaron", 0x0160},
    {"Sigma", 0x03A3}, {"THORN", 0x00DE}, {"Tau", 0x03A4}, {"Theta", 0x0398},
    {"Uacute", 0x00DA}, {"Ucirc", 0x00DB}, {"Ugrave", 0x00D9},
    {"Upsilon", 0x03A5}, {"Uuml", 0x00DC}, {"Xi", 0x039E}, {"Yacute", 0x00DD},
    {"Yuml", 0x0178}, {"Zeta", 0x0396}, {"aacute", 0x00E1}, {"acirc", 0x00E2},
    {"acute", 0x00B4}, {"aelig", 0x00E6}, {"agrave", 0x00E0},
    {"alefsym", 0x2135}, {"alpha", 0x03B1}, {"amp", 0x0026}, {"and", 0x2227},
    {"ang", 0x2220}, {"apos", 0x0027}, {"aring", 0x00E5}, {"asymp", 0x2248},
    {"atilde", 0x00E3}, {"auml", 0x00E4}, {"bdquo", 0x201E}, {"beta", 0x03B2},
    {"brvbar", 0x00A6}, {"bull", 0x2022}, {"cap", 0x2229}, {"ccedil", 0x00E7},
    {"cedil", 0x00B8}, {"cent", 0x00A2}, {"chi", 0x03C7}, {"circ", 0x02C6},
    {"clubs", 0x2663}, {"cong", 0x2245}, {"copy", 0x00A9}, {"crarr", 0x21B5},
    {"cup", 0x222A}, {"curren", 0x00A4}, {"dArr", 0x21D3}, {"dagger", 0x2020},
    {"darr", 0x2193}, {"deg", 0x00B0}, {"delta", 0x03B4}, {"diams", 0x2666},
    {"divide", 0x00F7}, {"eacute", 0x00E9}, {"ecirc", 0x00EA},
    {"egrave", 0x00E8}, {"empty", 0x2205}, {"emsp", 0x2003}, {"ensp", 0x2002},
    {"epsilon", 0x03B5}, {"equiv", 0x2261}, {"eta", 0x03B7}, {"eth", 0x00F0},
    {"euml", 0x00EB}, {"euro", 0x20AC}, {"exist", 0x2203}, {"fnof", 0x0192},
    {"forall", 0x2200}, {"frac12", 0x00BD}, {"frac14", 0x00BC},
    {"frac34", 0x00BE}, {"frasl", 0x2044}, {"gamma", 0x03B3}, {"ge", 0x2265},
    {"gt", 0x003E}, {"hArr", 0x21D4}, {"harr", 0x2194}, {"hearts", 0x2665},
    {"hellip", 0x2026}, {"iacute", 0x00ED}, {"icirc", 0x00EE},
    {"iexcl", 0x00A1}, {"igrave", 0x00EC}, {"image", 0x2111},
    {"infin", 0x221E}, {"int", 0x222B}, {"iota", 0x03B9}, {"iquest", 0x00BF},
    {"isin", 0x2208}, {"iuml", 0x00EF}, {"kappa", 0x03BA}, {"lArr", 0x21D0},
    {"lambda", 0x03BB}, {"lang", 0x2329}, {"laquo", 0x00AB}, {"larr", 0x2190},
    {"lceil", 0x2308}, {"ldquo", 0x201C}, {"le", 0x2264}, {"lfloor", 0x230A},
    {"lowast", 0x2217}, {"loz", 0x25CA}, {"lrm", 0x200E}, {"lsaquo", 0x2039},
    {"lsquo", 0x2018}, {"lt", 0x003C}, {"macr", 0x00AF}, {"mdash", 0x2014},
    {"micro", 0x00B5}, {"middot", 0x00B7}, {"minus", 0x2212}, {"mu", 0x03BC},
    {"nabla", 0x2207}, {"nbsp", 0x00A0}, {"ndash", 0x2013}, {"ne", 0x2260},
    {"ni", 0x220B}, {"not", 0x00AC}, {"notin", 0x2209}, {"nsub", 0x2284},
    {"ntilde", 0x00F1}, {"nu", 0x03BD}, {"oacute", 0x00F3}, {"ocirc", 0x00F4},
    {"oelig", 0x0153}, {"ograve", 0x00F2}, {"oline", 0x203E},
    {"omega", 0x03C9}, {"omicron", 0x03BF}, {"oplus", 0x2295}, {"or", 0x2228},
    {"ordf", 0x00AA}, {"ordm", 0x00BA}, {"oslash", 0x00F8}, {"otilde", 0x00F5},
    {"otimes", 0x2297}, {"ouml", 0x00F6}, {"para", 0x00B6}, {"part", 0x2202},
    {"permil", 0x2030}, {"perp", 0x22A5}, {"phi", 0x03C6}, {"pi", 0x03C0},
    {"piv", 0x03D6}, {"plusmn", 0x00B1}, {"pound", 0x00A3}, {"prime", 0x2032},
    {"prod", 0x220F}, {"prop", 0x221D}, {"psi", 0x03C8}, {"quot", 0x0022},
    {"rArr", 0x21D2}, {"radic", 0x221A}, {"rang", 0x232A}, {"raquo", 0x00BB},
    {"rarr", 0x2192}, {"rceil", 0x2309}, {"rdquo", 0x201D}, {"real", 0x211C},
    {"reg", 0x00AE}, {"rfloor", 0x230B}, {"rho", 0x03C1}, {"rlm", 0x200F},
    {"rsaquo", 0x203A}, {"rsquo", 0x2019}, {"sbquo", 0x201A},
    {"scaron", 0x0161}, {"sdot", 0x22C5}, {"sect", 0x00A7}, {"shy", 0x00AD},
    {"sigma", 0x03C3}, {"sigmaf", 0x03C2}, {"sim", 0x223C}, {"spades", 0x2660},
    {"sub", 0x2282}, {"sube", 0x2286}, {"sum", 0x2211}, {"sup", 0x2283},
    {"sup1", 0x00B9}, {"sup2", 0x00B2}, {"sup3", 0x00B3}, {"supe", 0x2287},
    {"szlig", 0x00DF}, {"tau", 0x03C4}, {"there4", 0x2234}, {"theta", 0x03B8},
    {"thetasym", 0x03D1}, {"thinsp", 0x2009}, {"thorn", 0x00FE},
    {"tilde", 0x02DC}, {"times", 0x00D7}, {"trade", 0x2122}, {"uArr", 0x21D1},
    {"uacute", 0x00FA}, {"uarr", 0x2191}, {"ucirc", 0x00FB},
    {"ugrave", 0x00F9}, {"uml", 0x00A8}, {"upsih", 0x03D2},
    {"upsilon", 0x03C5}, {"uuml", 0x00FC}, {"weierp", 0x2118}, {"xi", 0x03BE},
    {"yacute", 0x00FD}, {"yen", 0x00A5}, {"yuml", 0x00FF}, {"zeta", 0x03B6},
    {"zwj", 0x200D}, {"zwnj", 0x200C},
};

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br",    "col",   "embed",  "hr",    "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 5> kRawTextElements = {
    "script", "style", "textarea", "title", "xmp"};

constexpr std::array<std::string_view, 37> kBlockElements = {
    "address", "article", "aside",   "blockquote", "body",     "br",
    "dd",      "details", "div",     "dl",         "dt",       "fieldset",
    "figcaption", "figure", "footer", "form",      "h1",       "h2",
    "h3",      "h4",      "h5",      "h6",         "header",   "hr",
    "li",      "main",    "nav",     "ol",         "p",        "pre",
    "section", "table",   "td",      "th",         "tr",       "ul",
    "html"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view tag) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool iequals_prefix(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = text[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

std::optional<char32_t> lookup_named(std::string_view name) {
  const auto* begin = std::begin(kNamedReferences);
  const auto* end = std::end(kNamedReferences);
  const auto* it = std::lower_bound(
      begin, end, name,
      [](const NamedReference& ref, std::string_view key) { return ref.name < key; });
  if (it == end || it->name != name) return std::nullopt;
  return it->code_point;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::string_view html) : html_(html) {
    root_ = std::make_unique<Node>();
    stack_.push_back(root_.get());
  }

  std::unique_ptr<Node> build() {
    while (pos_ < html_.size()) {
      if (html_[pos_] == '<') {
        consume_markup();
      } else {
        const std::size_t next = html_.find('<', pos_);
        const std::size_t stop = next == std::string_view::npos ? html_.size() : next;
        append_text(decode_entities(html_.substr(pos_, stop - pos_)));
        pos_ = stop;
      }
    }
    return std::move(root_);
  }

 private:
  void fail(const std::string& what) const {
    throw ParseError("HTML byte " + std::to_string(pos_) + ": " + what);
  }

  Node& current() { return *stack_.back(); }

  void append_text(std::string text) {
    if (text.empty()) return;
    auto& children = current().children;
    if (!children.empty() && children.back()->kind == Node::Kind::kText) {
      children.back()->text += text;
      return;
    }
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::kText;
    node->text = std::move(text);
    children.push_back(std::move(node));
  }

  void consume_markup() {
    if (html_.compare(pos_, 4, "<!--") == 0) {
      const std::size_t end = html_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) fail("unterminated comment");
      pos_ = end + 3;
      return;
    }
    if (pos_ + 1 < html_.size() && (html_[pos_ + 1] == '!' || html_[pos_ + 1] == '?')) {
      const std::size_t end = html_.find('>', pos_);
      if (end == std::string_view::npos) fail("unterminated declaration");
      pos_ = end + 1;
      return;
    }
    if (pos_ + 1 < html_.size() && html_[pos_ + 1] == '/') {
      if (pos_ + 2 < html_.size() && is_ascii_alpha(html_[pos_ + 2])) {
        consume_end_tag();
      } else {
        // "</" not followed by a name is a bogus comment.
        const std::size_t end = html_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated end tag");
        pos_ = end + 1;
      }
      return;
    }
    if (pos_ + 1 < html_.size() && is_ascii_alpha(html_[pos_ + 1])) {
      consume_start_tag();
      return;
    }
    append_text("<");
    ++pos_;
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < html_.size() && !is_ascii_space(html_[pos_]) && html_[pos_] != '>' &&
           html_[pos_] != '/' && html_[pos_] != '=') {
      ++pos_;
    }
    return to_lower(html_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < html_.size() && is_ascii_space(html_[pos_])) ++pos_;
  }

  void consume_end_tag() {
    pos_ += 2;
    const std::string name = read_name();
    const std::size_t end = html_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated end tag");
    pos_ = end + 1;
    close_element(name);
  }

  void close_element(std::string_view name) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == name) {
        stack_.resize(i);
        return;
      }
    }
  }

  void consume_start_tag() {
    ++pos_;
    auto node = std::make_unique<Node>();
    node->tag = read_name();
    bool self_closing = false;
    while (true) {
      skip_space();
      if (pos_ >= html_.size()) fail("unterminated start tag <" + node->tag + ">");
      if (html_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (html_[pos_] == '/') {
        ++pos_;
        if (pos_ < html_.size() && html_[pos_] == '>') {
          self_closing = true;
          ++pos_;
          break;
        }
        continue;
      }
      std::string attr = read_name();
      if (attr.empty()) {
        ++pos_;  // stray '=' or similar
        continue;
      }
      skip_space();
      std::string value;
      if (pos_ < html_.size() && html_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ >= html_.size()) fail("unterminated attribute value");
        const char quote = html_[pos_];
        if (quote == '"' || quote == '\'') {
          const std::size_t end = html_.find(quote, pos_ + 1);
          if (end == std::string_view::npos) fail("unterminated attribute value");
          value = decode_entities(html_.substr(pos_ + 1, end - pos_ - 1));
          pos_ = end + 1;
        } else {
          const std::size_t start = pos_;
          while (pos_ < html_.size() && !is_ascii_space(html_[pos_]) && html_[pos_] != '>') {
            ++pos_;
          }
          value = decode_entities(html_.substr(start, pos_ - start));
        }
      }
      const bool duplicate = std::any_of(node->attributes.begin(), node->attributes.end(),
                                         [&](const auto& a) { return a.first == attr; });
      if (!duplicate) node->attributes.emplace_back(std::move(attr), std::move(value));
    }

    const std::string tag = node->tag;
    // Anchors do not nest.
    if (tag == "a") close_element("a");
    Node* raw = node.get();
    current().children.push_back(std::move(node));

    if (contains(kVoidElements, tag) || self_closing) return;
    if (contains(kRawTextElements, tag)) {
      const std::string closing = "</" + tag;
      std::size_t end = pos_;
      while (end < html_.size() && !iequals_prefix(html_, end, closing)) ++end;
      std::string body(html_.substr(pos_, end - pos_));
      if (!body.empty()) {
        auto text = std::make_unique<Node>();
        text->kind = Node::Kind::kText;
        text->text = tag == "textarea" || tag == "title" ? decode_entities(body) : body;
        raw->children.push_back(std::move(text));
      }
      pos_ = end;
      if (pos_ < html_.size()) {
        const std::size_t gt = html_.find('>', pos_);
        if (gt == std::string_view::npos) fail("unterminated end tag");
        pos_ = gt + 1;
      }
      return;
    }
    stack_.push_back(raw);
  }

  std::string_view html_;
  std::size_t pos_ = 0;
  std::unique_ptr<Node> root_;
  std::vector<Node*> stack_;
};

}  // namespace

std::optional<std::string_view> Node::attribute(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return std::string_view(value);
  }
  return std::nullopt;
}

bool Node::has_class(std::string_view cls) const {
  const auto value = attribute("class");
  if (!value) return false;
  std::string_view rest = *value;
  while (!rest.empty()) {
    const std::size_t start = rest.find_first_not_of(" \t\n\r\f");
    if (start == std::string_view::npos) break;
    rest.remove_prefix(start);
    const std::size_t end = std::min(rest.find_first_of(" \t\n\r\f"), rest.size());
    if (rest.substr(0, end) == cls) return true;
    rest.remove_prefix(end);
  }
  return false;
}

std::unique_ptr<Node> parse(std::string_view html) {
  if (!utf8::is_valid(html)) throw ParseError("HTML is not valid UTF-8");
  return TreeBuilder(html).build();
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t amp = text.find('&', pos);
    if (amp == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, amp - pos));
    pos = amp;
    const std::size_t semi = text.find(';', amp + 1);
    // Longest reference name in the table is 8 characters; numeric ones are
    // bounded by the code point range.
    if (semi == std::string_view::npos || semi - amp > 10) {
      out.push_back('&');
      ++pos;
      continue;
    }
    const std::string_view body = text.substr(amp + 1, semi - amp - 1);
    std::optional<char32_t> cp;
    if (body.size() > 1 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string_view digits = body.substr(hex ? 2 : 1);
      std::uint32_t value = 0;
      bool ok = !digits.empty();
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') {
          d = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          d = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          d = c - 'A' + 10;
        } else {
          ok = false;
          break;
        }
        value = value * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (value > 0x10FFFF) {
          ok = false;
          break;
        }
      }
      if (ok) {
        const bool bad = value == 0 || (value >= 0xD800 && value <= 0xDFFF);
        cp = bad ? char32_t{0xFFFD} : static_cast<char32_t>(value);
      }
    } else {
      cp = lookup_named(body);
    }
    if (cp) {
      utf8::append(out, *cp);
      pos = semi + 1;
    } else {
      out.push_back('&');
      ++pos;
    }
  }
  return out;
}

bool is_block_element(std::string_view tag) {
  return contains(kBlockElements, tag);
}

const Node* find_first(const Node& root,
                       const std::function<bool(const Node&)>& pred) {
  if (root.kind == Node::Kind::kElement && pred(root)) return &root;
  for (const auto& child : root.children) {
    if (const Node* hit = find_first(*child, pred)) return hit;
  }
  return nullptr;
}

}  // namespace edner::html
