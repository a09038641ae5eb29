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

// UTF-8 helpers. All character offsets in this library count Unicode scalar
// values (code points); strings are stored as UTF-8 bytes.

#ifndef EDNER_UTF8_H_
#define EDNER_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edner::utf8 {

// Strict validation: rejects overlongs, surrogates and values > U+10FFFF.
bool is_valid(std::string_view bytes);

// Decodes the scalar starting at bytes[pos] and advances pos. Invalid
// sequences decode as U+FFFD and consume one byte.
char32_t decode(std::string_view bytes, std::size_t& pos);

void append(std::string& out, char32_t cp);

std::size_t length(std::string_view bytes);

// White_Space property from the Unicode character database.
bool is_space(char32_t cp);

// Maximal runs of non-whitespace code points.
std::size_t count_tokens(std::string_view bytes);

// Precomputed code point -> byte offset table for one string.
class CodePointIndex {
 public:
  explicit CodePointIndex(std::string_view text);

  std::size_t size() const { return starts_.size() - 1; }

  // Byte offset of code point `cp`; cp == size() gives the byte length.
  std::size_t byte_offset(std::size_t cp) const { return starts_.at(cp); }

  // Code point containing byte `byte` (byte must lie on a boundary or inside
  // a sequence; the containing scalar is returned).
  std::size_t code_point_at(std::size_t byte) const;

  // text[start, end) by code points, or nullopt when out of range.
  std::optional<std::string_view> slice(std::size_t start,
                                        std::size_t end) const;

 private:
  std::string_view text_;
  std::vector<std::size_t> starts_;
};

}  // namespace edner::utf8

#endif  // EDNER_UTF8_H_
