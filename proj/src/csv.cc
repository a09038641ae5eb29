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

#include "edner/csv.h"

#include "edner/error.h"

namespace edner::csv {
namespace {

template <typename Range>
std::string join_record(const Range& fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out.push_back(',');
    out += escape(f);
    first = false;
  }
  out.push_back('\n');
  return out;
}

}  // namespace

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_record(std::initializer_list<std::string_view> fields) {
  return join_record(fields);
}

std::string format_record(const std::vector<std::string>& fields) {
  return join_record(fields);
}

std::vector<Record> parse(std::string_view content) {
  std::vector<Record> records;
  std::size_t pos = 0;
  std::size_t line = 1;
  const auto fail = [&](std::size_t at_line, const std::string& what) {
    throw ParseError("CSV line " + std::to_string(at_line) + ": " + what);
  };

  while (pos < content.size()) {
    Record record;
    record.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (pos < content.size() && content[pos] == '"') {
        ++pos;
        bool closed = false;
        while (pos < content.size()) {
          const char c = content[pos++];
          if (c == '"') {
            if (pos < content.size() && content[pos] == '"') {
              field.push_back('"');
              ++pos;
            } else {
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
          }
        }
        if (!closed) fail(record.line, "unterminated quoted field");
        if (pos < content.size() && content[pos] != ',' && content[pos] != '\n' &&
            !(content[pos] == '\r' && pos + 1 < content.size() && content[pos + 1] == '\n')) {
          fail(line, "unexpected character after closing quote");
        }
      } else {
        while (pos < content.size() && content[pos] != ',' && content[pos] != '\n' &&
               !(content[pos] == '\r' && pos + 1 < content.size() && content[pos + 1] == '\n')) {
          if (content[pos] == '"') fail(line, "quote inside unquoted field");
          field.push_back(content[pos++]);
        }
      }
      record.fields.push_back(field);

      if (pos >= content.size()) {
        end_of_record = true;
      } else if (content[pos] == ',') {
        ++pos;
      } else {
        pos += content[pos] == '\r' ? 2 : 1;
        ++line;
        end_of_record = true;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace edner::csv
