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

// RFC 4180 CSV with a single fixed dialect: comma separator, double-quote
// quoting, "\n" record terminator on output ("\r\n" accepted on input).

#ifndef EDNER_CSV_H_
#define EDNER_CSV_H_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace edner::csv {

struct Record {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

// Quotes only when the field contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

// One record including the trailing "\n".
std::string format_record(std::initializer_list<std::string_view> fields);
std::string format_record(const std::vector<std::string>& fields);

// Throws ParseError naming the line of the first malformed record.
std::vector<Record> parse(std::string_view content);

}  // namespace edner::csv

#endif  // EDNER_CSV_H_
