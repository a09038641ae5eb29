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

#ifndef EDNER_ERROR_H_
#define EDNER_ERROR_H_

#include <stdexcept>
#include <string>

namespace edner {

// Base class for every expected failure raised by the library. The CLI maps
// these to exit status 1; anything else is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input that cannot be interpreted at all (CSV schema, HTML, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input that parses but violates a data invariant (offsets, overlaps, ids).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace edner

#endif  // EDNER_ERROR_H_
