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

// Polite HTTP(S) retrieval of note pages.

#ifndef EDNER_FETCH_H_
#define EDNER_FETCH_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "edner/error.h"

namespace edner {

// Network failure that persisted through every retry.
class FetchError : public Error {
 public:
  FetchError(std::string uri, const std::string& what)
      : Error("fetch " + uri + ": " + what), uri_(std::move(uri)) {}
  const std::string& uri() const { return uri_; }

 private:
  std::string uri_;
};

// The server answered with something other than 200.
class StatusError : public Error {
 public:
  StatusError(std::string uri, int status)
      : Error("fetch " + uri + ": HTTP status " + std::to_string(status)),
        uri_(std::move(uri)),
        status_(status) {}
  const std::string& uri() const { return uri_; }
  int status() const { return status_; }

 private:
  std::string uri_;
  int status_;
};

struct FetchOptions {
  int delay_ms = 1000;    // minimum gap between consecutive requests
  int retries = 3;        // extra attempts after the first
  int backoff_ms = 500;   // first retry waits this long, then doubles
  int timeout_ms = 30000;
};

struct ParsedUri {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;  // includes the query, never empty

  std::string origin() const;
};

// Accepts absolute http(s) URIs only; nullopt for anything else.
std::optional<ParsedUri> parse_http_uri(std::string_view uri);

// Not thread-safe; give each worker its own instance.
class Fetcher {
 public:
  explicit Fetcher(FetchOptions options = {}) : options_(options) {}

  // Body of a 200 response. Connection failures, 5xx and 429 are retried;
  // other statuses fail immediately with StatusError. Throws
  // PreconditionError for a URI that is not absolute http(s).
  std::string fetch_note(std::string_view uri);

 private:
  void wait_for_slot(std::chrono::milliseconds extra);

  FetchOptions options_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
};

}  // namespace edner

#endif  // EDNER_FETCH_H_
