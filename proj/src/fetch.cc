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

#include "edner/fetch.h"

#include <thread>

#include "httplib.h"

namespace edner {

std::string ParsedUri::origin() const {
  return scheme + "://" + host + ":" + std::to_string(port);
}

std::optional<ParsedUri> parse_http_uri(std::string_view uri) {
  ParsedUri out;
  std::string_view rest;
  if (uri.starts_with("http://")) {
    out.scheme = "http";
    out.port = 80;
    rest = uri.substr(7);
  } else if (uri.starts_with("https://")) {
    out.scheme = "https";
    out.port = 443;
    rest = uri.substr(8);
  } else {
    return std::nullopt;
  }
  const std::size_t slash = std::min(rest.find_first_of("/?#"), rest.size());
  std::string_view authority = rest.substr(0, slash);
  std::string_view path = rest.substr(slash);
  if (const std::size_t hash = path.find('#'); hash != std::string_view::npos) {
    path = path.substr(0, hash);
  }
  if (authority.find('@') != std::string_view::npos) return std::nullopt;
  if (const std::size_t colon = authority.rfind(':'); colon != std::string_view::npos) {
    const std::string_view port = authority.substr(colon + 1);
    if (port.empty() || port.size() > 5) return std::nullopt;
    int value = 0;
    for (char c : port) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    if (value < 1 || value > 65535) return std::nullopt;
    out.port = value;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) return std::nullopt;
  for (char c : authority) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-';
    if (!ok) return std::nullopt;
  }
  for (char c : path) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7F) return std::nullopt;
  }
  out.host = std::string(authority);
  out.path = path.empty() ? "/" : std::string(path);
  if (out.path.front() == '?') out.path.insert(out.path.begin(), '/');
  return out;
}

void Fetcher::wait_for_slot(std::chrono::milliseconds extra) {
  using Clock = std::chrono::steady_clock;
  auto ready = Clock::now() + extra;
  if (last_request_) {
    ready = std::max(ready, *last_request_ + std::chrono::milliseconds(options_.delay_ms));
  }
  std::this_thread::sleep_until(ready);
  last_request_ = Clock::now();
}

std::string Fetcher::fetch_note(std::string_view uri) {
  const auto parsed = parse_http_uri(uri);
  if (!parsed) throw PreconditionError("not an absolute http(s) URI: '" + std::string(uri) + "'");

  httplib::Client client(parsed->origin());
  client.set_follow_location(true);
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);

  std::string last_failure;
  int last_status = 0;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    const auto backoff =
        attempt == 0 ? std::chrono::milliseconds(0)
                     : std::chrono::milliseconds(static_cast<long long>(options_.backoff_ms)
                                                 << (attempt - 1));
    wait_for_slot(backoff);
    const auto result = client.Get(parsed->path);
    if (!result) {
      last_failure = httplib::to_string(result.error());
      last_status = 0;
      continue;
    }
    const int status = result->status;
    if (status == 200) return result->body;
    if (status == 429 || status >= 500) {
      last_status = status;
      continue;
    }
    throw StatusError(std::string(uri), status);
  }
  if (last_status != 0) throw StatusError(std::string(uri), last_status);
  throw FetchError(std::string(uri), last_failure + " after " +
                                         std::to_string(options_.retries + 1) + " attempt(s)");
}

}  // namespace edner
