// Copyright 2026 The Legalsum Authors.
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

#include "http_util.hpp"

#include "legalsum/error.hpp"

namespace legalsum::http {

SplitUrl split_url(std::string_view url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ValidationError("URL '" + std::string(url) + "' must start with http:// or https://");
  }
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ValidationError("unsupported URL scheme '" + std::string(scheme) + "'");
  }
  const std::size_t path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string_view::npos) return {std::string(url), ""};
  return {std::string(url.substr(0, path_begin)), std::string(url.substr(path_begin))};
}

std::string join_path(std::string_view base_path, std::string_view route) {
  std::string out(base_path);
  while (!out.empty() && out.back() == '/') out.pop_back();
  if (route.empty() || route.front() != '/') out.push_back('/');
  out.append(route);
  return out;
}

std::unique_ptr<httplib::Client> make_client(const std::string& origin, std::chrono::milliseconds timeout) {
  auto client = std::make_unique<httplib::Client>(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client->set_connection_timeout(secs.count(), usecs.count());
  client->set_read_timeout(secs.count(), usecs.count());
  client->set_write_timeout(secs.count(), usecs.count());
  return client;
}

bool is_retriable_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace legalsum::http
