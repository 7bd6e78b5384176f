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

// Internal helpers around cpp-httplib. Not installed.

#ifndef LEGALSUM_SRC_HTTP_UTIL_HPP_
#define LEGALSUM_SRC_HTTP_UTIL_HPP_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "httplib.h"

namespace legalsum::http {

// "http://host:8080/v1/completions" -> {"http://host:8080", "/v1/completions"}.
struct SplitUrl {
  std::string origin;
  std::string path;
};

SplitUrl split_url(std::string_view url);

// Joins a base URL's path with a route: ("http://h/api", "/nli") -> "/api/nli".
std::string join_path(std::string_view base_path, std::string_view route);

std::unique_ptr<httplib::Client> make_client(const std::string& origin, std::chrono::milliseconds timeout);

bool is_retriable_status(int status);

}  // namespace legalsum::http

#endif  // LEGALSUM_SRC_HTTP_UTIL_HPP_
