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

#ifndef LEGALSUM_ERROR_HPP_
#define LEGALSUM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace legalsum {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or missing input (files, directories, malformed records).
class InputError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A summarization backend failed. Carries the chunk it failed on when known.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what, long chunk_index = -1,
                        bool retriable = false)
      : Error(what), chunk_index_(chunk_index), retriable_(retriable) {}

  long chunk_index() const { return chunk_index_; }
  bool retriable() const { return retriable_; }

 private:
  long chunk_index_;
  bool retriable_;
};

// The remote NLI/NER scorer could not be reached or answered malformed data.
class ExternalServiceError : public Error {
 public:
  using Error::Error;
};

}  // namespace legalsum

#endif  // LEGALSUM_ERROR_HPP_
