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

#ifndef LEGALSUM_CLI_HPP_
#define LEGALSUM_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace legalsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Subcommands: stats, summarize, evaluate, audit, report. Returns the
// process exit status; diagnostics go to err.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace legalsum::cli

#endif  // LEGALSUM_CLI_HPP_
