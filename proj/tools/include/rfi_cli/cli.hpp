// Copyright 2026 The rfi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RFI_CLI_CLI_HPP_
#define RFI_CLI_CLI_HPP_

// Command-line front end: simulate, exact, mc and verify subcommands.
//
// Exit codes are a stable contract: 0 success, 1 a verification suite
// failed, 2 usage or configuration error.

#include <iosfwd>
#include <string>
#include <vector>

namespace rfi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs the tool on `args` (args[0] is the program name). CSV goes to the
// --out file when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfi::cli

#endif  // RFI_CLI_CLI_HPP_
