// Copyright 2026 The sicforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SICFORGE_TOOLS_CLI_HPP
#define SICFORGE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sicforge::cli {

enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitFail = 2 };

/// Runs the sicforge command line with `args` (program name excluded),
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sicforge::cli

#endif  // SICFORGE_TOOLS_CLI_HPP
