// Copyright 2026 The hlsdift Authors
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

#ifndef HLSDIFT_CLI_HPP
#define HLSDIFT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hlsdift {

/// Process exit statuses of the hlsdift tool.
namespace exit_code {
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;     // kernel or inputs failed to parse/validate
constexpr int kEvaluation = 3;  // runtime fault, or check/fuzz found a violation
constexpr int kSecurity = 10;   // at least one security exception
}  // namespace exit_code

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hlsdift

#endif  // HLSDIFT_CLI_HPP
