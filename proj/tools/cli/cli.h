/*
 * Copyright (C) 2026 The BenchForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BENCHFORGE_TOOLS_CLI_CLI_H_
#define BENCHFORGE_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace benchforge::cli {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsage = 2;

// Runs one command. args excludes the program name. Output goes to |out|,
// diagnostics and usage text to |err|.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace benchforge::cli

#endif  // BENCHFORGE_TOOLS_CLI_CLI_H_
