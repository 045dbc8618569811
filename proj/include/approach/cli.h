// Copyright 2026 The Approach Authors. All rights reserved.
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

#ifndef APPROACH_CLI_H_
#define APPROACH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace approach {

inline constexpr const char* kToolVersion = "approach 1.0.0";

// Runs one command line; args excludes the program name. Output files begin
// with a provenance header holding the fully resolved configuration, which
// --config accepts to regenerate them. Exit codes: 0 success, 2 invalid
// configuration, 3 numerical failure, 4 infeasible model.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace approach

#endif  // APPROACH_CLI_H_
