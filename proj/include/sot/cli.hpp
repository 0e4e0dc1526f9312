// Copyright 2026 The sot Authors
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

#ifndef SOT_CLI_HPP
#define SOT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sot::cli {

enum ExitCode : int {
    kOk = 0,
    kParseFailure = 1,
    kPreconditionFailure = 2,
    kNumericalFailure = 3,
};

/// Runs `sot <args...>`. Results go to --out when given and to `out`
/// otherwise; warnings and errors are written to `err` as one JSON object per
/// line.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace sot::cli

#endif
