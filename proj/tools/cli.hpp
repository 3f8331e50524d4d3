// Copyright 2026 The tsui Authors
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

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tsui::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsage = 2 };

/// Parses `start:stop:step` (both endpoints included, the stop value matched
/// to within 1e-12), a comma list, or a single number. Throws DomainError.
std::vector<double> parse_grid(std::string_view text);

/// Runs the tool on argv-style arguments (program name excluded). Results go
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tsui::cli
