// Copyright 2026 The TOL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tol/diagnostics.hpp"

#include <algorithm>

namespace tol {

std::string format(const Diagnostic& diag) {
    std::string out;
    out += diag.span.file.empty() ? "<input>" : diag.span.file;
    out += ':' + std::to_string(diag.span.line) + ':' + std::to_string(diag.span.column) + ": ";
    out += diag.severity == Severity::Error ? "error" : "warning";
    out += '[' + diag.code + "]: " + diag.message;
    return out;
}

bool hasErrors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

} // namespace tol
