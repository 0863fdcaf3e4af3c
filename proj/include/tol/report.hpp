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

/// @file report.hpp
/// Test reports: plain text, TAP version 14, and JSON.

#pragma once

#include <string>
#include <vector>

#include "tol/metamodel.hpp"
#include "tol/runtime.hpp"

namespace tol::report {

enum class Format { Plain, Tap, Json };

struct Counts {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;
};

Counts count(const std::vector<runtime::TestOutcome>& outcomes);

/// `N passed, M failed, K errors`
std::string summary(const Counts& counts);

/// Full report text, LF-terminated lines. Plain: one `PASS|FAIL|ERROR name`
/// line per outcome then the summary. Color only affects Plain.
std::string render(const metamodel::Model& model, const std::vector<runtime::TestOutcome>& outcomes, Format format,
                   bool color = false);

/// One line per non-passing outcome, locating the failed assertion or the
/// runtime error: `<file>:<line>:<col>: FAIL <name>: <message>`.
std::string failureDetails(const metamodel::Model& model, const std::vector<runtime::TestOutcome>& outcomes);

} // namespace tol::report
