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

/// @file driver.hpp
/// The compile pipeline shared by the CLI and the tests:
/// parse, bind, type-check, apply resolutions, detect conflicts, resolve
/// test sets and build the plan.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tol/binder.hpp"
#include "tol/conflicts.hpp"
#include "tol/diagnostics.hpp"
#include "tol/resolver.hpp"

namespace tol::driver {

struct Source {
    std::string name;
    std::string text;
};

struct Compilation {
    /// Lex, parse, bind, type and resolution errors.
    std::vector<Diagnostic> diagnostics;
    /// Conflicts left after applying the program's resolutions.
    std::vector<conflicts::ConflictDiagnostic> conflicts;
    /// Null when parsing or binding failed.
    std::shared_ptr<binder::Program> program;
    resolver::ResolvedTestSets sets;
    resolver::ExecutionPlan plan;

    [[nodiscard]] bool ok() const { return program && !hasErrors(diagnostics) && conflicts.empty(); }
};

Compilation compile(const std::vector<Source>& sources);

/// Reads each path; an unreadable file is reported as an IoError diagnostic.
Compilation compileFiles(const std::vector<std::string>& paths);

/// Every error as text: diagnostics in `<file>:<line>:<col>: error[...]`
/// form, conflicts in their single-line form.
std::vector<std::string> errorLines(const Compilation& c);

} // namespace tol::driver
