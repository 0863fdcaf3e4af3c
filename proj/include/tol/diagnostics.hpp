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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tol {

/// Location of a node or token inside a source file. Lines and columns are
/// 1-based; `offset`/`length` are byte positions into the original text.
struct Span {
    std::string file;
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::size_t offset = 0;
    std::size_t length = 0;

    [[nodiscard]] bool valid() const { return line > 0; }
    bool operator==(const Span&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    Span span;

    bool operator==(const Diagnostic&) const = default;
};

/// `<file>:<line>:<col>: error[<code>]: <message>`
std::string format(const Diagnostic& diag);

[[nodiscard]] bool hasErrors(const std::vector<Diagnostic>& diags);

/// Base class for failures that abort a compilation phase outright
/// (lexing and parsing stop at the first error).
class CompileError : public std::runtime_error {
public:
    explicit CompileError(Diagnostic diag)
        : std::runtime_error(format(diag)), diag_(std::move(diag)) {}

    [[nodiscard]] const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

} // namespace tol
