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

#include <string>
#include <string_view>
#include <vector>

#include "tol/ast.hpp"
#include "tol/lexer.hpp"

namespace tol::frontend {

class ParseError : public CompileError {
public:
    ParseError(Diagnostic diag, std::vector<std::string> expected)
        : CompileError(std::move(diag)), expected_(std::move(expected)) {}

    /// Token spellings that would have been accepted at the error position.
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

/// Recursive-descent parse of a token stream produced by lex(). Stops at the
/// first syntax error.
ast::Unit parse(const std::vector<Token>& tokens);

/// lex + parse.
ast::Unit parseSource(std::string_view source, std::string_view fileName = "<input>");

/// Canonical source text for a unit. Binary expressions are fully
/// parenthesized, so printing is injective on tree structure: two units print
/// identically exactly when they are structurally equal (spans aside).
std::string print(const ast::Unit& unit);

} // namespace tol::frontend
