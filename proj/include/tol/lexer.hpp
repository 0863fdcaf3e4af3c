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

#include "tol/diagnostics.hpp"

namespace tol::frontend {

enum class TokenKind {
    // keywords
    KwPackage,
    KwClass,
    KwExtends,
    KwTest,
    KwFor,
    KwResolve,
    KwPublic,
    KwPrivate,
    KwReturn,
    KwIf,
    KwElse,
    KwAssert,
    KwPrint,
    KwNew,
    KwThis,
    KwCurrent,
    KwSuper,
    KwNull,
    KwTrue,
    KwFalse,
    KwInstanceof,
    KwClassnameOf,
    KwColor,
    KwInt,
    KwBool,
    KwString,
    KwVoid,
    // literals and names
    Identifier,
    IntLiteral,
    StringLiteral,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Dot,
    Assign,
    EqualEqual,
    NotEqual,
    Plus,
    Minus,
    Star,
    Slash,
    Less,
    Greater,
    LessEqual,
    GreaterEqual,
    AndAnd,
    OrOr,
    Bang,
    Eof,
};

std::string_view spelling(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string lexeme;
    Span span;
    /// Whitespace and comments skipped immediately before this token.
    std::string leadingTrivia;
};

/// Raised on an unterminated string or comment, or a character the language
/// does not use.
class LexError : public CompileError {
public:
    using CompileError::CompileError;
};

/// Tokenizes a whole file. The result always ends with an Eof token, which
/// carries any trailing trivia.
std::vector<Token> lex(std::string_view source, std::string_view fileName = "<input>");

} // namespace tol::frontend
