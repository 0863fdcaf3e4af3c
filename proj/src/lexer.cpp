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

#include "tol/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace tol::frontend {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 27> kKeywords{{
    {"package", TokenKind::KwPackage},
    {"class", TokenKind::KwClass},
    {"extends", TokenKind::KwExtends},
    {"test", TokenKind::KwTest},
    {"for", TokenKind::KwFor},
    {"resolve", TokenKind::KwResolve},
    {"public", TokenKind::KwPublic},
    {"private", TokenKind::KwPrivate},
    {"return", TokenKind::KwReturn},
    {"if", TokenKind::KwIf},
    {"else", TokenKind::KwElse},
    {"assert", TokenKind::KwAssert},
    {"print", TokenKind::KwPrint},
    {"new", TokenKind::KwNew},
    {"this", TokenKind::KwThis},
    {"Current", TokenKind::KwCurrent},
    {"super", TokenKind::KwSuper},
    {"null", TokenKind::KwNull},
    {"true", TokenKind::KwTrue},
    {"false", TokenKind::KwFalse},
    {"instanceof", TokenKind::KwInstanceof},
    {"classnameOf", TokenKind::KwClassnameOf},
    {"Color", TokenKind::KwColor},
    {"int", TokenKind::KwInt},
    {"bool", TokenKind::KwBool},
    {"string", TokenKind::KwString},
    {"void", TokenKind::KwVoid},
}};

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool isDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            const std::size_t triviaStart = pos_;
            skipTrivia();
            std::string trivia(src_.substr(triviaStart, pos_ - triviaStart));
            Token tok = next();
            tok.leadingTrivia = std::move(trivia);
            const bool done = tok.kind == TokenKind::Eof;
            out.push_back(std::move(tok));
            if (done)
                break;
        }
        return out;
    }

private:
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[nodiscard]] Span spanFrom(std::size_t start, std::uint32_t line, std::uint32_t col) const {
        return Span{std::string(file_), line, col, start, pos_ - start};
    }

    [[noreturn]] void fail(const std::string& message, std::size_t start, std::uint32_t line,
                           std::uint32_t col) const {
        throw LexError(Diagnostic{Severity::Error, "LexError", message, spanFrom(start, line, col)});
    }

    void skipTrivia() {
        while (pos_ < src_.size()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n')
                    advance();
            } else if (c == '/' && peek(1) == '*') {
                const std::size_t start = pos_;
                const auto line = line_;
                const auto col = column_;
                advance();
                advance();
                for (;;) {
                    if (pos_ >= src_.size())
                        fail("unterminated comment", start, line, col);
                    if (peek() == '*' && peek(1) == '/') {
                        advance();
                        advance();
                        break;
                    }
                    advance();
                }
            } else {
                break;
            }
        }
    }

    Token next() {
        const std::size_t start = pos_;
        const auto line = line_;
        const auto col = column_;
        auto make = [&](TokenKind kind) {
            return Token{kind, std::string(src_.substr(start, pos_ - start)), spanFrom(start, line, col), {}};
        };

        if (pos_ >= src_.size())
            return make(TokenKind::Eof);

        const char c = peek();
        if (isIdentStart(c)) {
            while (isIdentChar(peek()))
                advance();
            const auto word = src_.substr(start, pos_ - start);
            for (const auto& [text, kind] : kKeywords) {
                if (text == word)
                    return make(kind);
            }
            return make(TokenKind::Identifier);
        }
        if (isDigit(c)) {
            while (isDigit(peek()))
                advance();
            if (isIdentStart(peek()))
                fail("malformed number literal", start, line, col);
            return make(TokenKind::IntLiteral);
        }
        if (c == '"') {
            advance();
            for (;;) {
                if (pos_ >= src_.size() || peek() == '\n')
                    fail("unterminated string literal", start, line, col);
                if (peek() == '\\') {
                    advance();
                    if (pos_ >= src_.size())
                        fail("unterminated string literal", start, line, col);
                    advance();
                    continue;
                }
                if (peek() == '"') {
                    advance();
                    break;
                }
                advance();
            }
            return make(TokenKind::StringLiteral);
        }

        auto two = [&](char second, TokenKind pair, TokenKind single) {
            advance();
            if (peek() == second) {
                advance();
                return make(pair);
            }
            return make(single);
        };

        switch (c) {
        case '{': advance(); return make(TokenKind::LBrace);
        case '}': advance(); return make(TokenKind::RBrace);
        case '(': advance(); return make(TokenKind::LParen);
        case ')': advance(); return make(TokenKind::RParen);
        case ',': advance(); return make(TokenKind::Comma);
        case ';': advance(); return make(TokenKind::Semicolon);
        case '.': advance(); return make(TokenKind::Dot);
        case '+': advance(); return make(TokenKind::Plus);
        case '-': advance(); return make(TokenKind::Minus);
        case '*': advance(); return make(TokenKind::Star);
        case '/': advance(); return make(TokenKind::Slash);
        case '=': return two('=', TokenKind::EqualEqual, TokenKind::Assign);
        case '!': return two('=', TokenKind::NotEqual, TokenKind::Bang);
        case '<': return two('=', TokenKind::LessEqual, TokenKind::Less);
        case '>': return two('=', TokenKind::GreaterEqual, TokenKind::Greater);
        case '&':
            if (peek(1) == '&') {
                advance();
                advance();
                return make(TokenKind::AndAnd);
            }
            break;
        case '|':
            if (peek(1) == '|') {
                advance();
                advance();
                return make(TokenKind::OrOr);
            }
            break;
        default:
            break;
        }
        advance();
        fail(std::string("unexpected character '") + c + "'", start, line, col);
    }

    std::string_view src_;
    std::string_view file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t column_ = 1;
};

} // namespace

std::string_view spelling(TokenKind kind) {
    for (const auto& [text, k] : kKeywords) {
        if (k == kind)
            return text;
    }
    switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "integer literal";
    case TokenKind::StringLiteral: return "string literal";
    case TokenKind::LBrace: return "{";
    case TokenKind::RBrace: return "}";
    case TokenKind::LParen: return "(";
    case TokenKind::RParen: return ")";
    case TokenKind::Comma: return ",";
    case TokenKind::Semicolon: return ";";
    case TokenKind::Dot: return ".";
    case TokenKind::Assign: return "=";
    case TokenKind::EqualEqual: return "==";
    case TokenKind::NotEqual: return "!=";
    case TokenKind::Plus: return "+";
    case TokenKind::Minus: return "-";
    case TokenKind::Star: return "*";
    case TokenKind::Slash: return "/";
    case TokenKind::Less: return "<";
    case TokenKind::Greater: return ">";
    case TokenKind::LessEqual: return "<=";
    case TokenKind::GreaterEqual: return ">=";
    case TokenKind::AndAnd: return "&&";
    case TokenKind::OrOr: return "||";
    case TokenKind::Bang: return "!";
    case TokenKind::Eof: return "end of input";
    default: return "?";
    }
}

std::vector<Token> lex(std::string_view source, std::string_view fileName) {
    return Lexer(source, fileName).run();
}

} // namespace tol::frontend
