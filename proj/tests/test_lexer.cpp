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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tol/lexer.hpp"

namespace tol::frontend {
namespace {

std::vector<TokenKind> kinds(std::string_view src) {
    std::vector<TokenKind> out;
    for (const Token& t : lex(src))
        out.push_back(t.kind);
    return out;
}

std::string reconstruct(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& t : tokens)
        out += t.leadingTrivia + t.lexeme;
    return out;
}

TEST(Lexer, SmallestClass) {
    EXPECT_EQ(kinds("class Animal { }"), (std::vector<TokenKind>{TokenKind::KwClass, TokenKind::Identifier,
                                                                  TokenKind::LBrace, TokenKind::RBrace,
                                                                  TokenKind::Eof}));
}

TEST(Lexer, CurrentCall) {
    const auto toks = lex("Current.lastFoodEaten()");
    ASSERT_EQ(toks.size(), 6u);
    EXPECT_EQ(toks[0].kind, TokenKind::KwCurrent);
    EXPECT_EQ(toks[1].kind, TokenKind::Dot);
    EXPECT_EQ(toks[2].kind, TokenKind::Identifier);
    EXPECT_EQ(toks[2].lexeme, "lastFoodEaten");
    EXPECT_EQ(toks[3].kind, TokenKind::LParen);
    EXPECT_EQ(toks[4].kind, TokenKind::RParen);
    EXPECT_EQ(toks[5].kind, TokenKind::Eof);
}

TEST(Lexer, UnterminatedString) {
    try {
        lex("\"abc", "f.tol");
        FAIL() << "expected LexError";
    } catch (const LexError& e) {
        EXPECT_EQ(e.diagnostic().span.file, "f.tol");
        EXPECT_EQ(e.diagnostic().span.line, 1u);
        EXPECT_EQ(e.diagnostic().span.column, 1u);
    }
}

TEST(Lexer, UnterminatedComment) { EXPECT_THROW(lex("class /* never closed"), LexError); }

TEST(Lexer, UnexpectedCharacter) { EXPECT_THROW(lex("class A { # }"), LexError); }

TEST(Lexer, CommentsAreTrivia) {
    EXPECT_EQ(kinds("// line\nclass /* block */ A"),
              (std::vector<TokenKind>{TokenKind::KwClass, TokenKind::Identifier, TokenKind::Eof}));
}

TEST(Lexer, SpansAreOneBased) {
    const auto toks = lex("class\n  Cow");
    EXPECT_EQ(toks[1].span.line, 2u);
    EXPECT_EQ(toks[1].span.column, 3u);
}

TEST(Lexer, CrLfAccepted) {
    const std::string src = "class A {\r\n}\r\n";
    const auto toks = lex(src);
    EXPECT_EQ(toks[3].kind, TokenKind::RBrace);
    EXPECT_EQ(toks[3].span.line, 2u);
    EXPECT_EQ(reconstruct(toks), src);
}

TEST(Lexer, FixturesReconstructExactly) {
    for (const std::string& name : testing::allFixtures()) {
        const std::string src = testing::readFile(testing::fixturePath(name));
        EXPECT_EQ(reconstruct(lex(src, name)), src) << name;
    }
}

TEST(Lexer, RandomTokenSoupReconstructs) {
    const std::vector<std::string> pieces{
        "class", "Animal", "{",  "}",  "(",  ")",  ";",  ".",  "==", "!=", "<=", ">=", "&&", "||", "!",
        "=",     "+",      "-",  "*",  "/",  "42", "\"s p\"", "Current", "test", "for", "resolve", "x1",
        " ",     "\n",     "\t", "// c\n", "/* c */", "\r\n"};
    std::mt19937 rng(7);
    for (int round = 0; round < 300; ++round) {
        std::string src;
        const int n = std::uniform_int_distribution<int>(0, 40)(rng);
        for (int i = 0; i < n; ++i) {
            src += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
            src += ' ';
        }
        const auto toks = lex(src);
        ASSERT_EQ(toks.back().kind, TokenKind::Eof);
        EXPECT_EQ(reconstruct(toks), src);
        for (const Token& t : toks) {
            EXPECT_LE(t.span.offset + t.span.length, src.size());
        }
    }
}

} // namespace
} // namespace tol::frontend
