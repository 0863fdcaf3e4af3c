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

#include "tol/parser.hpp"

#include <charconv>
#include <initializer_list>
#include <optional>

namespace tol::frontend {

using namespace tol::ast;

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
        if (toks_.empty() || toks_.back().kind != TokenKind::Eof)
            throw ParseError(Diagnostic{Severity::Error, "ParseError", "token stream is not terminated", {}},
                             {"end of input"});
    }

    Unit parseUnit() {
        Unit unit;
        unit.file = toks_.front().span.file;
        std::optional<std::size_t> implicitPkg;
        while (!at(TokenKind::Eof)) {
            if (at(TokenKind::KwPackage)) {
                unit.packages.push_back(parsePackage());
                continue;
            }
            if (!at(TokenKind::KwClass) && !at(TokenKind::KwTest))
                unexpected({"package", "class", "test"});
            if (!implicitPkg) {
                PackageDecl pkg;
                pkg.name = kDefaultPackage;
                pkg.implicit = true;
                pkg.span = cur().span;
                implicitPkg = unit.packages.size();
                unit.packages.push_back(std::move(pkg));
            }
            PackageItem item = parsePackageItem();
            unit.packages[*implicitPkg].items.push_back(std::move(item));
        }
        return unit;
    }

private:
    // --- token helpers -------------------------------------------------

    [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
    [[nodiscard]] const Token& ahead(std::size_t n) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    [[nodiscard]] bool at(TokenKind k) const { return cur().kind == k; }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != TokenKind::Eof)
            ++pos_;
        return t;
    }

    bool accept(TokenKind k) {
        if (!at(k))
            return false;
        take();
        return true;
    }

    const Token& expect(TokenKind k) {
        if (!at(k))
            unexpected({std::string(spelling(k))});
        return take();
    }

    [[noreturn]] void unexpected(std::initializer_list<std::string> expected) const {
        std::vector<std::string> exp(expected);
        std::string msg = "unexpected ";
        msg += at(TokenKind::Eof) ? std::string("end of input") : "'" + cur().lexeme + "'";
        msg += ", expected ";
        for (std::size_t i = 0; i < exp.size(); ++i) {
            if (i > 0)
                msg += i + 1 == exp.size() ? " or " : ", ";
            msg += "'" + exp[i] + "'";
        }
        throw ParseError(Diagnostic{Severity::Error, "ParseError", msg, cur().span}, std::move(exp));
    }

    [[noreturn]] void failAt(const Span& span, const std::string& message) const {
        throw ParseError(Diagnostic{Severity::Error, "ParseError", message, span}, {});
    }

    std::string identifier() { return expect(TokenKind::Identifier).lexeme; }

    // --- declarations ---------------------------------------------------

    PackageDecl parsePackage() {
        PackageDecl pkg;
        pkg.span = expect(TokenKind::KwPackage).span;
        pkg.name = identifier();
        expect(TokenKind::LBrace);
        while (!at(TokenKind::RBrace)) {
            if (!at(TokenKind::KwClass) && !at(TokenKind::KwTest))
                unexpected({"class", "test", "}"});
            pkg.items.push_back(parsePackageItem());
        }
        expect(TokenKind::RBrace);
        return pkg;
    }

    PackageItem parsePackageItem() {
        if (at(TokenKind::KwTest)) {
            TestDecl test = parseTest();
            if (test.target)
                failAt(test.targetSpan, "package tests cannot target a method");
            return test;
        }
        return parseClass();
    }

    ClassDecl parseClass() {
        ClassDecl cls;
        cls.span = expect(TokenKind::KwClass).span;
        cls.name = identifier();
        if (accept(TokenKind::KwExtends)) {
            do {
                const Token& t = expect(TokenKind::Identifier);
                cls.parents.push_back(ParentRef{t.lexeme, t.span});
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::LBrace);
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::Eof))
                unexpected({"}"});
            cls.members.push_back(parseMember(cls.name));
        }
        expect(TokenKind::RBrace);
        return cls;
    }

    Member parseMember(const std::string& className) {
        if (at(TokenKind::KwTest))
            return parseTest();
        if (at(TokenKind::KwResolve))
            return parseResolve();

        const Span start = cur().span;
        Visibility vis = Visibility::Public;
        if (accept(TokenKind::KwPrivate))
            vis = Visibility::Private;
        else
            accept(TokenKind::KwPublic);

        if (at(TokenKind::Identifier) && cur().lexeme == className &&
            ahead(1).kind == TokenKind::LParen) {
            CtorDecl ctor;
            ctor.visibility = vis;
            ctor.span = start;
            take();
            ctor.params = parseParams();
            ctor.body = parseBlock();
            return ctor;
        }

        TypeRef type = parseType(true);
        const Token& nameTok = expect(TokenKind::Identifier);
        if (at(TokenKind::LParen)) {
            MethodDecl m;
            m.visibility = vis;
            m.returnType = std::move(type);
            m.name = nameTok.lexeme;
            m.span = start;
            m.params = parseParams();
            m.body = parseBlock();
            return m;
        }
        if (type.kind == TypeRef::Kind::Void)
            failAt(type.span, "fields cannot have type 'void'");
        FieldDecl f;
        f.visibility = vis;
        f.type = std::move(type);
        f.name = nameTok.lexeme;
        f.span = start;
        if (accept(TokenKind::Assign))
            f.init = parseExpr();
        expect(TokenKind::Semicolon);
        return f;
    }

    TestDecl parseTest() {
        TestDecl test;
        test.span = expect(TokenKind::KwTest).span;
        test.name = identifier();
        if (accept(TokenKind::KwFor)) {
            const Token& t = expect(TokenKind::Identifier);
            test.target = t.lexeme;
            test.targetSpan = t.span;
        }
        test.body = parseBlock();
        return test;
    }

    QualifiedMember parseQualified() {
        QualifiedMember q;
        const Token& p = expect(TokenKind::Identifier);
        q.parent = p.lexeme;
        q.span = p.span;
        expect(TokenKind::Dot);
        q.member = identifier();
        return q;
    }

    // rename/select/unify/as are contextual words, not reserved.
    bool acceptWord(std::string_view word) {
        if (at(TokenKind::Identifier) && cur().lexeme == word) {
            take();
            return true;
        }
        return false;
    }

    ResolveDecl parseResolve() {
        ResolveDecl r;
        r.span = expect(TokenKind::KwResolve).span;
        r.subject = identifier();
        if (acceptWord("unify")) {
            r.strategy = ResolveStrategy::Unify;
        } else if (acceptWord("select")) {
            r.strategy = ResolveStrategy::Select;
            r.selection = parseQualified();
        } else if (acceptWord("rename")) {
            r.strategy = ResolveStrategy::Rename;
            do {
                RenameItem item;
                item.from = parseQualified();
                if (!acceptWord("as"))
                    unexpected({"as"});
                item.newName = identifier();
                r.renames.push_back(std::move(item));
            } while (accept(TokenKind::Comma));
        } else {
            unexpected({"rename", "select", "unify"});
        }
        expect(TokenKind::Semicolon);
        return r;
    }

    std::vector<Param> parseParams() {
        std::vector<Param> params;
        expect(TokenKind::LParen);
        if (!at(TokenKind::RParen)) {
            do {
                Param p;
                p.span = cur().span;
                p.type = parseType(false);
                p.name = identifier();
                params.push_back(std::move(p));
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        return params;
    }

    [[nodiscard]] bool atTypeStart() const {
        switch (cur().kind) {
        case TokenKind::KwInt:
        case TokenKind::KwBool:
        case TokenKind::KwString:
        case TokenKind::KwColor:
        case TokenKind::KwVoid:
        case TokenKind::Identifier:
            return true;
        default:
            return false;
        }
    }

    TypeRef parseType(bool allowVoid) {
        TypeRef t;
        t.span = cur().span;
        switch (cur().kind) {
        case TokenKind::KwInt: t.kind = TypeRef::Kind::Int; break;
        case TokenKind::KwBool: t.kind = TypeRef::Kind::Bool; break;
        case TokenKind::KwString: t.kind = TypeRef::Kind::String; break;
        case TokenKind::KwColor: t.kind = TypeRef::Kind::Color; break;
        case TokenKind::KwVoid:
            if (!allowVoid)
                failAt(t.span, "'void' is only valid as a return type");
            t.kind = TypeRef::Kind::Void;
            break;
        case TokenKind::Identifier:
            t.kind = TypeRef::Kind::Class;
            t.className = cur().lexeme;
            break;
        default:
            unexpected({"type"});
        }
        take();
        return t;
    }

    // --- statements -----------------------------------------------------

    Block parseBlock() {
        Block b;
        b.span = expect(TokenKind::LBrace).span;
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::Eof))
                unexpected({"}"});
            b.stmts.push_back(parseStmt());
        }
        expect(TokenKind::RBrace);
        return b;
    }

    Block parseBranch() {
        if (at(TokenKind::LBrace))
            return parseBlock();
        Block b;
        b.span = cur().span;
        b.stmts.push_back(parseStmt());
        return b;
    }

    static StmtPtr makeStmt(Stmt::Node node, Span span) {
        return std::make_unique<Stmt>(Stmt{std::move(node), std::move(span)});
    }

    StmtPtr parseStmt() {
        const Span span = cur().span;
        switch (cur().kind) {
        case TokenKind::LBrace:
            return makeStmt(BlockStmt{parseBlock()}, span);
        case TokenKind::KwIf: {
            take();
            expect(TokenKind::LParen);
            If node;
            node.cond = parseExpr();
            expect(TokenKind::RParen);
            node.thenBlock = parseBranch();
            if (accept(TokenKind::KwElse))
                node.elseBlock = parseBranch();
            return makeStmt(std::move(node), span);
        }
        case TokenKind::KwReturn: {
            take();
            Return node;
            if (!at(TokenKind::Semicolon))
                node.value = parseExpr();
            expect(TokenKind::Semicolon);
            return makeStmt(std::move(node), span);
        }
        case TokenKind::KwAssert: {
            take();
            expect(TokenKind::LParen);
            Assert node{parseExpr()};
            expect(TokenKind::RParen);
            expect(TokenKind::Semicolon);
            return makeStmt(std::move(node), span);
        }
        case TokenKind::KwPrint: {
            take();
            expect(TokenKind::LParen);
            Print node{parseExpr()};
            expect(TokenKind::RParen);
            expect(TokenKind::Semicolon);
            return makeStmt(std::move(node), span);
        }
        case TokenKind::KwSuper:
            if (ahead(1).kind == TokenKind::LParen) {
                take();
                SuperCtorCall node{parseArgs()};
                expect(TokenKind::Semicolon);
                return makeStmt(std::move(node), span);
            }
            break;
        default:
            break;
        }

        if (isDeclStart()) {
            VarDecl node;
            node.type = parseType(false);
            node.name = identifier();
            if (accept(TokenKind::Assign))
                node.init = parseExpr();
            expect(TokenKind::Semicolon);
            return makeStmt(std::move(node), span);
        }

        ExprPtr expr = parseExpr();
        if (accept(TokenKind::Assign)) {
            if (!std::holds_alternative<Name>(expr->node) && !std::holds_alternative<FieldAccess>(expr->node))
                failAt(expr->span, "left-hand side of assignment must be a variable or a field");
            ExprPtr value = parseExpr();
            expect(TokenKind::Semicolon);
            return makeStmt(Assign{std::move(expr), std::move(value)}, span);
        }
        expect(TokenKind::Semicolon);
        return makeStmt(ExprStmt{std::move(expr)}, span);
    }

    [[nodiscard]] bool isDeclStart() const {
        switch (cur().kind) {
        case TokenKind::KwInt:
        case TokenKind::KwBool:
        case TokenKind::KwString:
            return true;
        case TokenKind::KwColor:
        case TokenKind::Identifier:
            return ahead(1).kind == TokenKind::Identifier;
        default:
            return false;
        }
    }

    // --- expressions ----------------------------------------------------

    static ExprPtr makeExpr(Expr::Node node, Span span) {
        return std::make_unique<Expr>(Expr{std::move(node), std::move(span)});
    }

    ExprPtr parseExpr() { return parseOr(); }

    ExprPtr parseOr() {
        ExprPtr lhs = parseAnd();
        while (at(TokenKind::OrOr)) {
            const Span span = take().span;
            lhs = makeExpr(Binary{BinaryOp::Or, std::move(lhs), parseAnd()}, span);
        }
        return lhs;
    }

    ExprPtr parseAnd() {
        ExprPtr lhs = parseEquality();
        while (at(TokenKind::AndAnd)) {
            const Span span = take().span;
            lhs = makeExpr(Binary{BinaryOp::And, std::move(lhs), parseEquality()}, span);
        }
        return lhs;
    }

    ExprPtr parseEquality() {
        ExprPtr lhs = parseRelational();
        for (;;) {
            BinaryOp op;
            if (at(TokenKind::EqualEqual))
                op = BinaryOp::Eq;
            else if (at(TokenKind::NotEqual))
                op = BinaryOp::Ne;
            else
                return lhs;
            const Span span = take().span;
            lhs = makeExpr(Binary{op, std::move(lhs), parseRelational()}, span);
        }
    }

    ExprPtr parseRelational() {
        ExprPtr lhs = parseAdditive();
        for (;;) {
            if (at(TokenKind::KwInstanceof)) {
                const Span span = take().span;
                lhs = makeExpr(InstanceOf{std::move(lhs), identifier()}, span);
                continue;
            }
            BinaryOp op;
            switch (cur().kind) {
            case TokenKind::Less: op = BinaryOp::Lt; break;
            case TokenKind::Greater: op = BinaryOp::Gt; break;
            case TokenKind::LessEqual: op = BinaryOp::Le; break;
            case TokenKind::GreaterEqual: op = BinaryOp::Ge; break;
            default: return lhs;
            }
            const Span span = take().span;
            lhs = makeExpr(Binary{op, std::move(lhs), parseAdditive()}, span);
        }
    }

    ExprPtr parseAdditive() {
        ExprPtr lhs = parseMultiplicative();
        for (;;) {
            BinaryOp op;
            if (at(TokenKind::Plus))
                op = BinaryOp::Add;
            else if (at(TokenKind::Minus))
                op = BinaryOp::Sub;
            else
                return lhs;
            const Span span = take().span;
            lhs = makeExpr(Binary{op, std::move(lhs), parseMultiplicative()}, span);
        }
    }

    ExprPtr parseMultiplicative() {
        ExprPtr lhs = parseUnary();
        for (;;) {
            BinaryOp op;
            if (at(TokenKind::Star))
                op = BinaryOp::Mul;
            else if (at(TokenKind::Slash))
                op = BinaryOp::Div;
            else
                return lhs;
            const Span span = take().span;
            lhs = makeExpr(Binary{op, std::move(lhs), parseUnary()}, span);
        }
    }

    ExprPtr parseUnary() {
        if (at(TokenKind::Bang)) {
            const Span span = take().span;
            return makeExpr(Unary{UnaryOp::Not, parseUnary()}, span);
        }
        if (at(TokenKind::Minus)) {
            const Span span = take().span;
            return makeExpr(Unary{UnaryOp::Negate, parseUnary()}, span);
        }
        return parsePostfix();
    }

    std::vector<ExprPtr> parseArgs() {
        std::vector<ExprPtr> args;
        expect(TokenKind::LParen);
        if (!at(TokenKind::RParen)) {
            do {
                args.push_back(parseExpr());
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        return args;
    }

    ExprPtr parsePostfix() {
        ExprPtr e = parsePrimary();
        while (at(TokenKind::Dot)) {
            const Span span = take().span;
            std::string member = identifier();
            if (at(TokenKind::LParen))
                e = makeExpr(MethodCall{std::move(e), std::move(member), parseArgs()}, span);
            else
                e = makeExpr(FieldAccess{std::move(e), std::move(member)}, span);
        }
        return e;
    }

    ExprPtr parsePrimary() {
        const Token& t = cur();
        const Span span = t.span;
        switch (t.kind) {
        case TokenKind::IntLiteral: {
            std::int64_t v = 0;
            const auto* first = t.lexeme.data();
            const auto* last = first + t.lexeme.size();
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last)
                failAt(span, "integer literal out of range");
            take();
            return makeExpr(IntLit{v}, span);
        }
        case TokenKind::StringLiteral: {
            std::string value = unescape(t);
            take();
            return makeExpr(StringLit{std::move(value)}, span);
        }
        case TokenKind::KwTrue:
            take();
            return makeExpr(BoolLit{true}, span);
        case TokenKind::KwFalse:
            take();
            return makeExpr(BoolLit{false}, span);
        case TokenKind::KwNull:
            take();
            return makeExpr(NullLit{}, span);
        case TokenKind::KwColor: {
            take();
            expect(TokenKind::Dot);
            const Token& m = expect(TokenKind::Identifier);
            if (m.lexeme == "Red")
                return makeExpr(ColorLit{ColorValue::Red}, span);
            if (m.lexeme == "Green")
                return makeExpr(ColorLit{ColorValue::Green}, span);
            failAt(m.span, "unknown Color member '" + m.lexeme + "'");
        }
        case TokenKind::KwThis:
            take();
            return makeExpr(This{}, span);
        case TokenKind::KwCurrent:
            take();
            return makeExpr(CurrentRef{}, span);
        case TokenKind::KwSuper: {
            take();
            expect(TokenKind::Dot);
            std::string name = identifier();
            return makeExpr(SuperCall{std::move(name), parseArgs()}, span);
        }
        case TokenKind::KwNew: {
            take();
            std::string name = identifier();
            return makeExpr(NewObject{std::move(name), parseArgs()}, span);
        }
        case TokenKind::KwClassnameOf: {
            take();
            expect(TokenKind::LParen);
            ExprPtr operand = parseExpr();
            expect(TokenKind::RParen);
            return makeExpr(ClassNameOf{std::move(operand)}, span);
        }
        case TokenKind::LParen: {
            take();
            ExprPtr inner = parseExpr();
            expect(TokenKind::RParen);
            return inner;
        }
        case TokenKind::Identifier: {
            std::string name = t.lexeme;
            take();
            if (at(TokenKind::LParen))
                return makeExpr(MethodCall{nullptr, std::move(name), parseArgs()}, span);
            return makeExpr(Name{std::move(name)}, span);
        }
        default:
            unexpected({"expression"});
        }
    }

    std::string unescape(const Token& t) const {
        std::string out;
        const std::string& s = t.lexeme;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] != '\\') {
                out += s[i];
                continue;
            }
            ++i;
            switch (s[i]) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: failAt(t.span, std::string("unknown escape '\\") + s[i] + "'");
            }
        }
        return out;
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
};

} // namespace

Unit parse(const std::vector<Token>& tokens) { return Parser(tokens).parseUnit(); }

Unit parseSource(std::string_view source, std::string_view fileName) {
    Unit unit = parse(lex(source, fileName));
    unit.file = std::string(fileName);
    return unit;
}

} // namespace tol::frontend
