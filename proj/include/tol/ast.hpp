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

/// @file ast.hpp
/// Syntax tree of a TOL compilation unit.
///
/// A unit is a list of packages; each package holds package-level test
/// blocks and classes. Classes hold, in source order, fields, methods, at
/// most one constructor, test blocks (property tests carry a `for` target,
/// class tests do not) and `resolve` clauses. Every node records the span it
/// was parsed from. Trees are move-only and treated as immutable once the
/// parser returns them.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tol/diagnostics.hpp"

namespace tol::ast {

enum class ColorValue { Red, Green };

enum class Visibility { Public, Private };

struct TypeRef {
    enum class Kind { Int, Bool, String, Color, Void, Class };
    Kind kind = Kind::Void;
    std::string className; // Kind::Class only
    Span span;

    [[nodiscard]] std::string str() const;
};

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

struct IntLit {
    std::int64_t value = 0;
};
struct StringLit {
    std::string value;
};
struct BoolLit {
    bool value = false;
};
struct NullLit {};
struct ColorLit {
    ColorValue value = ColorValue::Red;
};
/// A bare identifier: local variable, parameter, or a field of `this`.
struct Name {
    std::string id;
};
struct This {};
struct CurrentRef {};
struct FieldAccess {
    ExprPtr object;
    std::string field;
};
/// `receiver.m(args)`, or `m(args)` on the implicit `this` when receiver is null.
struct MethodCall {
    ExprPtr receiver;
    std::string method;
    std::vector<ExprPtr> args;
};
struct SuperCall {
    std::string method;
    std::vector<ExprPtr> args;
};
struct NewObject {
    std::string className;
    std::vector<ExprPtr> args;
};
struct ClassNameOf {
    ExprPtr operand;
};
struct InstanceOf {
    ExprPtr operand;
    std::string className;
};

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Gt, Le, Ge, And, Or };

struct Unary {
    UnaryOp op = UnaryOp::Not;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op = BinaryOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Expr {
    using Node = std::variant<IntLit, StringLit, BoolLit, NullLit, ColorLit, Name, This, CurrentRef,
                              FieldAccess, MethodCall, SuperCall, NewObject, ClassNameOf, InstanceOf,
                              Unary, Binary>;
    Node node;
    Span span;
};

struct Block {
    std::vector<StmtPtr> stmts;
    Span span;
};

struct VarDecl {
    TypeRef type;
    std::string name;
    ExprPtr init; // may be null
};
/// Target is a Name or a FieldAccess.
struct Assign {
    ExprPtr target;
    ExprPtr value;
};
struct ExprStmt {
    ExprPtr expr;
};
/// Both branches are blocks; a single statement is wrapped during parsing.
struct If {
    ExprPtr cond;
    Block thenBlock;
    std::optional<Block> elseBlock;
};
struct Return {
    ExprPtr value; // may be null
};
struct Assert {
    ExprPtr cond;
};
struct Print {
    ExprPtr value;
};
struct BlockStmt {
    Block block;
};
/// `super(args);`, only meaningful as the first statement of a constructor.
struct SuperCtorCall {
    std::vector<ExprPtr> args;
};

struct Stmt {
    using Node =
        std::variant<VarDecl, Assign, ExprStmt, If, Return, Assert, Print, BlockStmt, SuperCtorCall>;
    Node node;
    Span span;
};

struct Param {
    TypeRef type;
    std::string name;
    Span span;
};

struct FieldDecl {
    Visibility visibility = Visibility::Public;
    TypeRef type;
    std::string name;
    ExprPtr init; // may be null
    Span span;
};

struct MethodDecl {
    Visibility visibility = Visibility::Public;
    TypeRef returnType;
    std::string name;
    std::vector<Param> params;
    Block body;
    Span span;
};

struct CtorDecl {
    Visibility visibility = Visibility::Public;
    std::vector<Param> params;
    Block body;
    Span span;
};

/// `test Name for method { ... }` (property test) or `test Name { ... }`
/// (class test inside a class, package test at package level).
struct TestDecl {
    std::string name;
    std::optional<std::string> target;
    Span targetSpan;
    Block body;
    Span span;
};

enum class ResolveStrategy { Rename, Select, Unify };

struct QualifiedMember {
    std::string parent;
    std::string member;
    Span span;
};

struct RenameItem {
    QualifiedMember from;
    std::string newName;
};

/// `resolve add rename B.add as addB, C.add as addC;`
/// `resolve add select B.add;`
/// `resolve add unify;`
struct ResolveDecl {
    std::string subject;
    ResolveStrategy strategy = ResolveStrategy::Unify;
    std::vector<RenameItem> renames;
    std::optional<QualifiedMember> selection;
    Span span;
};

using Member = std::variant<FieldDecl, MethodDecl, CtorDecl, TestDecl, ResolveDecl>;

struct ParentRef {
    std::string name;
    Span span;
};

struct ClassDecl {
    std::string name;
    std::vector<ParentRef> parents;
    std::vector<Member> members;
    Span span;
};

using PackageItem = std::variant<TestDecl, ClassDecl>;

struct PackageDecl {
    std::string name;
    /// Items written at file level, outside any `package` block.
    bool implicit = false;
    std::vector<PackageItem> items;
    Span span;
};

inline constexpr const char* kDefaultPackage = "default";

struct Unit {
    std::string file;
    std::vector<PackageDecl> packages;
};

} // namespace tol::ast
