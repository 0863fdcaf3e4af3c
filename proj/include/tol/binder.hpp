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

/// @file binder.hpp
/// Turns parsed units into a sealed metamodel plus the side tables the
/// interpreter needs (method and test bodies, field initializers,
/// constructors).
///
/// Members with the same (name, role) along the hierarchy join one global
/// property; a redefinition gets redef edges to the nearest inherited
/// locals. A property test is attached (has) to the nearest local of its
/// target method. A test reusing the name of an inherited test on the same
/// target redefines it.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tol/ast.hpp"
#include "tol/conflicts.hpp"
#include "tol/diagnostics.hpp"
#include "tol/metamodel.hpp"

namespace tol::binder {

using metamodel::EntityId;
using metamodel::Model;

/// A method or test block referenced by a BodyRef.
struct Body {
    enum class Kind { Method, Test };
    Kind kind = Kind::Method;
    const ast::MethodDecl* method = nullptr;
    const ast::TestDecl* test = nullptr;
    /// Class whose source text contains the body (package for package tests).
    EntityId scope;
};

struct ClassInfo {
    const ast::ClassDecl* decl = nullptr;
    const ast::CtorDecl* ctor = nullptr; // null: implicit nullary constructor
};

struct Program {
    std::vector<std::shared_ptr<const ast::Unit>> units;
    Model model;
    std::vector<Body> bodies; // indexed by BodyRef
    std::map<EntityId, ClassInfo> classes;
    /// Local field property -> its declaration.
    std::map<EntityId, const ast::FieldDecl*> fields;
    std::vector<conflicts::Resolution> resolutions;

    [[nodiscard]] const Body& body(metamodel::BodyRef ref) const { return bodies.at(ref); }
};

struct BindResult {
    std::shared_ptr<Program> program; // null when an error was reported
    std::vector<Diagnostic> diagnostics;
};

/// All units form one compilation: a single class namespace, and packages
/// with the same name merge.
BindResult bind(std::vector<std::shared_ptr<const ast::Unit>> units);

/// Redefinition rules for methods: covariant return type, contravariant
/// parameter types, same arity. Redefined fields keep their declared type.
std::vector<Diagnostic> checkTypeSafety(const Program& program);

/// True when `sub` names the same type as `super` or a subclass of it.
bool isSubtype(const Model& model, const std::string& sub, const std::string& super);

enum class MethodKind { Inherited, RedefNoSuper, RedefWithSuper, New };

std::string_view toString(MethodKind kind);

/// Per (class, global method property) in G_c.
std::map<std::pair<EntityId, EntityId>, MethodKind> classifyMethods(const Program& program);

} // namespace tol::binder
