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

/// @file conflicts.hpp
/// Name-conflict detection over resolved test sets, and the rename / select /
/// unify rewrites that settle multiple-inheritance clashes.
///
/// Three shapes are detected:
///   - DuplicateGtpName: one GTP(c, g) set holds two distinct global test
///     properties with the same name. Reported once per (g, name, candidates)
///     at the first class in declaration order where it shows up.
///   - MethodClashMultipleInheritance: a class with two or more parents that
///     each bring a different, mutually non-redefining local of the same
///     global property.
///   - LtpClashMultipleInheritance: a class with two or more parents that
///     each bring a different effective local test of the same global test
///     property, while the class itself does not redefine that test.
///
/// A resolved (site, subject) pair is never reported again.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tol/diagnostics.hpp"
#include "tol/metamodel.hpp"
#include "tol/resolver.hpp"

namespace tol::conflicts {

using metamodel::EntityId;
using metamodel::Model;

enum class ConflictKind { DuplicateGtpName, MethodClashMultipleInheritance, LtpClashMultipleInheritance };

std::string_view toString(ConflictKind kind);

struct ConflictDiagnostic {
    ConflictKind kind = ConflictKind::DuplicateGtpName;
    EntityId site;
    std::string subject;
    std::vector<EntityId> candidates;
    std::vector<std::string> remedies;

    bool operator==(const ConflictDiagnostic&) const = default;
};

/// `conflict[<kind>] at <class>: '<subject>' candidates: <a>, <b>; remedies: 1) ... 2) ...`
std::string format(const Model& model, const ConflictDiagnostic& diag);

enum class Strategy { Rename, Select, Unify };

std::string_view toString(Strategy strategy);

struct QualifiedChoice {
    EntityId parent; // class named before the dot
    std::string member;

    bool operator==(const QualifiedChoice&) const = default;
};

struct RenameEntry {
    QualifiedChoice from;
    std::string newName;

    bool operator==(const RenameEntry&) const = default;
};

struct Resolution {
    Strategy strategy = Strategy::Unify;
    EntityId site;
    std::string subject;
    std::vector<RenameEntry> renames;        // Rename
    std::optional<QualifiedChoice> selection; // Select
    Span span;

    bool operator==(const Resolution&) const = default;
};

class ResolutionError : public std::runtime_error {
public:
    enum class Code { UnmatchedResolution, InvalidSelection, IncompleteRename };

    ResolutionError(Code code, const std::string& message, Span span)
        : std::runtime_error(message), code_(code), span_(std::move(span)) {}

    [[nodiscard]] Code code() const { return code_; }
    [[nodiscard]] const Span& span() const { return span_; }

private:
    Code code_;
    Span span_;
};

std::string_view toString(ResolutionError::Code code);

std::vector<ConflictDiagnostic> detectConflicts(const Model& model, const resolver::ResolvedTestSets& sets);

/// Rewrites the model so that each resolution's conflict disappears:
///   Rename  each clashing branch gets a fresh global entity in the site
///           class under its new name; the branch's tests follow it.
///   Select  the chosen branch's entity is bound at the site and only that
///           branch's tests stay associated there.
///   Unify   every branch's tests are associated to the site's redefinition.
/// Only the site class and its descendants see different test sets.
Model applyResolution(const Model& model, const std::vector<Resolution>& resolutions);

} // namespace tol::conflicts
