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

/// @file runtime.hpp
/// Tree-walking interpreter and the test executor.
///
/// Every plan step gets its own heap. Property and class tests run against
/// `Current`, a fresh instance of the executing class built with the
/// nullary constructor; they see private members (white box). Package
/// tests see public members only.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tol/ast.hpp"
#include "tol/binder.hpp"
#include "tol/resolver.hpp"

namespace tol::runtime {

using metamodel::EntityId;

struct Null {
    bool operator==(const Null&) const = default;
};

struct ObjectRef {
    std::uint32_t index = 0;
    EntityId cls; // dynamic class

    bool operator==(const ObjectRef&) const = default;
};

using Value = std::variant<Null, std::int64_t, bool, std::string, ast::ColorValue, ObjectRef>;

/// Text produced by print(): strings verbatim, `null`, `true`, `Color.Red`,
/// objects as `<Class>#<n>`.
std::string show(const metamodel::Model& model, const Value& v);

class RuntimeError : public std::runtime_error {
public:
    RuntimeError(std::string code, const std::string& message, Span span)
        : std::runtime_error(message), code_(std::move(code)), span_(std::move(span)) {}

    [[nodiscard]] const std::string& code() const { return code_; }
    [[nodiscard]] const Span& span() const { return span_; }

private:
    std::string code_;
    Span span_;
};

enum class Status { Pass, Fail, RuntimeError };

std::string_view toString(Status status);

struct TestOutcome {
    EntityId test;
    std::optional<EntityId> executingClass;
    Status status = Status::Pass;
    std::optional<Span> failedAssertSpan;
    std::vector<std::string> capturedOutput;
    std::int64_t durationMs = 0;
    /// Error code and message for RuntimeError outcomes.
    std::string errorCode;
    std::string message;
    std::optional<Span> errorSpan;
};

/// `<Class>.<Test>` for class and property tests, `<package>.<Test>` for
/// package tests.
std::string outcomeName(const metamodel::Model& model, const TestOutcome& outcome);

/// Evaluates a standalone expression with no `this` and no `Current`, in a
/// fresh heap. Throws RuntimeError.
Value evaluate(const binder::Program& program, const ast::Expr& expr);

TestOutcome runTest(const binder::Program& program, const resolver::PlanStep& step);

struct RunOptions {
    bool failFast = false;
};

/// Outcomes in plan order. With failFast, stops after the first outcome that
/// is not Pass.
std::vector<TestOutcome> runAll(const binder::Program& program, const resolver::ExecutionPlan& plan,
                                const RunOptions& options = {});

} // namespace tol::runtime
