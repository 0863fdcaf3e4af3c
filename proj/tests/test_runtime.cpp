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

#include "fixtures.hpp"
#include "lookup.hpp"
#include "tol/runtime.hpp"

namespace tol::runtime {
namespace {

using namespace tol::testing;

std::vector<TestOutcome> runFixture(const driver::Compilation& c, RunOptions opts = {}) {
    EXPECT_TRUE(c.ok());
    return runAll(*c.program, c.plan, opts);
}

std::vector<std::string> trace(const std::vector<TestOutcome>& outcomes) {
    std::vector<std::string> out;
    for (const auto& o : outcomes)
        out.insert(out.end(), o.capturedOutput.begin(), o.capturedOutput.end());
    return out;
}

// Expression returned by the single method `name` of class `owner`.
const ast::Expr& returnedExpr(const binder::Program& p, const std::string& owner, const std::string& name) {
    for (const auto& unit : p.units) {
        for (const auto& pkg : unit->packages) {
            for (const auto& item : pkg.items) {
                const auto* cd = std::get_if<ast::ClassDecl>(&item);
                if (cd == nullptr || cd->name != owner)
                    continue;
                for (const auto& member : cd->members) {
                    const auto* md = std::get_if<ast::MethodDecl>(&member);
                    if (md != nullptr && md->name == name)
                        return *std::get<ast::Return>(md->body.stmts.front()->node).value;
                }
            }
        }
    }
    throw std::runtime_error("no method " + owner + "." + name);
}

TEST(Runtime, AnimalsOutputPerStep) {
    const auto c = compileFixture("animals.tol");
    const auto out = runFixture(c);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].capturedOutput, (std::vector<std::string>{"Animal.lastFoodEaten() v1", "Animal.TestNotNull"}));
    EXPECT_EQ(out[1].capturedOutput, (std::vector<std::string>{"Mouse.lastFoodEaten() v1", "Mouse.TestNotNull"}));
    EXPECT_EQ(out[2].capturedOutput, std::vector<std::string>{"Cow.lastFoodEaten() v2"});
    EXPECT_EQ(out[3].capturedOutput, (std::vector<std::string>{"Cow.lastFoodEaten() v2", "Cow.TestGrassColor"}));
    EXPECT_EQ(out[0].status, Status::Pass);
    EXPECT_EQ(out[1].status, Status::Pass);
    EXPECT_EQ(out[2].status, Status::Fail);
    EXPECT_EQ(out[3].status, Status::Pass);
    ASSERT_TRUE(out[2].failedAssertSpan);
    EXPECT_EQ(out[2].failedAssertSpan->line, 37u);
    EXPECT_EQ(outcomeName(c.program->model, out[2]), "Cow.TestNotNull");
}

TEST(Runtime, EvaluateInstanceOf) {
    auto c = driver::compile({driver::Source{"animals.tol", readFile(fixturePath("animals.tol"))},
                              driver::Source{"probe.tol", R"(
        class Probe {
            bool isFood() { return new Grass() instanceof Food; }
            bool isGrass() { return new Food(Color.Red) instanceof Grass; }
            string name() { return classnameOf(new Grass()); }
            int arith() { return 2 + 3 * 4 - 10 / 5; }
            Color colour() { return Color.Green; }
        }
    )"}});
    ASSERT_TRUE(c.program);
    const auto& p = *c.program;
    EXPECT_EQ(evaluate(p, returnedExpr(p, "Probe", "isFood")), Value{true});
    EXPECT_EQ(evaluate(p, returnedExpr(p, "Probe", "isGrass")), Value{false});
    EXPECT_EQ(evaluate(p, returnedExpr(p, "Probe", "name")), Value{std::string("Grass")});
    EXPECT_EQ(evaluate(p, returnedExpr(p, "Probe", "arith")), Value{std::int64_t{12}});
    EXPECT_EQ(show(p.model, evaluate(p, returnedExpr(p, "Probe", "colour"))), "Color.Green");
}

TestOutcome single(const std::string& text) {
    const auto c = compileText(text);
    EXPECT_TRUE(c.ok());
    if (!c.ok())
        return {};
    const auto out = runAll(*c.program, c.plan);
    EXPECT_EQ(out.size(), 1u);
    return out.empty() ? TestOutcome{} : out.front();
}

TEST(Runtime, NullDereference) {
    const auto o = single(R"(
        class A { int f() { return 1; } }
        package p { test T { A a = null; assert(a.f() == 1); } }
    )");
    EXPECT_EQ(o.status, Status::RuntimeError);
    EXPECT_EQ(o.errorCode, "NullDereference");
}

TEST(Runtime, DivisionByZero) {
    const auto o = single("package p { test T { int z = 0; assert(1 / z == 0); } }");
    EXPECT_EQ(o.status, Status::RuntimeError);
    EXPECT_EQ(o.errorCode, "DivisionByZero");
}

TEST(Runtime, StackOverflow) {
    const auto o = single("class A { int f(int n) { return f(n + 1); } test T { assert(Current.f(0) == 0); } }");
    EXPECT_EQ(o.status, Status::RuntimeError);
    EXPECT_EQ(o.errorCode, "StackOverflow");
}

TEST(Runtime, PackageTestsAreBlackBox) {
    const auto c = compileFixture("visibility.tol");
    const auto out = runFixture(c);
    ASSERT_EQ(out.size(), 3u);
    std::map<std::string, TestOutcome> by;
    for (const auto& o : out)
        by[outcomeName(c.program->model, o)] = o;
    EXPECT_EQ(by.at("vault.TestPeek").status, Status::RuntimeError);
    EXPECT_EQ(by.at("vault.TestPeek").errorCode, "VisibilityViolation");
    EXPECT_EQ(by.at("vault.TestPublic").status, Status::Pass);
    EXPECT_EQ(by.at("Safe.TestWhiteBox").status, Status::Pass);
}

TEST(Runtime, FailureDoesNotStopLaterSteps) {
    const auto c = compileText("class A { test T1 { assert(false); } test T2 { assert(true); } }");
    const auto out = runFixture(c);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].status, Status::Fail);
    EXPECT_EQ(out[1].status, Status::Pass);
}

TEST(Runtime, FailFastStopsAtFirstFailure) {
    const auto c = compileText("class A { test T1 { assert(false); } test T2 { assert(true); } }");
    const auto out = runFixture(c, RunOptions{true});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].status, Status::Fail);
}

TEST(Runtime, StepsDoNotShareState) {
    const auto c = compileText(R"(
        class A {
            private int n = 0;
            test T1 { Current.n = 5; assert(Current.n == 5); }
            test T2 { assert(Current.n == 0); }
        }
    )");
    const auto out = runFixture(c);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].status, Status::Pass);
    EXPECT_EQ(out[1].status, Status::Pass);
}

TEST(Runtime, DynamicDispatchUsesExecutingClass) {
    const auto c = compileText(R"(
        class A {
            int v() { return 1; }
            test T for v { print(Current.v()); }
        }
        class B extends A { int v() { return 2; } }
    )");
    const auto out = runFixture(c);
    EXPECT_EQ(trace(out), (std::vector<std::string>{"1", "2"}));
}

TEST(Runtime, SuperCallReachesParent) {
    const auto c = compileFixture("all_pass.tol");
    const auto out = runFixture(c);
    for (const auto& o : out)
        EXPECT_EQ(o.status, Status::Pass) << outcomeName(c.program->model, o) << ": " << o.message;
    const auto lines = trace(out);
    EXPECT_NE(std::find(lines.begin(), lines.end(), "StepCounter steps by 2"), lines.end());
}

TEST(Runtime, ObjectsPrintWithClassAndNumber) {
    const auto c = compileText("class A { test T { print(new A()); print(null); print(true); } }");
    const auto out = runFixture(c);
    ASSERT_EQ(out.size(), 1u);
    ASSERT_EQ(out[0].capturedOutput.size(), 3u);
    EXPECT_EQ(out[0].capturedOutput[0].rfind("A#", 0), 0u);
    EXPECT_EQ(out[0].capturedOutput[1], "null");
    EXPECT_EQ(out[0].capturedOutput[2], "true");
}

TEST(Runtime, RenamedBranchesKeepTheirBehaviour) {
    const auto c = compileFixture("methodclash_rename.tol");
    const auto out = runFixture(c);
    for (const auto& o : out)
        EXPECT_EQ(o.status, Status::Pass) << outcomeName(c.program->model, o) << ": " << o.message;
}

} // namespace
} // namespace tol::runtime
