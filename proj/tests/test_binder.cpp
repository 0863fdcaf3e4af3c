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
#include "tol/binder.hpp"
#include "tol/model_dump.hpp"

namespace tol::binder {
namespace {

using metamodel::Relation;
using namespace tol::testing;

std::vector<std::string> codes(const driver::Compilation& c) {
    std::vector<std::string> out;
    for (const auto& d : c.diagnostics)
        out.push_back(d.code);
    return out;
}

bool hasCode(const driver::Compilation& c, const std::string& code) {
    const auto all = codes(c);
    return std::find(all.begin(), all.end(), code) != all.end();
}

TEST(Binder, RedefinitionEdgesFollowTheHierarchy) {
    const auto c = compileFixture("animals.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    const auto cow = localMethod(m, "Cow", "lastFoodEaten");
    const auto animal = localMethod(m, "Animal", "lastFoodEaten");
    EXPECT_TRUE(m.contains(Relation::Redef, cow, animal));
    EXPECT_FALSE(m.contains(Relation::Redef, animal, cow));
    EXPECT_EQ(m.localProperty(cow).global, m.localProperty(animal).global);
    EXPECT_TRUE(m.contains(Relation::Belongs, cow, globalMethod(m, "Animal", "lastFoodEaten")));
}

TEST(Binder, FieldAndMethodWithSameNameAreDistinct) {
    const auto c = compileFixture("animals.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    const auto field = m.find(EntityKind::GlobalProperty, cls(m, "Animal"),
                              metamodel::propertyKey(metamodel::PropertyRole::Field, "lastFoodEaten"));
    ASSERT_TRUE(field);
    EXPECT_NE(*field, globalMethod(m, "Animal", "lastFoodEaten"));
}

TEST(Binder, TestsAttachToNearestLocal) {
    const auto c = compileFixture("animals.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    EXPECT_TRUE(m.contains(Relation::Has, localMethod(m, "Animal", "lastFoodEaten"), gtp(m, "Animal", "TestNotNull")));
    EXPECT_TRUE(m.contains(Relation::Has, localMethod(m, "Cow", "lastFoodEaten"), gtp(m, "Cow", "TestGrassColor")));
}

TEST(Binder, SameNamedTestRedefinesInheritedOne) {
    const auto c = compileFixture("testclash_conflict.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    EXPECT_TRUE(m.contains(Relation::Redef, ltp(m, "B", "Test1Add"), ltp(m, "A", "Test1Add")));
    EXPECT_TRUE(m.contains(Relation::Redef, ltp(m, "C", "Test1Add"), ltp(m, "A", "Test1Add")));
    EXPECT_EQ(m.localTest(ltp(m, "B", "Test1Add")).global, gtp(m, "A", "Test1Add"));
}

TEST(Binder, ClassTestRedefinition) {
    const auto c = compileText("class P { test T { } } class Q extends P { test T { } }");
    ASSERT_TRUE(c.ok());
    const Model& m = c.program->model;
    EXPECT_TRUE(m.contains(Relation::Redef, ltc(m, "Q", "T"), ltc(m, "P", "T")));
}

struct BadCase {
    const char* code;
    const char* text;
};

void PrintTo(const BadCase& c, std::ostream* os) { *os << c.code; }

class BindErrors : public ::testing::TestWithParam<BadCase> {};

TEST_P(BindErrors, Reported) {
    const auto c = compileText(GetParam().text);
    EXPECT_FALSE(c.ok());
    EXPECT_TRUE(hasCode(c, GetParam().code)) << ::testing::PrintToString(codes(c));
}

INSTANTIATE_TEST_SUITE_P(
    Cases, BindErrors,
    ::testing::Values(
        BadCase{"DuplicateClass", "class A { } class A { }"},
        BadCase{"UnknownParent", "class A extends Z { }"},
        BadCase{"DuplicateParent", "class A { } class B extends A, A { }"},
        BadCase{"CyclicInheritance", "class A extends B { } class B extends A { }"},
        BadCase{"DuplicateMember", "class A { int f() { return 1; } int f() { return 2; } }"},
        BadCase{"DuplicateConstructor", "class A { A() { } A() { } }"},
        BadCase{"MissingSuperCall", "class A { A(int x) { } } class B extends A { B() { } }"},
        BadCase{"DuplicateTest", "class A { test T { } test T { } }"},
        BadCase{"UnknownTestTarget", "class A { test T for nothing { } }"},
        BadCase{"UnknownClass", "class A { void f() { Object o = new Missing(); } }"},
        BadCase{"UnknownType", "class A { Missing m = null; }"},
        BadCase{"CurrentOutsideTest", "class A { A f() { return Current; } }"},
        BadCase{"CurrentNeedsNullaryCtor", "class A { A(int x) { } test T { assert(Current != null); } }"},
        BadCase{"MisplacedSuperCall", "class A { } class B extends A { void f() { super(); } }"},
        BadCase{"SignatureMismatch",
                "class A { int f(int x) { return x; } } class B extends A { int f() { return 1; } }"},
        BadCase{"FieldTypeMismatch", "class A { int v = 0; } class B extends A { bool v = true; }"}),
    [](const ::testing::TestParamInfo<BadCase>& info) { return std::string(info.param.code); });

TEST(TypeSafety, CovariantReturnAccepted) {
    const auto c = compileFixture("typesafe_covariant.tol");
    EXPECT_TRUE(c.ok()) << ::testing::PrintToString(codes(c));
}

TEST(TypeSafety, WidenedReturnRejected) {
    const auto c = compileFixture("typesafe_return_widened.tol");
    EXPECT_EQ(codes(c), std::vector<std::string>{"CovarianceViolation"});
}

TEST(TypeSafety, NarrowedParameterRejected) {
    const auto c = compileFixture("typesafe_param_narrowed.tol");
    EXPECT_EQ(codes(c), std::vector<std::string>{"ContravarianceViolation"});
}

TEST(TypeSafety, Subtyping) {
    const auto c = compileFixture("animals.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    EXPECT_TRUE(isSubtype(m, "Grass", "Food"));
    EXPECT_TRUE(isSubtype(m, "Food", "Food"));
    EXPECT_FALSE(isSubtype(m, "Food", "Grass"));
    EXPECT_TRUE(isSubtype(m, "int", "int"));
    EXPECT_FALSE(isSubtype(m, "int", "bool"));
}

TEST(Classification, AnimalsMethods) {
    const auto c = compileFixture("animals.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    const auto kinds = classifyMethods(*c.program);
    const auto g = globalMethod(m, "Animal", "lastFoodEaten");
    EXPECT_EQ(kinds.at({cls(m, "Animal"), g}), MethodKind::New);
    EXPECT_EQ(kinds.at({cls(m, "Mouse"), g}), MethodKind::Inherited);
    EXPECT_EQ(kinds.at({cls(m, "Cow"), g}), MethodKind::RedefNoSuper);
}

TEST(Classification, SuperCallMakesRedefWithSuper) {
    const auto c = compileFixture("all_pass.tol");
    ASSERT_TRUE(c.program);
    const Model& m = c.program->model;
    const auto kinds = classifyMethods(*c.program);
    EXPECT_EQ(kinds.at({cls(m, "StepCounter"), globalMethod(m, "Counter", "increment")}),
              MethodKind::RedefWithSuper);
    EXPECT_EQ(toString(MethodKind::RedefWithSuper), "RedefWithSuper");
}

TEST(Binder, DumpIsDeterministic) {
    for (const auto& name : allFixtures()) {
        const auto a = compileFixture(name);
        const auto b = compileFixture(name);
        EXPECT_EQ(dump::modelJson(a), dump::modelJson(b)) << name;
    }
}

TEST(Binder, PackagesMergeAcrossSources) {
    const auto c = driver::compile({driver::Source{"a.tol", "package p { class A { } }"},
                                    driver::Source{"b.tol", "package p { class B extends A { } }"}});
    ASSERT_TRUE(c.ok());
    const Model& m = c.program->model;
    EXPECT_EQ(m.size(EntityKind::Package), 1u);
    EXPECT_EQ(m.classEntry(cls(m, "B")).package, m.classEntry(cls(m, "A")).package);
}

} // namespace
} // namespace tol::binder
