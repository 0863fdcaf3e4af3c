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
#include "json.hpp"
#include "tol/report.hpp"

namespace tol::report {
namespace {

using namespace tol::testing;

struct Executed {
    driver::Compilation c;
    std::vector<runtime::TestOutcome> outcomes;
};

Executed run(const std::string& fixture) {
    Executed r{compileFixture(fixture), {}};
    if (r.c.ok())
        r.outcomes = runtime::runAll(*r.c.program, r.c.plan);
    return r;
}

TEST(Report, PlainAnimals) {
    const Executed r = run("animals.tol");
    EXPECT_EQ(render(r.c.program->model, r.outcomes, Format::Plain),
              "PASS Animal.TestNotNull\n"
              "PASS Mouse.TestNotNull\n"
              "FAIL Cow.TestNotNull\n"
              "PASS Cow.TestGrassColor\n"
              "3 passed, 1 failed, 0 errors\n");
}

TEST(Report, TapAnimals) {
    const Executed r = run("animals.tol");
    const std::string tap = render(r.c.program->model, r.outcomes, Format::Tap);
    EXPECT_EQ(tap.rfind("TAP version 14\n1..4\n", 0), 0u) << tap;
    EXPECT_NE(tap.find("ok 1 - Animal.TestNotNull\n"), std::string::npos);
    EXPECT_NE(tap.find("not ok 3 - Cow.TestNotNull\n"), std::string::npos);
    EXPECT_NE(tap.find("ok 4 - Cow.TestGrassColor\n"), std::string::npos);
    EXPECT_NE(tap.find("    line: 37\n    column: 9\n"), std::string::npos) << tap;
}

TEST(Report, EmptyRun) {
    const Executed r = run("dupname_moved.tol");
    EXPECT_EQ(render(r.c.program->model, {}, Format::Plain), "0 passed, 0 failed, 0 errors\n");
    EXPECT_EQ(render(r.c.program->model, {}, Format::Tap).rfind("TAP version 14\n1..0\n", 0), 0u);
    EXPECT_EQ(nlohmann::json::parse(render(r.c.program->model, {}, Format::Json)), nlohmann::json::array());
}

TEST(Report, JsonAllPass) {
    const Executed r = run("all_pass.tol");
    const auto doc = nlohmann::json::parse(render(r.c.program->model, r.outcomes, Format::Json));
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), r.outcomes.size());
    for (const auto& entry : doc)
        EXPECT_EQ(entry.at("status"), "pass");
    EXPECT_EQ(doc[0].at("name"), "shop.TestCounterPublicApi");
    EXPECT_TRUE(doc[0].at("class").is_null());
}

TEST(Report, JsonFailureCarriesLocation) {
    const Executed r = run("animals.tol");
    const auto doc = nlohmann::json::parse(render(r.c.program->model, r.outcomes, Format::Json));
    EXPECT_EQ(doc[2].at("status"), "fail");
    EXPECT_EQ(doc[2].at("class"), "Cow");
    EXPECT_EQ(doc[2].at("at").at("line"), 37);
    EXPECT_EQ(doc[2].at("at").at("column"), 9);
    EXPECT_EQ(doc[2].at("message"), "assertion failed");
}

TEST(Report, ErrorsCounted) {
    const Executed r = run("visibility.tol");
    const Counts n = count(r.outcomes);
    EXPECT_EQ(n.passed, 2u);
    EXPECT_EQ(n.failed, 0u);
    EXPECT_EQ(n.errors, 1u);
    EXPECT_EQ(summary(n), "2 passed, 0 failed, 1 errors");
    EXPECT_NE(failureDetails(r.c.program->model, r.outcomes).find("VisibilityViolation"), std::string::npos);
}

TEST(Report, ColourOnlyWhenAsked) {
    const Executed r = run("animals.tol");
    EXPECT_EQ(render(r.c.program->model, r.outcomes, Format::Plain).find('\x1b'), std::string::npos);
    EXPECT_NE(render(r.c.program->model, r.outcomes, Format::Plain, true).find('\x1b'), std::string::npos);
}

} // namespace
} // namespace tol::report
