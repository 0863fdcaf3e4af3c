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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "lookup.hpp"
#include "oracle.hpp"
#include "random_model.hpp"
#include "tol/conflicts.hpp"
#include "tol/resolver.hpp"

using namespace tol;
using namespace tol::testing;
using Clock = std::chrono::steady_clock;

namespace {

/// Empty string means the criterion holds.
using Check = std::function<std::string()>;

double secondsSince(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::string goldenTrace() {
    const auto t0 = Clock::now();
    const auto r = runTol("test --format json " + fixturePath("animals.tol"));
    const double elapsed = secondsSince(t0);
    if (r.exitCode != 1)
        return "exit code " + std::to_string(r.exitCode);
    const auto doc = nlohmann::json::parse(r.out);
    std::vector<std::string> trace;
    std::vector<std::string> statuses;
    for (const auto& entry : doc) {
        statuses.push_back(entry.at("name").get<std::string>() + "=" + entry.at("status").get<std::string>());
        for (const auto& line : entry.at("output"))
            trace.push_back(line.get<std::string>());
    }
    if (trace != lines(readFile(fixturePath("animals.trace"))))
        return "captured output differs from golden trace";
    const std::vector<std::string> expected{"Animal.TestNotNull=pass", "Mouse.TestNotNull=pass",
                                            "Cow.TestNotNull=fail", "Cow.TestGrassColor=pass"};
    if (statuses != expected)
        return "unexpected statuses";
    if (elapsed >= 1.0)
        return "took " + std::to_string(elapsed) + " s";
    return {};
}

std::string planShape() {
    const auto c = compileFixture("animals.tol");
    if (!c.ok())
        return "animals.tol does not compile";
    const Model& m = c.program->model;
    const std::vector<std::pair<std::string, std::string>> expected{
        {"Animal", "TestNotNull"}, {"Mouse", "TestNotNull"}, {"Cow", "TestNotNull"}, {"Cow", "TestGrassColor"}};
    if (c.plan.steps.size() != expected.size())
        return std::to_string(c.plan.steps.size()) + " steps";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& s = c.plan.steps[i];
        if (s.kind != resolver::PlanStep::Kind::PropertyTest || !s.executingClass ||
            m.classEntry(*s.executingClass).name != expected[i].first ||
            m.localTest(s.test).name != expected[i].second)
            return "step " + std::to_string(i + 1) + " differs";
    }
    return {};
}

std::string conflictFixtures() {
    const std::vector<std::pair<std::string, conflicts::ConflictKind>> bad{
        {"dupname_conflict.tol", conflicts::ConflictKind::DuplicateGtpName},
        {"methodclash_conflict.tol", conflicts::ConflictKind::MethodClashMultipleInheritance},
        {"testclash_conflict.tol", conflicts::ConflictKind::LtpClashMultipleInheritance}};
    for (const auto& [name, kind] : bad) {
        const auto c = compileFixture(name);
        if (c.conflicts.size() != 1 || c.conflicts[0].kind != kind || !c.diagnostics.empty())
            return name + ": expected exactly one " + std::string(conflicts::toString(kind));
    }
    for (const char* name : {"dupname_factorized.tol", "dupname_redefined.tol", "dupname_moved.tol", "methodclash_unify.tol",
                             "methodclash_select.tol", "methodclash_rename.tol", "testclash_unify.tol", "testclash_select.tol",
                             "testclash_rename.tol"}) {
        if (!compileFixture(name).ok())
            return std::string(name) + " is not conflict-free";
    }
    const auto c = compileFixture("methodclash_unify.tol");
    const Model& m = c.program->model;
    const auto set = oracle::toSet(
        resolver::globalTestProperties(m, cls(m, "D"), globalMethod(m, "A", "add")));
    if (!set.count(gtp(m, "B", "Test2Add")) || !set.count(gtp(m, "C", "Test3Add")))
        return "GTP(D, add) lacks a parent's test";
    return {};
}

constexpr unsigned kModels = 600;

gen::Shape criterionShape() {
    gen::Shape s;
    s.maxClasses = 10;
    s.maxParents = 3;
    s.maxTestsPerProperty = 3;
    return s;
}

std::string oracleEquivalence() {
    const auto t0 = Clock::now();
    std::size_t mismatches = 0;
    for (unsigned seed = 0; seed < kModels; ++seed) {
        const Model m = gen::Generator(seed).make(criterionShape());
        const oracle::Oracle o(m.data());
        const auto sets = resolver::resolve(m);
        for (const auto& k : m.ids(metamodel::EntityKind::Class)) {
            const auto& cs = sets.perClass.at(k);
            mismatches += oracle::toSet(resolver::globalPropertiesOf(m, k)) != o.globals(k);
            mismatches += oracle::toSet(cs.gtcSet) != o.gtc(k) || cs.gtcSet.size() != o.gtc(k).size();
            mismatches += oracle::toSet(cs.ltcSet) != o.ltc(k) || cs.ltcSet.size() != o.ltc(k).size();
            for (const auto& g : resolver::globalPropertiesOf(m, k)) {
                const auto& ps = sets.perGlobalProperty.at({k, g});
                mismatches += oracle::toSet(ps.localProps) != o.locals(k, g);
                mismatches += oracle::toSet(ps.gtpSet) != o.gtp(k, g);
                mismatches += oracle::toSet(ps.introducedGtpSet) != o.igtp(k, g);
                for (const auto& t : ps.gtpSet) {
                    const auto& l = ps.ltpPerGtp.at(t);
                    mismatches += oracle::toSet(l) != o.ltp(k, t) || l.size() != o.ltp(k, t).size();
                }
            }
        }
    }
    const double elapsed = secondsSince(t0);
    if (mismatches != 0)
        return std::to_string(mismatches) + " mismatches";
    if (elapsed >= 60.0)
        return "took " + std::to_string(elapsed) + " s";
    return {};
}

std::string redefinitionFiltering() {
    for (unsigned seed = 0; seed < kModels; ++seed) {
        const Model m = gen::Generator(seed).make(criterionShape());
        const auto sets = resolver::resolve(m);
        auto clean = [&](const std::vector<metamodel::EntityId>& s) {
            for (const auto& a : s) {
                for (const auto& b : s) {
                    if (m.contains(metamodel::Relation::Redef, a, b))
                        return false;
                }
            }
            return true;
        };
        for (const auto& [k, cs] : sets.perClass) {
            if (!clean(cs.ltcSet))
                return "LTC of seed " + std::to_string(seed);
        }
        for (const auto& [key, ps] : sets.perGlobalProperty) {
            for (const auto& [t, l] : ps.ltpPerGtp) {
                if (!clean(l))
                    return "LTP of seed " + std::to_string(seed);
            }
        }
    }
    return {};
}

std::string typeSafety() {
    if (!compileFixture("typesafe_covariant.tol").ok())
        return "covariant fixture rejected";
    for (const auto& [name, code] : std::vector<std::pair<std::string, std::string>>{
             {"typesafe_return_widened.tol", "CovarianceViolation"},
             {"typesafe_param_narrowed.tol", "ContravarianceViolation"}}) {
        const auto c = compileFixture(name);
        if (c.diagnostics.size() != 1 || c.diagnostics[0].code != code)
            return name + ": expected exactly one " + code;
    }
    return {};
}

std::string determinism() {
    for (const auto& name : allFixtures()) {
        const std::string path = fixturePath(name);
        if (runTol("model --json " + path).out != runTol("model --json " + path).out)
            return "model dump of " + name;
        const auto a = runTol("test " + path, true);
        const auto b = runTol("test " + path, true);
        if (a.out != b.out || a.exitCode != b.exitCode)
            return "test report of " + name;
    }
    return {};
}

std::string exitCodes() {
    const std::vector<std::pair<std::string, int>> expected{
        {"all_pass.tol", 0}, {"animals.tol", 1}, {"dupname_conflict.tol", 2}, {"methodclash_conflict.tol", 2},
        {"testclash_conflict.tol", 2}};
    for (const auto& [name, code] : expected) {
        const int got = runTol("test " + fixturePath(name)).exitCode;
        if (got != code)
            return name + " exited " + std::to_string(got);
    }
    return {};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Check>> criteria{
        {"golden trace of animals.tol", goldenTrace},
        {"execution plan shape", planShape},
        {"conflict fixtures and their resolutions", conflictFixtures},
        {"resolver matches oracle on " + std::to_string(kModels) + " random models", oracleEquivalence},
        {"no redefined pair in effective sets", redefinitionFiltering},
        {"type-safety fixtures", typeSafety},
        {"deterministic dumps and reports", determinism},
        {"CLI exit codes", exitCodes},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string why;
        try {
            why = criteria[i].second();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::cout << (why.empty() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        if (!why.empty()) {
            std::cout << " (" << why << ")";
            ++failed;
        }
        std::cout << "\n";
    }
    return failed == 0 ? 0 : 1;
}
