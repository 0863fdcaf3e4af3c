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

// tol check|test|model <files...> [--format plain|tap|json] [--fail-fast] [--json]
//
// Exit status: 0 success, 1 a test failed or errored, 2 compile error,
// conflict or bad usage.

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tol/driver.hpp"
#include "tol/model_dump.hpp"
#include "tol/report.hpp"
#include "tol/runtime.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kTestsFailed = 1;
constexpr int kCompileError = 2;

void printErrors(const tol::driver::Compilation& c) {
    for (const std::string& line : tol::driver::errorLines(c))
        std::cerr << line << "\n";
}

int runCheck(const std::vector<std::string>& files) {
    const auto c = tol::driver::compileFiles(files);
    printErrors(c);
    if (!c.ok())
        return kCompileError;
    std::cout << "ok: " << c.program->model.size(tol::metamodel::EntityKind::Class) << " classes, "
              << c.plan.steps.size() << " planned tests\n";
    return kOk;
}

int runTests(const std::vector<std::string>& files, tol::report::Format format, bool failFast) {
    const auto c = tol::driver::compileFiles(files);
    printErrors(c);
    if (!c.ok())
        return kCompileError;
    const auto outcomes = tol::runtime::runAll(*c.program, c.plan, tol::runtime::RunOptions{failFast});
    const bool color = format == tol::report::Format::Plain && isatty(STDOUT_FILENO) != 0 &&
                       std::getenv("TOL_NO_COLOR") == nullptr;
    std::cout << tol::report::render(c.program->model, outcomes, format, color);
    std::cerr << tol::report::failureDetails(c.program->model, outcomes);
    const auto counts = tol::report::count(outcomes);
    return counts.failed + counts.errors == 0 ? kOk : kTestsFailed;
}

int runModel(const std::vector<std::string>& files) {
    const auto c = tol::driver::compileFiles(files);
    printErrors(c);
    if (!c.program)
        return kCompileError;
    std::cout << tol::dump::modelJson(c);
    return c.ok() ? kOk : kCompileError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TOL compiler and test runner"};
    app.name("tol");
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string format = "plain";
    bool failFast = false;
    bool json = false;

    auto addFiles = [&](CLI::App* sub) {
        sub->add_option("files", files, "source files")->required()->check(CLI::ExistingFile);
    };
    CLI::App* check = app.add_subcommand("check", "parse, bind, type-check and detect conflicts");
    addFiles(check);
    CLI::App* test = app.add_subcommand("test", "compile and run every test");
    addFiles(test);
    test->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"plain", "tap", "json"}))
        ->capture_default_str();
    test->add_flag("--fail-fast", failFast, "stop after the first failing test");
    CLI::App* model = app.add_subcommand("model", "dump the metamodel as JSON");
    addFiles(model);
    model->add_flag("--json", json, "JSON output (the only format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "tol: " << e.what() << "\n\n" << app.help();
        return kCompileError;
    }

    if (check->parsed())
        return runCheck(files);
    if (test->parsed()) {
        static const std::map<std::string, tol::report::Format> formats{
            {"plain", tol::report::Format::Plain}, {"tap", tol::report::Format::Tap}, {"json", tol::report::Format::Json}};
        return runTests(files, formats.at(format), failFast);
    }
    return runModel(files);
}
