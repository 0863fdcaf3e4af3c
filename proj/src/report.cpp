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

#include "tol/report.hpp"

#include "json.hpp"

namespace tol::report {

using runtime::Status;
using runtime::TestOutcome;

Counts count(const std::vector<TestOutcome>& outcomes) {
    Counts c;
    for (const TestOutcome& o : outcomes) {
        switch (o.status) {
        case Status::Pass: ++c.passed; break;
        case Status::Fail: ++c.failed; break;
        case Status::RuntimeError: ++c.errors; break;
        }
    }
    return c;
}

std::string summary(const Counts& c) {
    return std::to_string(c.passed) + " passed, " + std::to_string(c.failed) + " failed, " +
           std::to_string(c.errors) + " errors";
}

namespace {

const char* label(Status s) {
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::RuntimeError: return "ERROR";
    }
    return "?";
}

const char* ansi(Status s) {
    switch (s) {
    case Status::Pass: return "\x1b[32m";
    case Status::Fail: return "\x1b[31m";
    case Status::RuntimeError: return "\x1b[33m";
    }
    return "";
}

const Span* where(const TestOutcome& o) {
    if (o.failedAssertSpan)
        return &*o.failedAssertSpan;
    if (o.errorSpan && o.errorSpan->valid())
        return &*o.errorSpan;
    return nullptr;
}

std::string plain(const metamodel::Model& model, const std::vector<TestOutcome>& outcomes, bool color) {
    std::string out;
    for (const TestOutcome& o : outcomes) {
        if (color)
            out += std::string(ansi(o.status)) + label(o.status) + "\x1b[0m";
        else
            out += label(o.status);
        out += " " + runtime::outcomeName(model, o) + "\n";
    }
    return out + summary(count(outcomes)) + "\n";
}

// YAML double-quoted scalar; JSON string escaping is a valid subset.
std::string yamlString(const std::string& s) { return nlohmann::json(s).dump(); }

std::string tap(const metamodel::Model& model, const std::vector<TestOutcome>& outcomes) {
    std::string out = "TAP version 14\n1.." + std::to_string(outcomes.size()) + "\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const TestOutcome& o = outcomes[i];
        const bool ok = o.status == Status::Pass;
        out += std::string(ok ? "ok " : "not ok ") + std::to_string(i + 1) + " - " + runtime::outcomeName(model, o) +
               "\n";
        if (ok)
            continue;
        out += "  ---\n";
        out += "  message: " + yamlString(o.message) + "\n";
        out += std::string("  severity: ") + (o.status == Status::Fail ? "fail" : "error") + "\n";
        if (!o.errorCode.empty())
            out += "  code: " + yamlString(o.errorCode) + "\n";
        if (const Span* s = where(o)) {
            out += "  at:\n";
            out += "    file: " + yamlString(s->file) + "\n";
            out += "    line: " + std::to_string(s->line) + "\n";
            out += "    column: " + std::to_string(s->column) + "\n";
        }
        if (!o.capturedOutput.empty()) {
            out += "  output:\n";
            for (const std::string& line : o.capturedOutput)
                out += "    - " + yamlString(line) + "\n";
        }
        out += "  ...\n";
    }
    out += "# " + summary(count(outcomes)) + "\n";
    return out;
}

std::string json(const metamodel::Model& model, const std::vector<TestOutcome>& outcomes) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TestOutcome& o : outcomes) {
        nlohmann::ordered_json j;
        j["name"] = runtime::outcomeName(model, o);
        j["test"] = model.localTest(o.test).name;
        j["class"] = o.executingClass ? nlohmann::ordered_json(model.classEntry(*o.executingClass).name)
                                      : nlohmann::ordered_json(nullptr);
        j["status"] = std::string(runtime::toString(o.status));
        j["output"] = o.capturedOutput;
        if (o.status != Status::Pass) {
            j["message"] = o.message;
            if (!o.errorCode.empty())
                j["code"] = o.errorCode;
            if (const Span* s = where(o))
                j["at"] = {{"file", s->file}, {"line", s->line}, {"column", s->column}};
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

} // namespace

std::string render(const metamodel::Model& model, const std::vector<TestOutcome>& outcomes, Format format,
                   bool color) {
    switch (format) {
    case Format::Plain: return plain(model, outcomes, color);
    case Format::Tap: return tap(model, outcomes);
    case Format::Json: return json(model, outcomes);
    }
    return {};
}

std::string failureDetails(const metamodel::Model& model, const std::vector<TestOutcome>& outcomes) {
    std::string out;
    for (const TestOutcome& o : outcomes) {
        if (o.status == Status::Pass)
            continue;
        if (const Span* s = where(o))
            out += s->file + ":" + std::to_string(s->line) + ":" + std::to_string(s->column) + ": ";
        out += std::string(label(o.status)) + " " + runtime::outcomeName(model, o) + ": ";
        out += o.errorCode.empty() ? o.message : o.errorCode + ": " + o.message;
        out += "\n";
    }
    return out;
}

} // namespace tol::report
