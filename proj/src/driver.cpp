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

#include "tol/driver.hpp"

#include <fstream>
#include <sstream>

#include "tol/parser.hpp"

namespace tol::driver {

Compilation compile(const std::vector<Source>& sources) {
    Compilation c;
    std::vector<std::shared_ptr<const ast::Unit>> units;
    for (const Source& s : sources) {
        try {
            units.push_back(std::make_shared<const ast::Unit>(frontend::parseSource(s.text, s.name)));
        } catch (const CompileError& e) {
            c.diagnostics.push_back(e.diagnostic());
            return c;
        }
    }

    binder::BindResult bound = binder::bind(std::move(units));
    c.diagnostics = std::move(bound.diagnostics);
    if (!bound.program)
        return c;
    c.program = std::move(bound.program);
    binder::Program& program = *c.program;

    for (Diagnostic& d : binder::checkTypeSafety(program))
        c.diagnostics.push_back(std::move(d));

    try {
        program.model = conflicts::applyResolution(program.model, program.resolutions);
    } catch (const conflicts::ResolutionError& e) {
        c.diagnostics.push_back(
            Diagnostic{Severity::Error, std::string(conflicts::toString(e.code())), e.what(), e.span()});
    }

    c.sets = resolver::resolve(program.model);
    c.conflicts = conflicts::detectConflicts(program.model, c.sets);
    c.plan = resolver::buildPlan(program.model, c.sets);
    return c;
}

Compilation compileFiles(const std::vector<std::string>& paths) {
    std::vector<Source> sources;
    for (const std::string& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            Compilation c;
            c.diagnostics.push_back(Diagnostic{Severity::Error, "IoError", "cannot read file", Span{p, 0, 0, 0, 0}});
            return c;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        sources.push_back(Source{p, buf.str()});
    }
    return compile(sources);
}

std::vector<std::string> errorLines(const Compilation& c) {
    std::vector<std::string> out;
    for (const Diagnostic& d : c.diagnostics)
        out.push_back(format(d));
    if (c.program) {
        for (const auto& conflict : c.conflicts)
            out.push_back(conflicts::format(c.program->model, conflict));
    }
    return out;
}

} // namespace tol::driver
