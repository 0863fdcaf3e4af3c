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

#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tol/driver.hpp"

namespace tol::testing {

inline std::string fixturePath(const std::string& name) { return std::string(TOL_FIXTURE_DIR) + "/" + name; }

inline std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline driver::Compilation compileFixture(const std::string& name) {
    return driver::compileFiles({fixturePath(name)});
}

inline driver::Compilation compileText(const std::string& text) {
    return driver::compile({driver::Source{"<test>", text}});
}

inline const std::vector<std::string>& allFixtures() {
    static const std::vector<std::string> names{
        "animals.tol",          "all_pass.tol",         "visibility.tol",          "dupname_conflict.tol",
        "dupname_factorized.tol",  "dupname_redefined.tol",   "dupname_moved.tol",          "methodclash_conflict.tol",
        "methodclash_unify.tol",       "methodclash_select.tol",      "methodclash_rename.tol",         "testclash_conflict.tol",
        "testclash_unify.tol",       "testclash_select.tol",      "testclash_rename.tol",         "typesafe_covariant.tol",
        "typesafe_return_widened.tol", "typesafe_param_narrowed.tol",
    };
    return names;
}

struct ProcessResult {
    int exitCode = -1;
    std::string out; // stdout only
};

/// Runs the tol binary; stderr goes to /dev/null unless `keepStderr`.
inline ProcessResult runTol(const std::string& args, bool keepStderr = false) {
    const std::string cmd = std::string(TOL_BINARY) + " " + args + (keepStderr ? " 2>&1" : " 2>/dev/null");
    ProcessResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace tol::testing
