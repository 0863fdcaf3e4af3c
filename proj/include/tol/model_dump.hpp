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

/// @file model_dump.hpp
/// JSON view of a compiled program.
///
/// Every entity gets an integer id, numbered in table order: packages,
/// classes, global properties, local properties, global test properties,
/// local test properties, global test classes, local test classes, test
/// packages. Keys are emitted in a fixed order so that equal inputs give
/// byte-identical text.

#pragma once

#include <string>

#include "tol/driver.hpp"

namespace tol::dump {

/// Requires c.program. Two-space indented, LF-terminated.
std::string modelJson(const driver::Compilation& c);

} // namespace tol::dump
