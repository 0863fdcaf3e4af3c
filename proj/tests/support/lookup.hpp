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

// Name-based lookups into a compiled model; they throw when the entity is
// missing so that a typo fails the test loudly.

#pragma once

#include <stdexcept>
#include <string>

#include "tol/metamodel.hpp"

namespace tol::testing {

using metamodel::EntityId;
using metamodel::EntityKind;
using metamodel::Model;

inline EntityId cls(const Model& m, const std::string& name) {
    if (auto c = m.findClass(name))
        return *c;
    throw std::runtime_error("no class " + name);
}

inline EntityId must(std::optional<EntityId> id, const std::string& what) {
    if (!id)
        throw std::runtime_error("missing " + what);
    return *id;
}

/// Global method property introduced by `introducer`.
inline EntityId globalMethod(const Model& m, const std::string& introducer, const std::string& name) {
    return must(m.find(EntityKind::GlobalProperty, cls(m, introducer),
                       metamodel::propertyKey(metamodel::PropertyRole::Method, name)),
                introducer + "." + name);
}

inline EntityId localMethod(const Model& m, const std::string& owner, const std::string& name) {
    return must(m.find(EntityKind::LocalProperty, cls(m, owner),
                       metamodel::propertyKey(metamodel::PropertyRole::Method, name)),
                owner + "." + name);
}

inline EntityId gtp(const Model& m, const std::string& introducer, const std::string& name) {
    return must(m.find(EntityKind::GlobalTestProperty, cls(m, introducer), name), "gtp " + introducer + "." + name);
}

inline EntityId ltp(const Model& m, const std::string& owner, const std::string& name) {
    return must(m.find(EntityKind::LocalTestProperty, cls(m, owner), name), "ltp " + owner + "." + name);
}

inline EntityId gtc(const Model& m, const std::string& introducer, const std::string& name) {
    return must(m.find(EntityKind::GlobalTestClass, cls(m, introducer), name), "gtc " + introducer + "." + name);
}

inline EntityId ltc(const Model& m, const std::string& owner, const std::string& name) {
    return must(m.find(EntityKind::LocalTestClass, cls(m, owner), name), "ltc " + owner + "." + name);
}

} // namespace tol::testing
