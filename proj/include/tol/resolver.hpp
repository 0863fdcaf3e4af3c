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

/// @file resolver.hpp
/// Effective test sets of each class and the execution plan derived from
/// them.
///
/// With H(c) = Parents_c ∪ {c} (Model::hierarchy):
///
///   L(c, g)     locals of g owned by a class in H(c)
///   GTP(c, g)   global test properties attached (has) to some l ∈ L(c, g)
///               and listed in has(c, ·)
///   IGTP(c, g)  members of GTP(c, g) introduced by a class in H(c)
///   LTP(c, gt)  locals of gt owned in H(c), minus any local redefined by
///               another member of the same candidate set
///   GTC(c)      global test classes introduced in H(c)
///   LTC(c)      locals of GTC(c) owned in H(c), minus redefined ones
///
/// Unordered results are ascending by EntityId. LTP and LTC are ordered by
/// owner depth (deepest first), then by id.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tol/metamodel.hpp"

namespace tol::resolver {

using metamodel::EntityId;
using metamodel::Model;

/// G_c: global properties the class has (inherited or introduced).
std::vector<EntityId> globalPropertiesOf(const Model& model, EntityId cls);

std::vector<EntityId> localPropertiesOf(const Model& model, EntityId cls, EntityId global);
std::vector<EntityId> globalTestProperties(const Model& model, EntityId cls, EntityId global);
std::vector<EntityId> introducedGlobalTestProperties(const Model& model, EntityId cls, EntityId global);
std::vector<EntityId> localTestsOfGlobalTest(const Model& model, EntityId cls, EntityId globalTest);
std::vector<EntityId> globalTestClasses(const Model& model, EntityId cls);
std::vector<EntityId> localTestClasses(const Model& model, EntityId cls);

struct PropertySets {
    std::vector<EntityId> localProps;
    std::vector<EntityId> gtpSet;
    std::vector<EntityId> introducedGtpSet;
    std::map<EntityId, std::vector<EntityId>> ltpPerGtp;

    bool operator==(const PropertySets&) const = default;
};

struct ClassSets {
    std::vector<EntityId> gtcSet;
    std::vector<EntityId> ltcSet;

    bool operator==(const ClassSets&) const = default;
};

struct ResolvedTestSets {
    std::map<EntityId, ClassSets> perClass;
    /// Keyed by (class, global property) for every global property in G_c.
    std::map<std::pair<EntityId, EntityId>, PropertySets> perGlobalProperty;

    bool operator==(const ResolvedTestSets&) const = default;
};

/// Evaluates every set for every class. Classes are independent, so the work
/// is spread over hardware threads; the result does not depend on scheduling.
ResolvedTestSets resolve(const Model& model);

struct PlanStep {
    enum class Kind { PackageTest, ClassTest, PropertyTest };

    Kind kind = Kind::PropertyTest;
    std::optional<EntityId> executingClass;
    EntityId test;
    std::optional<EntityId> targetProperty;

    bool operator==(const PlanStep&) const = default;
};

struct ExecutionPlan {
    std::vector<PlanStep> steps;

    bool operator==(const ExecutionPlan&) const = default;
};

/// Packages in id order; per package its test packages, then its classes in
/// declaration order. Per class: LTC(c), then for each g ∈ G_c (ascending),
/// each gtp ∈ GTP(c, g) (ascending), each ltp ∈ LTP(c, gtp).
ExecutionPlan buildPlan(const Model& model, const ResolvedTestSets& sets);

} // namespace tol::resolver
