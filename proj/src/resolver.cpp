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

#include "tol/resolver.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <thread>

namespace tol::resolver {

using metamodel::EntityKind;
using metamodel::Relation;

namespace {

bool ownedInHierarchy(const Model& model, EntityId local, EntityId cls) {
    return model.isAncestorOrSelf(model.ownerOf(local), cls);
}

// Drops every member that another member redefines, then orders the rest.
std::vector<EntityId> removeRedefined(const Model& model, const std::vector<EntityId>& candidates) {
    std::vector<EntityId> kept;
    for (const EntityId& t1 : candidates) {
        const bool redefined = std::any_of(candidates.begin(), candidates.end(), [&](const EntityId& t2) {
            return model.contains(Relation::Redef, t2, t1);
        });
        if (!redefined)
            kept.push_back(t1);
    }
    std::stable_sort(kept.begin(), kept.end(), [&](const EntityId& a, const EntityId& b) {
        const auto da = model.depth(model.ownerOf(a));
        const auto db = model.depth(model.ownerOf(b));
        if (da != db)
            return da > db;
        return a < b;
    });
    return kept;
}

std::vector<EntityId> ofKind(const std::vector<EntityId>& ids, EntityKind kind) {
    std::vector<EntityId> out;
    std::copy_if(ids.begin(), ids.end(), std::back_inserter(out), [&](const EntityId& e) { return e.kind == kind; });
    return out;
}

} // namespace

std::vector<EntityId> globalPropertiesOf(const Model& model, EntityId cls) {
    (void)model.classEntry(cls); // kind check
    return ofKind(model.successors(Relation::Has, cls), EntityKind::GlobalProperty);
}

std::vector<EntityId> localPropertiesOf(const Model& model, EntityId cls, EntityId global) {
    (void)model.classEntry(cls); // kind check
    std::vector<EntityId> out;
    for (const EntityId& l : model.predecessors(Relation::Belongs, global)) {
        if (l.kind == EntityKind::LocalProperty && ownedInHierarchy(model, l, cls))
            out.push_back(l);
    }
    return out;
}

std::vector<EntityId> globalTestProperties(const Model& model, EntityId cls, EntityId global) {
    std::set<EntityId> acc;
    for (const EntityId& l : localPropertiesOf(model, cls, global)) {
        for (const EntityId& gtp : model.successors(Relation::Has, l)) {
            if (model.contains(Relation::Has, cls, gtp))
                acc.insert(gtp);
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<EntityId> introducedGlobalTestProperties(const Model& model, EntityId cls, EntityId global) {
    std::vector<EntityId> out;
    for (const EntityId& gtp : globalTestProperties(model, cls, global)) {
        if (model.isAncestorOrSelf(model.introducerOf(gtp), cls))
            out.push_back(gtp);
    }
    return out;
}

std::vector<EntityId> localTestsOfGlobalTest(const Model& model, EntityId cls, EntityId globalTest) {
    (void)model.classEntry(cls); // kind check
    std::vector<EntityId> candidates;
    for (const EntityId& lt : model.predecessors(Relation::Belongs, globalTest)) {
        if (ownedInHierarchy(model, lt, cls))
            candidates.push_back(lt);
    }
    return removeRedefined(model, candidates);
}

std::vector<EntityId> globalTestClasses(const Model& model, EntityId cls) {
    std::set<EntityId> acc;
    for (const EntityId& d : model.hierarchy(cls)) {
        for (const EntityId& g : model.successors(Relation::Intro, d)) {
            if (g.kind == EntityKind::GlobalTestClass)
                acc.insert(g);
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<EntityId> localTestClasses(const Model& model, EntityId cls) {
    std::vector<EntityId> candidates;
    for (const EntityId& gtc : globalTestClasses(model, cls)) {
        for (const EntityId& lt : model.predecessors(Relation::Belongs, gtc)) {
            if (ownedInHierarchy(model, lt, cls))
                candidates.push_back(lt);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    return removeRedefined(model, candidates);
}

namespace {

struct ClassResult {
    EntityId cls;
    ClassSets classSets;
    std::vector<std::pair<EntityId, PropertySets>> props;
};

ClassResult resolveClass(const Model& model, EntityId cls) {
    ClassResult r{cls, {globalTestClasses(model, cls), localTestClasses(model, cls)}, {}};
    for (const EntityId& g : globalPropertiesOf(model, cls)) {
        PropertySets ps;
        ps.localProps = localPropertiesOf(model, cls, g);
        ps.gtpSet = globalTestProperties(model, cls, g);
        ps.introducedGtpSet = introducedGlobalTestProperties(model, cls, g);
        for (const EntityId& gtp : ps.gtpSet)
            ps.ltpPerGtp[gtp] = localTestsOfGlobalTest(model, cls, gtp);
        r.props.emplace_back(g, std::move(ps));
    }
    return r;
}

} // namespace

ResolvedTestSets resolve(const Model& model) {
    const std::vector<EntityId> classes = model.ids(EntityKind::Class);
    std::vector<ClassResult> results(classes.size());

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), classes.size() / 16));
    if (workers <= 1) {
        for (std::size_t i = 0; i < classes.size(); ++i)
            results[i] = resolveClass(model, classes[i]);
    } else {
        std::vector<std::future<void>> jobs;
        for (std::size_t w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < classes.size(); i += workers)
                    results[i] = resolveClass(model, classes[i]);
            }));
        }
        for (auto& j : jobs)
            j.get();
    }

    ResolvedTestSets sets;
    for (ClassResult& r : results) {
        sets.perClass.emplace(r.cls, std::move(r.classSets));
        for (auto& [g, ps] : r.props)
            sets.perGlobalProperty.emplace(std::make_pair(r.cls, g), std::move(ps));
    }
    return sets;
}

ExecutionPlan buildPlan(const Model& model, const ResolvedTestSets& sets) {
    ExecutionPlan plan;
    for (const EntityId& pkg : model.ids(EntityKind::Package)) {
        for (const EntityId& tp : ofKind(model.successors(Relation::Has, pkg), EntityKind::TestPackage))
            plan.steps.push_back(PlanStep{PlanStep::Kind::PackageTest, std::nullopt, tp, std::nullopt});

        std::vector<EntityId> classes = ofKind(model.successors(Relation::Has, pkg), EntityKind::Class);
        std::stable_sort(classes.begin(), classes.end(), [&](const EntityId& a, const EntityId& b) {
            return model.classEntry(a).declarationIndex < model.classEntry(b).declarationIndex;
        });

        for (const EntityId& cls : classes) {
            const auto cs = sets.perClass.find(cls);
            if (cs != sets.perClass.end()) {
                for (const EntityId& ltc : cs->second.ltcSet)
                    plan.steps.push_back(PlanStep{PlanStep::Kind::ClassTest, cls, ltc, std::nullopt});
            }
            for (const EntityId& g : globalPropertiesOf(model, cls)) {
                const auto ps = sets.perGlobalProperty.find({cls, g});
                if (ps == sets.perGlobalProperty.end())
                    continue;
                for (const EntityId& gtp : ps->second.gtpSet) {
                    const auto ltps = ps->second.ltpPerGtp.find(gtp);
                    if (ltps == ps->second.ltpPerGtp.end())
                        continue;
                    for (const EntityId& ltp : ltps->second)
                        plan.steps.push_back(PlanStep{PlanStep::Kind::PropertyTest, cls, ltp, g});
                }
            }
        }
    }
    return plan;
}

} // namespace tol::resolver
