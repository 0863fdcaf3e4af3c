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

#include "tol/conflicts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace tol::conflicts {

using metamodel::EntityKind;
using metamodel::GlobalPropertyEntry;
using metamodel::GlobalTestEntry;
using metamodel::ModelBuilder;
using metamodel::PropertyEntry;
using metamodel::Relation;
using metamodel::TestEntry;
using metamodel::TestLevel;

std::string_view toString(ConflictKind kind) {
    switch (kind) {
    case ConflictKind::DuplicateGtpName: return "DuplicateGtpName";
    case ConflictKind::MethodClashMultipleInheritance: return "MethodClashMultipleInheritance";
    case ConflictKind::LtpClashMultipleInheritance: return "LtpClashMultipleInheritance";
    }
    return "?";
}

std::string_view toString(Strategy strategy) {
    switch (strategy) {
    case Strategy::Rename: return "rename";
    case Strategy::Select: return "select";
    case Strategy::Unify: return "unify";
    }
    return "?";
}

std::string_view toString(ResolutionError::Code code) {
    switch (code) {
    case ResolutionError::Code::UnmatchedResolution: return "UnmatchedResolution";
    case ResolutionError::Code::InvalidSelection: return "InvalidSelection";
    case ResolutionError::Code::IncompleteRename: return "IncompleteRename";
    }
    return "?";
}

std::string format(const Model& model, const ConflictDiagnostic& diag) {
    std::string out = "conflict[" + std::string(toString(diag.kind)) + "] at " + model.displayName(diag.site) +
                      ": '" + diag.subject + "' candidates: ";
    for (std::size_t i = 0; i < diag.candidates.size(); ++i)
        out += (i ? ", " : "") + model.displayName(diag.candidates[i]);
    out += "; remedies:";
    for (std::size_t i = 0; i < diag.remedies.size(); ++i)
        out += " " + std::to_string(i + 1) + ") " + diag.remedies[i];
    return out;
}

namespace {

bool redefinesTransitively(const Model& model, EntityId from, EntityId to) {
    std::vector<EntityId> stack{from};
    std::set<EntityId> seen;
    while (!stack.empty()) {
        const EntityId cur = stack.back();
        stack.pop_back();
        for (const EntityId& next : model.successors(Relation::Redef, cur)) {
            if (next == to)
                return true;
            if (seen.insert(next).second)
                stack.push_back(next);
        }
    }
    return false;
}

// Members of `items` that no other member redefines, ascending.
std::vector<EntityId> dominant(const Model& model, const std::set<EntityId>& items) {
    std::vector<EntityId> out;
    for (const EntityId& a : items) {
        const bool shadowed = std::any_of(items.begin(), items.end(), [&](const EntityId& b) {
            return b != a && redefinesTransitively(model, b, a);
        });
        if (!shadowed)
            out.push_back(a);
    }
    return out;
}

std::vector<EntityId> nearestLocals(const Model& model, EntityId cls, EntityId global) {
    const auto locals = resolver::localPropertiesOf(model, cls, global);
    return dominant(model, {locals.begin(), locals.end()});
}

std::string joinNames(const Model& model, const std::vector<EntityId>& ids, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        out += (i ? sep : "") + model.displayName(ids[i]);
    return out;
}

std::string joinOwners(const Model& model, const std::vector<EntityId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const EntityId owner = ids[i].kind == EntityKind::GlobalTestProperty ? model.introducerOf(ids[i])
                                                                              : model.ownerOf(ids[i]);
        out += (i == 0 ? "" : i + 1 == ids.size() ? " and " : ", ") + model.classEntry(owner).name;
    }
    return out;
}

std::vector<EntityId> classesInDeclarationOrder(const Model& model) {
    std::vector<EntityId> classes = model.ids(EntityKind::Class);
    std::stable_sort(classes.begin(), classes.end(), [&](const EntityId& a, const EntityId& b) {
        return model.classEntry(a).declarationIndex < model.classEntry(b).declarationIndex;
    });
    return classes;
}

ConflictDiagnostic duplicateGtp(const Model& model, EntityId site, EntityId global, const std::string& name,
                                std::vector<EntityId> candidates) {
    // The class owning the local property every candidate is attached to.
    EntityId home = site;
    for (const EntityId& l : model.predecessors(Relation::Has, candidates.front())) {
        const bool shared = std::all_of(candidates.begin(), candidates.end(),
                                        [&](const EntityId& c) { return model.contains(Relation::Has, l, c); });
        if (l.kind == EntityKind::LocalProperty && shared) {
            home = model.ownerOf(l);
            break;
        }
    }
    const std::string homeName = model.classEntry(home).name;
    const std::string owners = joinOwners(model, candidates);
    const std::string property = model.globalProperty(global).name;
    ConflictDiagnostic d;
    d.kind = ConflictKind::DuplicateGtpName;
    d.site = site;
    d.subject = name;
    d.remedies = {
        "factorize " + joinNames(model, candidates, " and ") + " in " + homeName + " if they are the same test",
        "redefine " + property + " in " + owners,
        "move " + name + " to " + homeName + " and redefine its local test property in " + owners,
    };
    d.candidates = std::move(candidates);
    return d;
}

ConflictDiagnostic methodClash(const Model& model, EntityId site, const std::string& name,
                               std::vector<EntityId> candidates) {
    const std::string siteName = model.classEntry(site).name;
    const std::string owners = joinOwners(model, candidates);
    std::string example;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::string owner = model.classEntry(model.ownerOf(candidates[i])).name;
        example += (i ? ", " : "") + owner + "." + name + owner;
    }
    ConflictDiagnostic d;
    d.kind = ConflictKind::MethodClashMultipleInheritance;
    d.site = site;
    d.subject = name;
    d.remedies = {
        "rename " + name + " in " + owners + " (for example " + example + ")",
        "select: redefine " + name + " in " + siteName + " calling one of " + joinNames(model, candidates, ", ") +
            "; the tests of the selection are associated to " + siteName + "." + name,
        "unify: all tests from " + owners + " are associated to " + siteName + "." + name,
    };
    d.candidates = std::move(candidates);
    return d;
}

ConflictDiagnostic testClash(const Model& model, EntityId site, const std::string& name,
                             std::vector<EntityId> candidates) {
    const std::string siteName = model.classEntry(site).name;
    const std::string owners = joinOwners(model, candidates);
    ConflictDiagnostic d;
    d.kind = ConflictKind::LtpClashMultipleInheritance;
    d.site = site;
    d.subject = name;
    d.remedies = {
        "rename " + name + " in " + owners + " for " + siteName,
        "select one of " + joinNames(model, candidates, ", ") + " for " + siteName,
        "unify: run every inherited " + name + " against " + siteName,
    };
    d.candidates = std::move(candidates);
    return d;
}

} // namespace

std::vector<ConflictDiagnostic> detectConflicts(const Model& model, const resolver::ResolvedTestSets& sets) {
    std::vector<ConflictDiagnostic> out;
    const std::vector<EntityId> classes = classesInDeclarationOrder(model);

    // Duplicate global test property names inside one GTP(c, g).
    std::set<std::tuple<EntityId, std::string, std::vector<EntityId>>> reported;
    for (const EntityId& cls : classes) {
        for (const EntityId& g : resolver::globalPropertiesOf(model, cls)) {
            const auto ps = sets.perGlobalProperty.find({cls, g});
            if (ps == sets.perGlobalProperty.end())
                continue;
            std::map<std::string, std::vector<EntityId>> byName;
            for (const EntityId& gtp : ps->second.gtpSet)
                byName[model.globalTest(gtp).name].push_back(gtp);
            for (auto& [name, gtps] : byName) {
                if (gtps.size() < 2)
                    continue;
                if (reported.emplace(g, name, gtps).second)
                    out.push_back(duplicateGtp(model, cls, g, name, gtps));
            }
        }
    }

    for (const EntityId& cls : classes) {
        const auto& parents = model.classEntry(cls).parents;
        if (parents.size() < 2)
            continue;

        for (const EntityId& g : resolver::globalPropertiesOf(model, cls)) {
            const std::string& name = model.globalProperty(g).name;
            std::set<EntityId> inherited;
            for (const EntityId& p : parents) {
                for (const EntityId& l : nearestLocals(model, p, g))
                    inherited.insert(l);
            }
            std::vector<EntityId> candidates = dominant(model, inherited);
            if (candidates.size() >= 2 && !model.isResolved(cls, name))
                out.push_back(methodClash(model, cls, name, std::move(candidates)));
        }

        std::set<EntityId> gtps;
        for (const EntityId& g : resolver::globalPropertiesOf(model, cls)) {
            const auto ps = sets.perGlobalProperty.find({cls, g});
            if (ps != sets.perGlobalProperty.end())
                gtps.insert(ps->second.gtpSet.begin(), ps->second.gtpSet.end());
        }
        for (const EntityId& gtp : gtps) {
            const std::string& name = model.globalTest(gtp).name;
            const auto& locals = model.predecessors(Relation::Belongs, gtp);
            const bool ownsOne = std::any_of(locals.begin(), locals.end(),
                                             [&](const EntityId& lt) { return model.ownerOf(lt) == cls; });
            if (ownsOne)
                continue;
            std::set<EntityId> inherited;
            for (const EntityId& p : parents) {
                for (const EntityId& lt : resolver::localTestsOfGlobalTest(model, p, gtp))
                    inherited.insert(lt);
            }
            std::vector<EntityId> candidates = dominant(model, inherited);
            if (candidates.size() >= 2 && !model.isResolved(cls, name))
                out.push_back(testClash(model, cls, name, std::move(candidates)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// applyResolution

namespace {

struct Branch {
    EntityId parent;
    EntityId candidate;
};

class Rewriter {
public:
    Rewriter(const Model& model, ModelBuilder& builder) : model_(model), b_(builder) {}

    void apply(const Resolution& r, const ConflictDiagnostic& diag) {
        if (diag.kind == ConflictKind::MethodClashMultipleInheritance)
            applyMethod(r, diag);
        else
            applyTest(r, diag);
        b_.markResolved(r.site, r.subject);
    }

private:
    [[noreturn]] static void fail(ResolutionError::Code code, const std::string& msg, const Resolution& r) {
        throw ResolutionError(code, msg, r.span);
    }

    // Which parent of the site brings in each candidate (first in parent order).
    std::vector<Branch> branches(const ConflictDiagnostic& diag, bool tests) const {
        std::vector<Branch> out;
        for (const EntityId& cand : diag.candidates) {
            for (const EntityId& p : model_.classEntry(diag.site).parents) {
                std::vector<EntityId> reach;
                if (tests) {
                    reach = resolver::localTestsOfGlobalTest(model_, p, *model_.localTest(cand).global);
                } else {
                    reach = resolver::localPropertiesOf(model_, p, model_.localProperty(cand).global);
                }
                if (std::find(reach.begin(), reach.end(), cand) != reach.end()) {
                    out.push_back(Branch{p, cand});
                    break;
                }
            }
        }
        return out;
    }

    Branch choose(const QualifiedChoice& q, const std::vector<Branch>& bs, const Resolution& r) const {
        if (q.member != r.subject)
            fail(ResolutionError::Code::InvalidSelection,
                 "selection names '" + q.member + "' but the conflict is about '" + r.subject + "'", r);
        for (const Branch& b : bs) {
            if (b.parent == q.parent)
                return b;
        }
        for (const Branch& b : bs) {
            if (model_.ownerOf(b.candidate) == q.parent)
                return b;
        }
        fail(ResolutionError::Code::InvalidSelection,
             model_.displayName(q.parent) + " is not a parent of " + model_.displayName(r.site) +
                 " contributing '" + r.subject + "'",
             r);
    }

    std::vector<EntityId> branchTests(const Branch& b, EntityId global) const {
        return resolver::globalTestProperties(model_, b.parent, global);
    }

    // Removes has(cls, gtp) from the site and its descendants, unless the
    // descendant reaches gtp through a class outside the site's hierarchy.
    void detach(EntityId site, const std::set<EntityId>& gtps) {
        std::vector<EntityId> targets{site};
        for (const EntityId& d : model_.descendants(site))
            targets.push_back(d);
        for (const EntityId& cls : targets) {
            for (const EntityId& gtp : gtps) {
                const auto& holders = model_.predecessors(Relation::Has, gtp);
                const bool reachedElsewhere = std::any_of(holders.begin(), holders.end(), [&](const EntityId& l) {
                    if (l.kind != EntityKind::LocalProperty)
                        return false;
                    const EntityId owner = model_.ownerOf(l);
                    return model_.isAncestorOrSelf(owner, cls) && !model_.isAncestorOrSelf(owner, site);
                });
                if (!reachedElsewhere)
                    b_.unrelate(Relation::Has, cls, gtp);
            }
        }
    }

    void grantToSubtree(EntityId site, EntityId target) {
        b_.relate(Relation::Has, site, target);
        for (const EntityId& d : model_.descendants(site))
            b_.relate(Relation::Has, d, target);
    }

    EntityId siteLocal(const Resolution& r, const PropertyEntry& from, const std::vector<EntityId>& candidates) {
        if (auto own = model_.find(EntityKind::LocalProperty, r.site, metamodel::propertyKey(from.role, from.name)))
            return *own;
        PropertyEntry synth = from;
        synth.owner = r.site;
        synth.synthesized = true;
        synth.renamedFrom.reset();
        const EntityId id = b_.add(std::move(synth));
        for (const EntityId& c : candidates)
            b_.relate(Relation::Redef, id, c);
        return id;
    }

    void applyMethod(const Resolution& r, const ConflictDiagnostic& diag) {
        const std::vector<Branch> bs = branches(diag, false);
        const EntityId global = model_.localProperty(diag.candidates.front()).global;

        switch (r.strategy) {
        case Strategy::Unify: {
            const EntityId target =
                siteLocal(r, model_.localProperty(bs.front().candidate), diag.candidates);
            for (const Branch& b : bs) {
                for (const EntityId& gtp : branchTests(b, global))
                    b_.relate(Relation::Has, target, gtp);
            }
            break;
        }
        case Strategy::Select: {
            const Branch chosen = choose(*r.selection, bs, r);
            const EntityId target = siteLocal(r, model_.localProperty(chosen.candidate), diag.candidates);
            const std::vector<EntityId> keep = branchTests(chosen, global);
            for (const EntityId& gtp : keep)
                b_.relate(Relation::Has, target, gtp);
            std::set<EntityId> dropped;
            for (const Branch& b : bs) {
                for (const EntityId& gtp : branchTests(b, global)) {
                    if (std::find(keep.begin(), keep.end(), gtp) == keep.end())
                        dropped.insert(gtp);
                }
            }
            detach(r.site, dropped);
            break;
        }
        case Strategy::Rename: {
            const PropertyEntry& sample = model_.localProperty(diag.candidates.front());
            if (model_.find(EntityKind::LocalProperty, r.site, metamodel::propertyKey(sample.role, sample.name)))
                fail(ResolutionError::Code::InvalidSelection,
                     "cannot rename inherited '" + r.subject + "' that " + model_.displayName(r.site) +
                         " redefines itself",
                     r);
            std::set<EntityId> covered;
            std::set<std::string> names;
            std::vector<std::pair<Branch, std::string>> plan;
            for (const RenameEntry& e : r.renames) {
                const Branch b = choose(e.from, bs, r);
                if (!covered.insert(b.candidate).second)
                    fail(ResolutionError::Code::InvalidSelection,
                         "branch " + model_.displayName(b.candidate) + " is renamed twice", r);
                if (e.newName == r.subject || !names.insert(e.newName).second ||
                    model_.find(EntityKind::LocalProperty, r.site, metamodel::propertyKey(sample.role, e.newName)))
                    fail(ResolutionError::Code::InvalidSelection, "new name '" + e.newName + "' is already in use", r);
                plan.emplace_back(b, e.newName);
            }
            if (covered.size() != diag.candidates.size())
                fail(ResolutionError::Code::IncompleteRename,
                     "rename of '" + r.subject + "' must give every clashing branch a new name", r);

            for (const auto& [b, newName] : plan) {
                const PropertyEntry& from = model_.localProperty(b.candidate);
                const EntityId newGlobal = b_.add(GlobalPropertyEntry{from.role, newName, r.site});
                PropertyEntry renamed = from;
                renamed.name = newName;
                renamed.owner = r.site;
                renamed.global = newGlobal;
                renamed.synthesized = true;
                renamed.renamedFrom = b.candidate;
                const EntityId local = b_.add(std::move(renamed));
                grantToSubtree(r.site, newGlobal);
                for (const EntityId& gtp : branchTests(b, global))
                    b_.relate(Relation::Has, local, gtp);
            }
            // The site and its descendants no longer have the original name,
            // unless a descendant redefines it or inherits it from elsewhere.
            b_.unrelate(Relation::Has, r.site, global);
            for (const EntityId& d : model_.descendants(r.site)) {
                const auto locals = resolver::localPropertiesOf(model_, d, global);
                const bool keeps = std::any_of(locals.begin(), locals.end(), [&](const EntityId& l) {
                    return !model_.isAncestorOrSelf(model_.ownerOf(l), r.site);
                });
                if (!keeps)
                    b_.unrelate(Relation::Has, d, global);
            }
            break;
        }
        }
    }

    void applyTest(const Resolution& r, const ConflictDiagnostic& diag) {
        const std::vector<Branch> bs = branches(diag, true);
        const TestEntry& sample = model_.localTest(diag.candidates.front());
        const EntityId gtp = *sample.global;
        const EntityId global = sample.target;

        switch (r.strategy) {
        case Strategy::Unify:
            break;
        case Strategy::Select: {
            const Branch chosen = choose(*r.selection, bs, r);
            TestEntry synth = model_.localTest(chosen.candidate);
            synth.owner = r.site;
            synth.synthesized = true;
            const EntityId id = b_.add(std::move(synth));
            for (const EntityId& c : diag.candidates)
                b_.relate(Relation::Redef, id, c);
            break;
        }
        case Strategy::Rename: {
            std::set<EntityId> covered;
            std::set<std::string> names;
            std::vector<std::pair<Branch, std::string>> plan;
            for (const RenameEntry& e : r.renames) {
                const Branch b = choose(e.from, bs, r);
                if (!covered.insert(b.candidate).second)
                    fail(ResolutionError::Code::InvalidSelection,
                         "branch " + model_.displayName(b.candidate) + " is renamed twice", r);
                if (e.newName == r.subject || !names.insert(e.newName).second)
                    fail(ResolutionError::Code::InvalidSelection, "new name '" + e.newName + "' is already in use", r);
                plan.emplace_back(b, e.newName);
            }
            if (covered.size() != diag.candidates.size())
                fail(ResolutionError::Code::IncompleteRename,
                     "rename of '" + r.subject + "' must give every clashing branch a new name", r);

            const std::vector<EntityId> attach = nearestLocals(model_, r.site, global);
            for (const auto& [b, newName] : plan) {
                const EntityId newGtp = b_.add(GlobalTestEntry{TestLevel::PropertyTest, newName, r.site, global});
                TestEntry renamed = model_.localTest(b.candidate);
                renamed.name = newName;
                renamed.owner = r.site;
                renamed.global = newGtp;
                renamed.synthesized = true;
                b_.add(std::move(renamed));
                for (const EntityId& l : attach)
                    b_.relate(Relation::Has, l, newGtp);
                grantToSubtree(r.site, newGtp);
            }
            detach(r.site, {gtp});
            break;
        }
        }
    }

    const Model& model_;
    ModelBuilder& b_;
};

} // namespace

Model applyResolution(const Model& model, const std::vector<Resolution>& resolutions) {
    if (resolutions.empty())
        return model;

    const auto sets = resolver::resolve(model);
    const auto diags = detectConflicts(model, sets);

    ModelBuilder builder(model);
    Rewriter rewriter(model, builder);
    std::set<std::pair<EntityId, std::string>> applied;
    for (const Resolution& r : resolutions) {
        const ConflictDiagnostic* match = nullptr;
        bool duplicateOnly = false;
        for (const ConflictDiagnostic& d : diags) {
            if (d.site != r.site || d.subject != r.subject)
                continue;
            if (d.kind == ConflictKind::DuplicateGtpName) {
                duplicateOnly = true;
                continue;
            }
            if (match == nullptr || d.kind == ConflictKind::MethodClashMultipleInheritance)
                match = &d;
        }
        if (match == nullptr) {
            const std::string where = model.displayName(r.site);
            throw ResolutionError(ResolutionError::Code::UnmatchedResolution,
                                  duplicateOnly ? "duplicate test names at " + where + " for '" + r.subject +
                                                      "' cannot be settled by " + std::string(toString(r.strategy)) +
                                                      "; change the source instead"
                                                : "no conflict on '" + r.subject + "' at " + where + " to resolve",
                                  r.span);
        }
        if (!applied.emplace(r.site, r.subject).second)
            throw ResolutionError(ResolutionError::Code::UnmatchedResolution,
                                  "'" + r.subject + "' at " + model.displayName(r.site) + " is resolved twice",
                                  r.span);
        rewriter.apply(r, *match);
    }
    return builder.seal();
}

} // namespace tol::conflicts
