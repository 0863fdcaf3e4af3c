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

#include "tol/metamodel.hpp"

#include <algorithm>
#include <functional>

namespace tol::metamodel {

namespace {

using K = EntityKind;

bool admissible(Relation rel, K from, K to) {
    switch (rel) {
    case Relation::Redef:
        return from == to && (from == K::LocalProperty || from == K::LocalTestProperty || from == K::LocalTestClass);
    case Relation::Has:
        return (from == K::Package && (to == K::Class || to == K::TestPackage)) ||
               (from == K::Class && (to == K::GlobalProperty || to == K::GlobalTestProperty)) ||
               (from == K::LocalProperty && to == K::GlobalTestProperty);
    case Relation::Intro:
        return from == K::Class &&
               (to == K::GlobalProperty || to == K::GlobalTestProperty || to == K::GlobalTestClass);
    case Relation::Belongs:
        return (from == K::LocalProperty && to == K::GlobalProperty) ||
               (from == K::LocalTestProperty && to == K::GlobalTestProperty) ||
               (from == K::LocalTestClass && to == K::GlobalTestClass);
    case Relation::Def:
        return (from == K::Class &&
                (to == K::LocalProperty || to == K::LocalTestProperty || to == K::LocalTestClass)) ||
               (from == K::Package && to == K::TestPackage);
    }
    return false;
}

const std::vector<EntityId> kEmpty;

std::size_t kindSize(const ModelData& d, K kind) {
    switch (kind) {
    case K::Package: return d.packages.size();
    case K::Class: return d.classes.size();
    case K::GlobalProperty: return d.globalProperties.size();
    case K::LocalProperty: return d.localProperties.size();
    case K::GlobalTestProperty: return d.globalTestProperties.size();
    case K::LocalTestProperty: return d.localTestProperties.size();
    case K::GlobalTestClass: return d.globalTestClasses.size();
    case K::LocalTestClass: return d.localTestClasses.size();
    case K::TestPackage: return d.testPackages.size();
    }
    return 0;
}

EntityId makeId(K kind, std::size_t index) { return EntityId{kind, static_cast<std::uint32_t>(index)}; }

K globalTestKind(TestLevel level) {
    return level == TestLevel::ClassTest ? K::GlobalTestClass : K::GlobalTestProperty;
}

K localTestKind(TestLevel level) {
    switch (level) {
    case TestLevel::PropertyTest: return K::LocalTestProperty;
    case TestLevel::ClassTest: return K::LocalTestClass;
    case TestLevel::PackageTest: return K::TestPackage;
    }
    return K::LocalTestProperty;
}

} // namespace

std::string_view toString(EntityKind kind) {
    switch (kind) {
    case K::Package: return "Package";
    case K::Class: return "Class";
    case K::GlobalProperty: return "GlobalProperty";
    case K::LocalProperty: return "LocalProperty";
    case K::GlobalTestProperty: return "GlobalTestProperty";
    case K::LocalTestProperty: return "LocalTestProperty";
    case K::GlobalTestClass: return "GlobalTestClass";
    case K::LocalTestClass: return "LocalTestClass";
    case K::TestPackage: return "TestPackage";
    }
    return "?";
}

std::string toString(EntityId id) { return std::string(toString(id.kind)) + "#" + std::to_string(id.index); }

std::string_view toString(Relation rel) {
    switch (rel) {
    case Relation::Redef: return "redef";
    case Relation::Has: return "has";
    case Relation::Intro: return "intro";
    case Relation::Belongs: return "belongs";
    case Relation::Def: return "def";
    }
    return "?";
}

std::string_view toString(PropertyRole role) { return role == PropertyRole::Field ? "field" : "method"; }
std::string_view toString(Visibility vis) { return vis == Visibility::Private ? "private" : "public"; }

std::string_view toString(TestLevel level) {
    switch (level) {
    case TestLevel::PropertyTest: return "property";
    case TestLevel::ClassTest: return "class";
    case TestLevel::PackageTest: return "package";
    }
    return "?";
}

std::string_view toString(ModelError::Code code) {
    switch (code) {
    case ModelError::Code::DuplicateEntity: return "DuplicateEntity";
    case ModelError::Code::RelationCycle: return "RelationCycle";
    case ModelError::Code::KindMismatch: return "KindMismatch";
    case ModelError::Code::ModelInvalid: return "ModelInvalid";
    case ModelError::Code::UnknownEntity: return "UnknownEntity";
    case ModelError::Code::WrongKind: return "WrongKind";
    case ModelError::Code::Sealed: return "Sealed";
    }
    return "?";
}

std::string propertyKey(PropertyRole role, std::string_view name) {
    return std::string(role == PropertyRole::Field ? "f:" : "m:") + std::string(name);
}

// ---------------------------------------------------------------------------
// ModelBuilder

ModelBuilder::ModelBuilder(const Model& model) : data_(model.data_), names_(model.names_) {}

void ModelBuilder::checkBuilding() const {
    if (sealed_)
        throw ModelError(ModelError::Code::Sealed, "model is already sealed");
}

void ModelBuilder::checkExists(EntityId id) const {
    if (id.index >= kindSize(data_, id.kind))
        throw ModelError(ModelError::Code::UnknownEntity, "unknown entity " + toString(id), {id});
}

void ModelBuilder::intern(EntityKind kind, EntityId owner, std::string key, EntityId id) {
    auto [it, inserted] = names_.emplace(std::make_tuple(kind, owner, key), id);
    if (!inserted)
        throw ModelError(ModelError::Code::DuplicateEntity,
                         "duplicate " + std::string(toString(kind)) + " '" + key + "' in " + toString(owner),
                         {it->second});
}

std::optional<EntityId> ModelBuilder::find(EntityKind kind, EntityId owner, std::string_view key) const {
    auto it = names_.find(std::make_tuple(kind, owner, std::string(key)));
    if (it == names_.end())
        return std::nullopt;
    return it->second;
}

EntityId ModelBuilder::add(PackageEntry entry) {
    checkBuilding();
    const EntityId id = makeId(K::Package, data_.packages.size());
    intern(K::Package, EntityId{}, entry.name, id);
    data_.packages.push_back(std::move(entry));
    return id;
}

EntityId ModelBuilder::add(ClassEntry entry) {
    checkBuilding();
    checkExists(entry.package);
    if (entry.package.kind != K::Package)
        throw ModelError(ModelError::Code::KindMismatch, "class package must be a Package", {entry.package});
    const EntityId id = makeId(K::Class, data_.classes.size());
    intern(K::Class, entry.package, entry.name, id);
    const EntityId pkg = entry.package;
    data_.classes.push_back(std::move(entry));
    data_.relations[static_cast<std::size_t>(Relation::Has)].emplace(pkg, id);
    return id;
}

EntityId ModelBuilder::add(GlobalPropertyEntry entry) {
    checkBuilding();
    checkExists(entry.introducer);
    const EntityId id = makeId(K::GlobalProperty, data_.globalProperties.size());
    intern(K::GlobalProperty, entry.introducer, propertyKey(entry.role, entry.name), id);
    const EntityId intro = entry.introducer;
    data_.globalProperties.push_back(std::move(entry));
    relate(Relation::Intro, intro, id);
    return id;
}

EntityId ModelBuilder::add(PropertyEntry entry) {
    checkBuilding();
    checkExists(entry.owner);
    checkExists(entry.global);
    const EntityId id = makeId(K::LocalProperty, data_.localProperties.size());
    intern(K::LocalProperty, entry.owner, propertyKey(entry.role, entry.name), id);
    const EntityId owner = entry.owner;
    const EntityId global = entry.global;
    data_.localProperties.push_back(std::move(entry));
    relate(Relation::Def, owner, id);
    relate(Relation::Belongs, id, global);
    return id;
}

EntityId ModelBuilder::add(GlobalTestEntry entry) {
    checkBuilding();
    if (entry.level == TestLevel::PackageTest)
        throw ModelError(ModelError::Code::KindMismatch, "package tests have no global entity");
    checkExists(entry.introducer);
    checkExists(entry.target);
    const K kind = globalTestKind(entry.level);
    auto& table = kind == K::GlobalTestClass ? data_.globalTestClasses : data_.globalTestProperties;
    const EntityId id = makeId(kind, table.size());
    intern(kind, entry.introducer, entry.name, id);
    const EntityId intro = entry.introducer;
    table.push_back(std::move(entry));
    relate(Relation::Intro, intro, id);
    return id;
}

EntityId ModelBuilder::add(TestEntry entry) {
    checkBuilding();
    checkExists(entry.owner);
    checkExists(entry.target);
    if (entry.global)
        checkExists(*entry.global);
    const K kind = localTestKind(entry.level);
    std::vector<TestEntry>* table = nullptr;
    switch (kind) {
    case K::LocalTestProperty: table = &data_.localTestProperties; break;
    case K::LocalTestClass: table = &data_.localTestClasses; break;
    default: table = &data_.testPackages; break;
    }
    const EntityId id = makeId(kind, table->size());
    intern(kind, entry.owner, entry.name, id);
    const EntityId owner = entry.owner;
    const std::optional<EntityId> global = entry.global;
    table->push_back(std::move(entry));
    if (kind == K::TestPackage) {
        relate(Relation::Has, owner, id);
        relate(Relation::Def, owner, id);
    } else {
        relate(Relation::Def, owner, id);
        if (global)
            relate(Relation::Belongs, id, *global);
    }
    return id;
}

bool ModelBuilder::contains(Relation rel, EntityId from, EntityId to) const {
    return data_.relations[static_cast<std::size_t>(rel)].contains({from, to});
}

bool ModelBuilder::redefReaches(EntityId from, EntityId to) const {
    const auto& redef = data_.relations[static_cast<std::size_t>(Relation::Redef)];
    std::set<EntityId> seen;
    std::vector<EntityId> stack{from};
    while (!stack.empty()) {
        const EntityId cur = stack.back();
        stack.pop_back();
        if (cur == to)
            return true;
        if (!seen.insert(cur).second)
            continue;
        for (auto it = redef.lower_bound({cur, EntityId{K::Package, 0}}); it != redef.end() && it->first == cur; ++it)
            stack.push_back(it->second);
    }
    return false;
}

void ModelBuilder::relate(Relation rel, EntityId from, EntityId to) {
    checkBuilding();
    checkExists(from);
    checkExists(to);
    if (!admissible(rel, from.kind, to.kind))
        throw ModelError(ModelError::Code::KindMismatch,
                         std::string(toString(rel)) + " cannot relate " + toString(from) + " to " + toString(to),
                         {from, to});
    if (rel == Relation::Redef && redefReaches(to, from))
        throw ModelError(ModelError::Code::RelationCycle,
                         "redef(" + toString(from) + ", " + toString(to) + ") closes a cycle", {from, to});
    data_.relations[static_cast<std::size_t>(rel)].emplace(from, to);
}

void ModelBuilder::unrelate(Relation rel, EntityId from, EntityId to) {
    checkBuilding();
    data_.relations[static_cast<std::size_t>(rel)].erase({from, to});
}

void ModelBuilder::markResolved(EntityId site, std::string subject) {
    checkBuilding();
    checkExists(site);
    data_.resolved.insert(ResolvedSite{site, std::move(subject)});
}

void ModelBuilder::setParents(EntityId cls, std::vector<EntityId> parents) {
    checkBuilding();
    checkExists(cls);
    if (cls.kind != K::Class)
        throw ModelError(ModelError::Code::WrongKind, toString(cls) + " is not a class", {cls});
    data_.classes[cls.index].parents = std::move(parents);
}

Model ModelBuilder::seal() {
    checkBuilding();
    std::vector<std::string> problems;
    std::vector<EntityId> offenders;
    auto problem = [&](std::string msg, std::initializer_list<EntityId> ids) {
        problems.push_back(std::move(msg));
        offenders.insert(offenders.end(), ids);
    };

    // Parent lists: well-kinded, duplicate-free, acyclic.
    const std::size_t nClasses = data_.classes.size();
    for (std::size_t i = 0; i < nClasses; ++i) {
        const EntityId cls = makeId(K::Class, i);
        const auto& parents = data_.classes[i].parents;
        std::set<EntityId> seen;
        for (const EntityId& p : parents) {
            if (p.kind != K::Class || p.index >= nClasses)
                problem(toString(cls) + " lists a parent that is not a class", {cls, p});
            else if (!seen.insert(p).second)
                problem(toString(cls) + " lists parent " + toString(p) + " twice", {cls, p});
        }
    }
    if (problems.empty()) {
        // 0 = unvisited, 1 = on stack, 2 = done
        std::vector<int> state(nClasses, 0);
        std::function<bool(std::size_t)> cyclic = [&](std::size_t c) {
            if (state[c] == 1)
                return true;
            if (state[c] == 2)
                return false;
            state[c] = 1;
            for (const EntityId& p : data_.classes[c].parents) {
                if (cyclic(p.index))
                    return true;
            }
            state[c] = 2;
            return false;
        };
        for (std::size_t i = 0; i < nClasses; ++i) {
            if (cyclic(i)) {
                problem("class hierarchy is cyclic through " + data_.classes[i].name, {makeId(K::Class, i)});
                break;
            }
        }
    }

    // belongs: total and functional on local entities, consistent with entries.
    const auto& belongs = data_.relations[static_cast<std::size_t>(Relation::Belongs)];
    std::map<EntityId, std::vector<EntityId>> belongsOf;
    for (const auto& [from, to] : belongs)
        belongsOf[from].push_back(to);
    auto checkBelongs = [&](EntityId local, std::optional<EntityId> expected) {
        const auto it = belongsOf.find(local);
        const std::size_t n = it == belongsOf.end() ? 0 : it->second.size();
        if (n != 1)
            problem(toString(local) + " belongs to " + std::to_string(n) + " global entities", {local});
        else if (expected && it->second.front() != *expected)
            problem(toString(local) + " belongs to a global other than its declared one", {local});
    };
    for (std::size_t i = 0; i < data_.localProperties.size(); ++i)
        checkBelongs(makeId(K::LocalProperty, i), data_.localProperties[i].global);
    for (std::size_t i = 0; i < data_.localTestProperties.size(); ++i)
        checkBelongs(makeId(K::LocalTestProperty, i), data_.localTestProperties[i].global);
    for (std::size_t i = 0; i < data_.localTestClasses.size(); ++i)
        checkBelongs(makeId(K::LocalTestClass, i), data_.localTestClasses[i].global);

    // intro: each global entity introduced by exactly one class.
    std::map<EntityId, std::size_t> introCount;
    for (const auto& [from, to] : data_.relations[static_cast<std::size_t>(Relation::Intro)])
        ++introCount[to];
    auto checkIntro = [&](K kind, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            const EntityId g = makeId(kind, i);
            if (introCount[g] != 1)
                problem(toString(g) + " is introduced by " + std::to_string(introCount[g]) + " classes", {g});
        }
    };
    checkIntro(K::GlobalProperty, data_.globalProperties.size());
    checkIntro(K::GlobalTestProperty, data_.globalTestProperties.size());
    checkIntro(K::GlobalTestClass, data_.globalTestClasses.size());

    // redef: irreflexive, same global on both ends. Acyclicity is enforced by relate().
    for (const auto& [from, to] : data_.relations[static_cast<std::size_t>(Relation::Redef)]) {
        if (from == to) {
            problem("redef is reflexive on " + toString(from), {from});
            continue;
        }
        const auto a = belongsOf.find(from);
        const auto b = belongsOf.find(to);
        if (a != belongsOf.end() && b != belongsOf.end() && a->second != b->second)
            problem("redef(" + toString(from) + ", " + toString(to) + ") crosses global entities", {from, to});
    }

    if (!problems.empty()) {
        std::string msg = "model invalid: ";
        for (std::size_t i = 0; i < problems.size(); ++i)
            msg += (i ? "; " : "") + problems[i];
        throw ModelError(ModelError::Code::ModelInvalid, msg, std::move(offenders));
    }

    Model model;
    model.data_ = data_;
    model.names_ = names_;
    model.buildIndices();
    sealed_ = true;
    return model;
}

// ---------------------------------------------------------------------------
// Model

void Model::buildIndices() {
    for (std::size_t r = 0; r < kRelationCount; ++r) {
        for (const auto& [from, to] : data_.relations[r]) {
            forward_[r][from].push_back(to);
            backward_[r][to].push_back(from);
        }
        // forward lists come out sorted from the ordered set; backward lists need sorting
        for (auto& [_, v] : backward_[r])
            std::sort(v.begin(), v.end());
    }

    const std::size_t n = data_.classes.size();
    ancestors_.assign(n, {});
    hierarchy_.assign(n, {});
    depth_.assign(n, 0);
    std::vector<bool> done(n, false);
    std::function<void(std::size_t)> visit = [&](std::size_t c) {
        if (done[c])
            return;
        std::set<EntityId> acc;
        std::uint32_t d = 0;
        for (const EntityId& p : data_.classes[c].parents) {
            visit(p.index);
            acc.insert(p);
            acc.insert(ancestors_[p.index].begin(), ancestors_[p.index].end());
            d = std::max(d, depth_[p.index] + 1);
        }
        ancestors_[c].assign(acc.begin(), acc.end());
        acc.insert(makeId(K::Class, c));
        hierarchy_[c].assign(acc.begin(), acc.end());
        depth_[c] = d;
        done[c] = true;
    };
    for (std::size_t i = 0; i < n; ++i)
        visit(i);
}

void Model::expectKind(EntityId id, std::initializer_list<EntityKind> kinds) const {
    if (std::find(kinds.begin(), kinds.end(), id.kind) == kinds.end())
        throw ModelError(ModelError::Code::WrongKind, toString(id) + " has the wrong kind for this query", {id});
    if (!exists(id))
        throw ModelError(ModelError::Code::UnknownEntity, "unknown entity " + toString(id), {id});
}

std::size_t Model::size(EntityKind kind) const { return kindSize(data_, kind); }

std::size_t Model::entityCount() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < kEntityKindCount; ++k)
        n += kindSize(data_, static_cast<K>(k));
    return n;
}

std::vector<EntityId> Model::ids(EntityKind kind) const {
    std::vector<EntityId> out;
    const std::size_t n = size(kind);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(makeId(kind, i));
    return out;
}

bool Model::exists(EntityId id) const { return id.index < kindSize(data_, id.kind); }

const PackageEntry& Model::package(EntityId id) const {
    expectKind(id, {K::Package});
    return data_.packages[id.index];
}

const ClassEntry& Model::classEntry(EntityId id) const {
    expectKind(id, {K::Class});
    return data_.classes[id.index];
}

const GlobalPropertyEntry& Model::globalProperty(EntityId id) const {
    expectKind(id, {K::GlobalProperty});
    return data_.globalProperties[id.index];
}

const PropertyEntry& Model::localProperty(EntityId id) const {
    expectKind(id, {K::LocalProperty});
    return data_.localProperties[id.index];
}

const GlobalTestEntry& Model::globalTest(EntityId id) const {
    expectKind(id, {K::GlobalTestProperty, K::GlobalTestClass});
    return id.kind == K::GlobalTestClass ? data_.globalTestClasses[id.index] : data_.globalTestProperties[id.index];
}

const TestEntry& Model::localTest(EntityId id) const {
    expectKind(id, {K::LocalTestProperty, K::LocalTestClass, K::TestPackage});
    switch (id.kind) {
    case K::LocalTestClass: return data_.localTestClasses[id.index];
    case K::TestPackage: return data_.testPackages[id.index];
    default: return data_.localTestProperties[id.index];
    }
}

std::string Model::displayName(EntityId id) const {
    switch (id.kind) {
    case K::Package: return package(id).name;
    case K::Class: return classEntry(id).name;
    case K::GlobalProperty: {
        const auto& g = globalProperty(id);
        return classEntry(g.introducer).name + "." + g.name;
    }
    case K::LocalProperty: {
        const auto& l = localProperty(id);
        return classEntry(l.owner).name + "." + l.name;
    }
    case K::GlobalTestProperty:
    case K::GlobalTestClass: {
        const auto& g = globalTest(id);
        return classEntry(g.introducer).name + "." + g.name;
    }
    case K::LocalTestProperty:
    case K::LocalTestClass:
    case K::TestPackage: {
        const auto& t = localTest(id);
        return displayName(t.owner) + "." + t.name;
    }
    }
    return toString(id);
}

bool Model::contains(Relation rel, EntityId from, EntityId to) const {
    return data_.relations[idx(rel)].contains({from, to});
}

const std::vector<EntityId>& Model::successors(Relation rel, EntityId from) const {
    const auto& m = forward_[idx(rel)];
    const auto it = m.find(from);
    return it == m.end() ? kEmpty : it->second;
}

const std::vector<EntityId>& Model::predecessors(Relation rel, EntityId to) const {
    const auto& m = backward_[idx(rel)];
    const auto it = m.find(to);
    return it == m.end() ? kEmpty : it->second;
}

const std::vector<EntityId>& Model::ancestors(EntityId cls) const {
    expectKind(cls, {K::Class});
    return ancestors_[cls.index];
}

const std::vector<EntityId>& Model::hierarchy(EntityId cls) const {
    expectKind(cls, {K::Class});
    return hierarchy_[cls.index];
}

bool Model::isAncestorOrSelf(EntityId ancestor, EntityId cls) const {
    const auto& h = hierarchy(cls);
    return std::binary_search(h.begin(), h.end(), ancestor);
}

std::uint32_t Model::depth(EntityId cls) const {
    expectKind(cls, {K::Class});
    return depth_[cls.index];
}

std::vector<EntityId> Model::descendants(EntityId cls) const {
    expectKind(cls, {K::Class});
    std::vector<EntityId> out;
    for (std::size_t i = 0; i < data_.classes.size(); ++i) {
        const auto& anc = ancestors_[i];
        if (std::binary_search(anc.begin(), anc.end(), cls))
            out.push_back(makeId(K::Class, i));
    }
    return out;
}

EntityId Model::introducerOf(EntityId global) const {
    expectKind(global, {K::GlobalProperty, K::GlobalTestProperty, K::GlobalTestClass});
    return predecessors(Relation::Intro, global).front();
}

EntityId Model::ownerOf(EntityId local) const {
    if (local.kind == K::LocalProperty)
        return localProperty(local).owner;
    return localTest(local).owner;
}

std::optional<EntityId> Model::findClass(std::string_view name) const {
    for (std::size_t i = 0; i < data_.classes.size(); ++i) {
        if (data_.classes[i].name == name)
            return makeId(K::Class, i);
    }
    return std::nullopt;
}

std::optional<EntityId> Model::find(EntityKind kind, EntityId owner, std::string_view key) const {
    auto it = names_.find(std::make_tuple(kind, owner, std::string(key)));
    if (it == names_.end())
        return std::nullopt;
    return it->second;
}

bool Model::isResolved(EntityId site, std::string_view subject) const {
    return data_.resolved.contains(ResolvedSite{site, std::string(subject)});
}

} // namespace tol::metamodel
