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

/// @file metamodel.hpp
/// Entity and relation store for the unit-testing metamodel.
///
/// Nine entity kinds are kept in dense per-kind tables and addressed by
/// EntityId (kind + index). Five binary relations connect them:
///
///   redef    local -> local of the same kind and the same global entity
///   has      package -> class | test package, class -> global property |
///            global test property (the class's G_c / GTP_c), and
///            local property -> global test property (test attachment)
///   intro    class -> the global entity it introduces
///   belongs  local entity -> its global entity
///   def      class -> local entity it defines, package -> test package
///
/// A ModelBuilder accumulates entities and pairs; seal() validates the
/// structural invariants and produces an immutable Model with the class
/// ancestor closure precomputed. A sealed Model has no mutable state and
/// may be shared freely between threads.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace tol::metamodel {

enum class EntityKind : std::uint8_t {
    Package,
    Class,
    GlobalProperty,
    LocalProperty,
    GlobalTestProperty,
    LocalTestProperty,
    GlobalTestClass,
    LocalTestClass,
    TestPackage,
};
inline constexpr std::size_t kEntityKindCount = 9;

std::string_view toString(EntityKind kind);

struct EntityId {
    EntityKind kind = EntityKind::Package;
    std::uint32_t index = 0;

    auto operator<=>(const EntityId&) const = default;
};

std::string toString(EntityId id);

enum class Relation : std::uint8_t { Redef, Has, Intro, Belongs, Def };
inline constexpr std::size_t kRelationCount = 5;
inline constexpr std::array<Relation, kRelationCount> kAllRelations{
    Relation::Redef, Relation::Has, Relation::Intro, Relation::Belongs, Relation::Def};

std::string_view toString(Relation rel);

enum class PropertyRole : std::uint8_t { Field, Method };
enum class Visibility : std::uint8_t { Public, Private };
enum class TestLevel : std::uint8_t { PropertyTest, ClassTest, PackageTest };

std::string_view toString(PropertyRole role);
std::string_view toString(Visibility vis);
std::string_view toString(TestLevel level);

/// Index into the binder's table of source bodies (method or test blocks).
using BodyRef = std::uint32_t;
inline constexpr BodyRef kNoBody = 0xffffffffu;

/// Type names as written in source: "int", "bool", "string", "Color",
/// "void" or a class name.
struct Signature {
    std::vector<std::string> params; // methods only
    std::string type;                // return type for methods, declared type for fields

    bool operator==(const Signature&) const = default;
};

struct PackageEntry {
    std::string name;

    bool operator==(const PackageEntry&) const = default;
};

struct ClassEntry {
    std::string name;
    EntityId package;
    std::vector<EntityId> parents;
    std::uint32_t declarationIndex = 0;

    bool operator==(const ClassEntry&) const = default;
};

struct GlobalPropertyEntry {
    PropertyRole role = PropertyRole::Method;
    std::string name;
    EntityId introducer; // class; mirrored as intro(introducer, global)

    bool operator==(const GlobalPropertyEntry&) const = default;
};

struct PropertyEntry {
    PropertyRole role = PropertyRole::Method;
    std::string name;
    Signature signature;
    Visibility visibility = Visibility::Public;
    EntityId owner;  // class; mirrored as def(owner, local)
    EntityId global; // mirrored as belongs(local, global)
    BodyRef body = kNoBody;
    /// Created by conflict resolution rather than declared in source.
    bool synthesized = false;
    /// For a member introduced by a rename: the inherited local it renames.
    std::optional<EntityId> renamedFrom;

    bool operator==(const PropertyEntry&) const = default;
};

/// Global test property (level PropertyTest) or global test class (level
/// ClassTest).
struct GlobalTestEntry {
    TestLevel level = TestLevel::PropertyTest;
    std::string name;
    EntityId introducer; // class
    EntityId target;     // GlobalProperty for property tests, Class for class tests

    bool operator==(const GlobalTestEntry&) const = default;
};

/// Local test property, local test class, or test package.
struct TestEntry {
    TestLevel level = TestLevel::PropertyTest;
    std::string name;
    EntityId owner;  // class, or package for package tests
    EntityId target; // GlobalProperty, Class or Package according to level
    BodyRef body = kNoBody;
    std::optional<EntityId> global; // absent for package tests
    bool synthesized = false;

    bool operator==(const TestEntry&) const = default;
};

/// A (site class, subject name) pair whose conflict was settled by a
/// resolution.
struct ResolvedSite {
    EntityId site;
    std::string subject;

    auto operator<=>(const ResolvedSite&) const = default;
};

class ModelError : public std::runtime_error {
public:
    enum class Code { DuplicateEntity, RelationCycle, KindMismatch, ModelInvalid, UnknownEntity, WrongKind, Sealed };

    ModelError(Code code, const std::string& message, std::vector<EntityId> offenders = {})
        : std::runtime_error(message), code_(code), offenders_(std::move(offenders)) {}

    [[nodiscard]] Code code() const { return code_; }
    [[nodiscard]] const std::vector<EntityId>& offenders() const { return offenders_; }

private:
    Code code_;
    std::vector<EntityId> offenders_;
};

std::string_view toString(ModelError::Code code);

using RelationPair = std::pair<EntityId, EntityId>;

/// Raw tables shared by the builder and the sealed model.
struct ModelData {
    std::vector<PackageEntry> packages;
    std::vector<ClassEntry> classes;
    std::vector<GlobalPropertyEntry> globalProperties;
    std::vector<PropertyEntry> localProperties;
    std::vector<GlobalTestEntry> globalTestProperties;
    std::vector<TestEntry> localTestProperties;
    std::vector<GlobalTestEntry> globalTestClasses;
    std::vector<TestEntry> localTestClasses;
    std::vector<TestEntry> testPackages;
    std::array<std::set<RelationPair>, kRelationCount> relations;
    std::set<ResolvedSite> resolved;

    bool operator==(const ModelData&) const = default;
};

class Model;

class ModelBuilder {
public:
    ModelBuilder() = default;
    /// Starts a new building phase from the contents of a sealed model.
    explicit ModelBuilder(const Model& model);

    EntityId add(PackageEntry entry);
    EntityId add(ClassEntry entry);
    EntityId add(GlobalPropertyEntry entry);
    EntityId add(PropertyEntry entry);
    EntityId add(GlobalTestEntry entry);
    EntityId add(TestEntry entry);

    /// Idempotent. Throws KindMismatch for inadmissible endpoint kinds and
    /// RelationCycle when a redef pair would close a cycle.
    void relate(Relation rel, EntityId from, EntityId to);
    void unrelate(Relation rel, EntityId from, EntityId to);
    void markResolved(EntityId site, std::string subject);

    /// Replaces the parent list of a class; used before sealing only.
    void setParents(EntityId cls, std::vector<EntityId> parents);

    [[nodiscard]] const ModelData& data() const { return data_; }
    [[nodiscard]] bool contains(Relation rel, EntityId from, EntityId to) const;
    [[nodiscard]] std::optional<EntityId> find(EntityKind kind, EntityId owner, std::string_view key) const;

    /// Validates and freezes. The builder is left in the sealed state and
    /// rejects further mutation.
    Model seal();

private:
    void checkExists(EntityId id) const;
    void checkBuilding() const;
    void intern(EntityKind kind, EntityId owner, std::string key, EntityId id);
    [[nodiscard]] bool redefReaches(EntityId from, EntityId to) const;

    ModelData data_;
    std::map<std::tuple<EntityKind, EntityId, std::string>, EntityId> names_;
    bool sealed_ = false;
};

/// Immutable, validated metamodel instance.
class Model {
public:
    Model() = default;

    [[nodiscard]] std::size_t size(EntityKind kind) const;
    [[nodiscard]] std::size_t entityCount() const;
    [[nodiscard]] std::vector<EntityId> ids(EntityKind kind) const;
    [[nodiscard]] bool exists(EntityId id) const;

    [[nodiscard]] const PackageEntry& package(EntityId id) const;
    [[nodiscard]] const ClassEntry& classEntry(EntityId id) const;
    [[nodiscard]] const GlobalPropertyEntry& globalProperty(EntityId id) const;
    [[nodiscard]] const PropertyEntry& localProperty(EntityId id) const;
    /// GlobalTestProperty or GlobalTestClass.
    [[nodiscard]] const GlobalTestEntry& globalTest(EntityId id) const;
    /// LocalTestProperty, LocalTestClass or TestPackage.
    [[nodiscard]] const TestEntry& localTest(EntityId id) const;

    /// Human-readable name: "Cow", "Cow.lastFoodEaten", "Animal.TestNotNull".
    [[nodiscard]] std::string displayName(EntityId id) const;

    [[nodiscard]] bool contains(Relation rel, EntityId from, EntityId to) const;
    /// All `to` with rel(from, to), ascending.
    [[nodiscard]] const std::vector<EntityId>& successors(Relation rel, EntityId from) const;
    /// All `from` with rel(from, to), ascending.
    [[nodiscard]] const std::vector<EntityId>& predecessors(Relation rel, EntityId to) const;
    [[nodiscard]] const std::set<RelationPair>& pairs(Relation rel) const { return data_.relations[idx(rel)]; }

    /// Parents_c: every proper ancestor of `cls`, ascending by index.
    [[nodiscard]] const std::vector<EntityId>& ancestors(EntityId cls) const;
    /// Parents_c plus c itself, ascending by index.
    [[nodiscard]] const std::vector<EntityId>& hierarchy(EntityId cls) const;
    [[nodiscard]] bool isAncestorOrSelf(EntityId ancestor, EntityId cls) const;
    /// Longest parent chain from `cls` to a root; roots have depth 0.
    [[nodiscard]] std::uint32_t depth(EntityId cls) const;
    /// Classes that have `cls` as a proper ancestor, ascending.
    [[nodiscard]] std::vector<EntityId> descendants(EntityId cls) const;

    /// The class recorded by intro(class, global).
    [[nodiscard]] EntityId introducerOf(EntityId global) const;
    /// The owning class (or package) of a local entity.
    [[nodiscard]] EntityId ownerOf(EntityId local) const;

    [[nodiscard]] std::optional<EntityId> findClass(std::string_view name) const;
    [[nodiscard]] std::optional<EntityId> find(EntityKind kind, EntityId owner, std::string_view key) const;

    [[nodiscard]] const std::set<ResolvedSite>& resolvedSites() const { return data_.resolved; }
    [[nodiscard]] bool isResolved(EntityId site, std::string_view subject) const;

    [[nodiscard]] const ModelData& data() const { return data_; }

    bool operator==(const Model& other) const { return data_ == other.data_; }

private:
    friend class ModelBuilder;
    static std::size_t idx(Relation rel) { return static_cast<std::size_t>(rel); }
    void expectKind(EntityId id, std::initializer_list<EntityKind> kinds) const;
    void buildIndices();

    ModelData data_;
    std::map<std::tuple<EntityKind, EntityId, std::string>, EntityId> names_;
    std::array<std::map<EntityId, std::vector<EntityId>>, kRelationCount> forward_;
    std::array<std::map<EntityId, std::vector<EntityId>>, kRelationCount> backward_;
    std::vector<std::vector<EntityId>> ancestors_;
    std::vector<std::vector<EntityId>> hierarchy_;
    std::vector<std::uint32_t> depth_;
};

/// Name-scope key used for properties: role and name share one namespace
/// per owner, so a field and a method may both be called "x".
std::string propertyKey(PropertyRole role, std::string_view name);

} // namespace tol::metamodel
