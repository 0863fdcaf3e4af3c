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

#include "tol/model_dump.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "json.hpp"

namespace tol::dump {

using Json = nlohmann::ordered_json;
using metamodel::EntityId;
using metamodel::EntityKind;
using metamodel::Model;
using metamodel::Relation;

namespace {

constexpr EntityKind kOrder[] = {
    EntityKind::Package,           EntityKind::Class,          EntityKind::GlobalProperty,
    EntityKind::LocalProperty,     EntityKind::GlobalTestProperty, EntityKind::LocalTestProperty,
    EntityKind::GlobalTestClass,   EntityKind::LocalTestClass, EntityKind::TestPackage,
};

class Dumper {
public:
    explicit Dumper(const driver::Compilation& c) : c_(c), m_(c.program->model) {
        std::size_t next = 0;
        for (EntityKind k : kOrder) {
            for (const EntityId& id : m_.ids(k))
                ids_[id] = next++;
        }
    }

    Json run() const {
        Json j;
        j["packages"] = packages();
        j["classes"] = classes();
        j["properties"] = properties();
        j["tests"] = tests();
        j["relations"] = relations();
        j["resolvedSites"] = resolvedSites();
        j["resolved"] = resolved();
        j["plan"] = plan();
        j["conflicts"] = conflicts();
        j["classification"] = classification();
        return j;
    }

private:
    std::size_t id(EntityId e) const { return ids_.at(e); }

    Json idList(const std::vector<EntityId>& es) const {
        Json a = Json::array();
        for (const EntityId& e : es)
            a.push_back(id(e));
        return a;
    }

    Json packages() const {
        Json a = Json::array();
        for (const EntityId& p : m_.ids(EntityKind::Package))
            a.push_back({{"id", id(p)}, {"name", m_.package(p).name}});
        return a;
    }

    Json classes() const {
        Json a = Json::array();
        for (const EntityId& c : m_.ids(EntityKind::Class)) {
            const auto& e = m_.classEntry(c);
            a.push_back({{"id", id(c)},
                         {"name", e.name},
                         {"package", id(e.package)},
                         {"parents", idList(e.parents)},
                         {"declarationIndex", e.declarationIndex}});
        }
        return a;
    }

    Json properties() const {
        Json a = Json::array();
        for (const EntityId& g : m_.ids(EntityKind::GlobalProperty)) {
            const auto& e = m_.globalProperty(g);
            a.push_back({{"id", id(g)},
                         {"entity", "global"},
                         {"role", metamodel::toString(e.role)},
                         {"name", e.name},
                         {"introducer", id(e.introducer)}});
        }
        for (const EntityId& l : m_.ids(EntityKind::LocalProperty)) {
            const auto& e = m_.localProperty(l);
            Json j{{"id", id(l)},
                   {"entity", "local"},
                   {"role", metamodel::toString(e.role)},
                   {"name", e.name},
                   {"owner", id(e.owner)},
                   {"global", id(e.global)},
                   {"visibility", metamodel::toString(e.visibility)},
                   {"type", e.signature.type}};
            if (e.role == metamodel::PropertyRole::Method)
                j["params"] = e.signature.params;
            if (e.synthesized)
                j["synthesized"] = true;
            if (e.renamedFrom)
                j["renamedFrom"] = id(*e.renamedFrom);
            a.push_back(std::move(j));
        }
        return a;
    }

    Json tests() const {
        Json a = Json::array();
        for (EntityKind k : {EntityKind::GlobalTestProperty, EntityKind::LocalTestProperty,
                             EntityKind::GlobalTestClass, EntityKind::LocalTestClass, EntityKind::TestPackage}) {
            for (const EntityId& t : m_.ids(k)) {
                Json j{{"id", id(t)}, {"entity", metamodel::toString(k)}};
                if (k == EntityKind::GlobalTestProperty || k == EntityKind::GlobalTestClass) {
                    const auto& e = m_.globalTest(t);
                    j["level"] = metamodel::toString(e.level);
                    j["name"] = e.name;
                    j["introducer"] = id(e.introducer);
                    j["target"] = id(e.target);
                } else {
                    const auto& e = m_.localTest(t);
                    j["level"] = metamodel::toString(e.level);
                    j["name"] = e.name;
                    j["owner"] = id(e.owner);
                    j["target"] = id(e.target);
                    j["global"] = e.global ? Json(id(*e.global)) : Json(nullptr);
                    if (e.synthesized)
                        j["synthesized"] = true;
                }
                a.push_back(std::move(j));
            }
        }
        return a;
    }

    Json relations() const {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> rows;
        for (Relation r : metamodel::kAllRelations) {
            for (const auto& [from, to] : m_.pairs(r))
                rows.emplace_back(static_cast<std::size_t>(r), id(from), id(to));
        }
        std::sort(rows.begin(), rows.end());
        Json a = Json::array();
        for (const auto& [r, from, to] : rows)
            a.push_back({{"rel", metamodel::toString(metamodel::kAllRelations[r])}, {"from", from}, {"to", to}});
        return a;
    }

    Json resolvedSites() const {
        Json a = Json::array();
        for (const auto& s : m_.resolvedSites())
            a.push_back({{"site", id(s.site)}, {"subject", s.subject}});
        return a;
    }

    Json resolved() const {
        Json perClass = Json::array();
        for (const auto& [cls, cs] : c_.sets.perClass)
            perClass.push_back({{"class", id(cls)}, {"gtc", idList(cs.gtcSet)}, {"ltc", idList(cs.ltcSet)}});
        Json perProp = Json::array();
        for (const auto& [key, ps] : c_.sets.perGlobalProperty) {
            Json ltp = Json::array();
            for (const auto& [gtp, tests] : ps.ltpPerGtp)
                ltp.push_back({{"gtp", id(gtp)}, {"tests", idList(tests)}});
            perProp.push_back({{"class", id(key.first)},
                               {"property", id(key.second)},
                               {"locals", idList(ps.localProps)},
                               {"gtp", idList(ps.gtpSet)},
                               {"introducedGtp", idList(ps.introducedGtpSet)},
                               {"ltp", std::move(ltp)}});
        }
        return {{"perClass", std::move(perClass)}, {"perGlobalProperty", std::move(perProp)}};
    }

    Json plan() const {
        Json a = Json::array();
        for (const auto& s : c_.plan.steps) {
            const char* kind = s.kind == resolver::PlanStep::Kind::PackageTest ? "PackageTest"
                               : s.kind == resolver::PlanStep::Kind::ClassTest ? "ClassTest"
                                                                               : "PropertyTest";
            a.push_back({{"kind", kind},
                         {"class", s.executingClass ? Json(id(*s.executingClass)) : Json(nullptr)},
                         {"test", id(s.test)},
                         {"property", s.targetProperty ? Json(id(*s.targetProperty)) : Json(nullptr)}});
        }
        return a;
    }

    Json conflicts() const {
        Json a = Json::array();
        for (const auto& d : c_.conflicts) {
            a.push_back({{"kind", conflicts::toString(d.kind)},
                         {"site", id(d.site)},
                         {"subject", d.subject},
                         {"candidates", idList(d.candidates)},
                         {"remedies", d.remedies},
                         {"message", conflicts::format(m_, d)}});
        }
        return a;
    }

    Json classification() const {
        Json a = Json::array();
        for (const auto& [key, kind] : binder::classifyMethods(*c_.program))
            a.push_back({{"class", id(key.first)}, {"property", id(key.second)}, {"kind", binder::toString(kind)}});
        return a;
    }

    const driver::Compilation& c_;
    const Model& m_;
    std::map<EntityId, std::size_t> ids_;
};

} // namespace

std::string modelJson(const driver::Compilation& c) { return Dumper(c).run().dump(2) + "\n"; }

} // namespace tol::dump
