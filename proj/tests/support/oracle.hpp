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

// Reference implementation of the test-set formulas. It only reads the raw
// tables and relation pair sets (no precomputed closure, no adjacency
// index) and walks parents recursively, so it shares no code path with the
// resolver.

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tol/metamodel.hpp"

namespace tol::oracle {

using metamodel::EntityId;
using metamodel::EntityKind;
using metamodel::ModelData;
using metamodel::Relation;
using Set = std::set<EntityId>;

class Oracle {
public:
    explicit Oracle(const ModelData& d) : d_(d) {}

    bool rel(Relation r, EntityId a, EntityId b) const {
        return d_.relations[static_cast<std::size_t>(r)].count({a, b}) > 0;
    }

    Set ancestors(EntityId c) const {
        Set out;
        for (const EntityId& p : d_.classes[c.index].parents) {
            out.insert(p);
            const Set up = ancestors(p);
            out.insert(up.begin(), up.end());
        }
        return out;
    }

    Set hierarchy(EntityId c) const {
        Set h = ancestors(c);
        h.insert(c);
        return h;
    }

    unsigned depth(EntityId c) const {
        unsigned best = 0;
        for (const EntityId& p : d_.classes[c.index].parents)
            best = std::max(best, depth(p) + 1);
        return best;
    }

    // The class with def(class, local).
    EntityId definer(EntityId local) const {
        for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Def)]) {
            if (to == local)
                return from;
        }
        return EntityId{};
    }

    EntityId introducer(EntityId global) const {
        for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Intro)]) {
            if (to == global)
                return from;
        }
        return EntityId{};
    }

    Set members(EntityId global, EntityKind kind, const Set& h) const {
        Set out;
        for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Belongs)]) {
            if (to == global && from.kind == kind && h.count(definer(from)))
                out.insert(from);
        }
        return out;
    }

    Set withoutRedefined(const Set& s) const {
        Set out;
        for (const EntityId& t1 : s) {
            bool redefined = false;
            for (const EntityId& t2 : s)
                redefined = redefined || rel(Relation::Redef, t2, t1);
            if (!redefined)
                out.insert(t1);
        }
        return out;
    }

    Set globals(EntityId c) const {
        Set out;
        for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Has)]) {
            if (from == c && to.kind == EntityKind::GlobalProperty)
                out.insert(to);
        }
        return out;
    }

    Set locals(EntityId c, EntityId g) const { return members(g, EntityKind::LocalProperty, hierarchy(c)); }

    Set gtp(EntityId c, EntityId g) const {
        Set out;
        for (const EntityId& l : locals(c, g)) {
            for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Has)]) {
                if (from == l && to.kind == EntityKind::GlobalTestProperty && rel(Relation::Has, c, to))
                    out.insert(to);
            }
        }
        return out;
    }

    Set igtp(EntityId c, EntityId g) const {
        const Set h = hierarchy(c);
        Set out;
        for (const EntityId& t : gtp(c, g)) {
            if (h.count(introducer(t)))
                out.insert(t);
        }
        return out;
    }

    Set ltp(EntityId c, EntityId gt) const {
        return withoutRedefined(members(gt, EntityKind::LocalTestProperty, hierarchy(c)));
    }

    Set gtc(EntityId c) const {
        Set out;
        for (const EntityId& d : hierarchy(c)) {
            for (const auto& [from, to] : d_.relations[static_cast<std::size_t>(Relation::Intro)]) {
                if (from == d && to.kind == EntityKind::GlobalTestClass)
                    out.insert(to);
            }
        }
        return out;
    }

    Set ltc(EntityId c) const {
        const Set h = hierarchy(c);
        Set all;
        for (const EntityId& g : gtc(c)) {
            const Set m = members(g, EntityKind::LocalTestClass, h);
            all.insert(m.begin(), m.end());
        }
        return withoutRedefined(all);
    }

private:
    const ModelData& d_;
};

template <typename C>
Set toSet(const C& c) {
    return Set(c.begin(), c.end());
}

} // namespace tol::oracle
