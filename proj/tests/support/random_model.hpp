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

// Random metamodel instances built straight through ModelBuilder.
//
// Classes form a DAG (parents always have a smaller index) of at most
// `maxClasses` classes, `maxParents` parents each and depth `maxDepth`.
// Each global property gets a local in its introducer and, at random, in
// descendants; every global test property gets a local test in its
// introducer and random redefinitions below. Redefinitions point at the
// nearest inherited locals, as the binder would produce.

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tol/metamodel.hpp"

namespace tol::gen {

using namespace tol::metamodel;

struct Shape {
    int maxClasses = 10;
    int maxParents = 3;
    int maxDepth = 4;
    int maxGlobals = 4;
    int maxTestsPerProperty = 3;
    int maxClassTests = 3;
    /// Drop a random subset of has(class, gtp) pairs.
    bool sparseHas = true;
    /// Give every global test a distinct name (else names repeat).
    bool uniqueTestNames = false;
    /// One root class introducing every global property; every other class
    /// has a parent. Multiple inheritance then mostly forms diamonds.
    bool singleRoot = false;
};

class Generator {
public:
    explicit Generator(unsigned seed) : rng_(seed) {}

    Model make(const Shape& s) {
        ModelBuilder b;
        parents_.clear();
        const EntityId pkg = b.add(PackageEntry{"p"});
        const int n = pick(1, s.maxClasses);
        std::vector<int> depth;
        for (int i = 0; i < n; ++i) {
            std::vector<int> pool;
            for (int j = 0; j < i; ++j) {
                if (depth[j] < s.maxDepth)
                    pool.push_back(j);
            }
            std::shuffle(pool.begin(), pool.end(), rng_);
            const int k = std::min<int>(static_cast<int>(pool.size()), pick(s.singleRoot ? 1 : 0, s.maxParents));
            std::vector<EntityId> ps;
            int d = 0;
            for (int t = 0; t < k; ++t) {
                ps.push_back(EntityId{EntityKind::Class, static_cast<std::uint32_t>(pool[t])});
                d = std::max(d, depth[pool[t]] + 1);
            }
            std::sort(ps.begin(), ps.end());
            depth.push_back(d);
            parents_.push_back(ps);
            b.add(ClassEntry{"C" + std::to_string(i), pkg, ps, static_cast<std::uint32_t>(i)});
        }

        int testName = 0;
        const int globals = pick(0, s.maxGlobals);
        for (int gi = 0; gi < globals; ++gi) {
            const EntityId intro = s.singleRoot ? EntityId{EntityKind::Class, 0} : randomClass(n);
            const EntityId g = b.add(GlobalPropertyEntry{PropertyRole::Method, "m" + std::to_string(gi), intro});
            std::map<EntityId, EntityId> localOf; // class -> its local of g
            for (int c = 0; c < n; ++c) {
                const EntityId cls{EntityKind::Class, static_cast<std::uint32_t>(c)};
                if (!isAncestorOrSelf(intro, cls))
                    continue;
                b.relate(Relation::Has, cls, g);
                if (cls != intro && !chance(0.4))
                    continue;
                PropertyEntry e;
                e.role = PropertyRole::Method;
                e.name = "m" + std::to_string(gi);
                e.owner = cls;
                e.global = g;
                const EntityId l = b.add(std::move(e));
                for (const EntityId& r : nearest(cls, localOf))
                    b.relate(Relation::Redef, l, r);
                localOf[cls] = l;
            }

            const int tests = pick(0, s.maxTestsPerProperty);
            for (int ti = 0; ti < tests; ++ti) {
                // Introduced by a class that sees g, attached to a local
                // that class sees.
                std::vector<EntityId> seers;
                for (int c = 0; c < n; ++c) {
                    const EntityId cls{EntityKind::Class, static_cast<std::uint32_t>(c)};
                    if (isAncestorOrSelf(intro, cls))
                        seers.push_back(cls);
                }
                const EntityId tIntro = seers[pick(0, static_cast<int>(seers.size()) - 1)];
                const std::string name =
                    s.uniqueTestNames ? "T" + std::to_string(testName++) : "T" + std::to_string(pick(0, 2));
                if (b.find(EntityKind::GlobalTestProperty, tIntro, name) ||
                    b.find(EntityKind::LocalTestProperty, tIntro, name))
                    continue;
                const EntityId gtp = b.add(GlobalTestEntry{TestLevel::PropertyTest, name, tIntro, g});
                std::vector<EntityId> attach;
                if (localOf.count(tIntro))
                    attach = {localOf[tIntro]};
                else
                    attach = nearest(tIntro, localOf);
                for (const EntityId& l : attach)
                    b.relate(Relation::Has, l, gtp);
                addLocalTests(b, TestLevel::PropertyTest, name, tIntro, g, gtp, n);
                for (int c = 0; c < n; ++c) {
                    const EntityId cls{EntityKind::Class, static_cast<std::uint32_t>(c)};
                    bool sees = false;
                    for (const EntityId& l : attach)
                        sees = sees || isAncestorOrSelf(b.data().localProperties[l.index].owner, cls);
                    if (sees && !(s.sparseHas && chance(0.15)))
                        b.relate(Relation::Has, cls, gtp);
                }
            }
        }

        const int classTests = pick(0, s.maxClassTests);
        for (int ti = 0; ti < classTests; ++ti) {
            const EntityId intro = randomClass(n);
            const std::string name =
                s.uniqueTestNames ? "K" + std::to_string(testName++) : "K" + std::to_string(pick(0, 2));
            if (b.find(EntityKind::GlobalTestClass, intro, name) || b.find(EntityKind::LocalTestClass, intro, name))
                continue;
            const EntityId gtc = b.add(GlobalTestEntry{TestLevel::ClassTest, name, intro, intro});
            addLocalTests(b, TestLevel::ClassTest, name, intro, intro, gtc, n);
        }
        return b.seal();
    }

    /// Single-parent chains and trees: every class has at most one parent.
    Model makeTree(Shape s) {
        s.maxParents = 1;
        return make(s);
    }

private:
    int pick(int lo, int hi) { return hi <= lo ? lo : std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    EntityId randomClass(int n) { return EntityId{EntityKind::Class, static_cast<std::uint32_t>(pick(0, n - 1))}; }

    bool isAncestorOrSelf(EntityId a, EntityId c) const {
        if (a == c)
            return true;
        for (const EntityId& p : parents_[c.index]) {
            if (isAncestorOrSelf(a, p))
                return true;
        }
        return false;
    }

    // Locals in proper ancestors of `cls` not shadowed by a local in a more
    // derived ancestor.
    std::vector<EntityId> nearest(EntityId cls, const std::map<EntityId, EntityId>& localOf) const {
        std::vector<EntityId> owners;
        for (const auto& [owner, l] : localOf) {
            if (owner != cls && isAncestorOrSelf(owner, cls))
                owners.push_back(owner);
        }
        std::vector<EntityId> out;
        for (const EntityId& o : owners) {
            bool shadowed = false;
            for (const EntityId& o2 : owners)
                shadowed = shadowed || (o2 != o && isAncestorOrSelf(o, o2));
            if (!shadowed)
                out.push_back(localOf.at(o));
        }
        return out;
    }

    void addLocalTests(ModelBuilder& b, TestLevel level, const std::string& name, EntityId intro, EntityId target,
                       EntityId global, int n) {
        std::map<EntityId, EntityId> localOf;
        for (int c = 0; c < n; ++c) {
            const EntityId cls{EntityKind::Class, static_cast<std::uint32_t>(c)};
            if (!isAncestorOrSelf(intro, cls) || (cls != intro && !chance(0.3)))
                continue;
            const EntityKind kind =
                level == TestLevel::ClassTest ? EntityKind::LocalTestClass : EntityKind::LocalTestProperty;
            if (b.find(kind, cls, name))
                continue;
            TestEntry e;
            e.level = level;
            e.name = name;
            e.owner = cls;
            e.target = level == TestLevel::ClassTest ? cls : target;
            e.global = global;
            const EntityId lt = b.add(std::move(e));
            for (const EntityId& r : nearest(cls, localOf))
                b.relate(Relation::Redef, lt, r);
            localOf[cls] = lt;
        }
    }

    std::mt19937 rng_;
    std::vector<std::vector<EntityId>> parents_;
};

} // namespace tol::gen
