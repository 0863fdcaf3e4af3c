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

#include "tol/binder.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "tol/resolver.hpp"

namespace tol::binder {

using metamodel::BodyRef;
using metamodel::ClassEntry;
using metamodel::EntityKind;
using metamodel::GlobalPropertyEntry;
using metamodel::GlobalTestEntry;
using metamodel::ModelBuilder;
using metamodel::PackageEntry;
using metamodel::PropertyEntry;
using metamodel::PropertyRole;
using metamodel::Relation;
using metamodel::Signature;
using metamodel::TestEntry;
using metamodel::TestLevel;

std::string_view toString(MethodKind kind) {
    switch (kind) {
    case MethodKind::Inherited: return "Inherited";
    case MethodKind::RedefNoSuper: return "RedefNoSuper";
    case MethodKind::RedefWithSuper: return "RedefWithSuper";
    case MethodKind::New: return "New";
    }
    return "?";
}

namespace {

Diagnostic error(std::string code, std::string message, const Span& span) {
    return Diagnostic{Severity::Error, std::move(code), std::move(message), span};
}

metamodel::Visibility toModel(ast::Visibility v) {
    return v == ast::Visibility::Private ? metamodel::Visibility::Private : metamodel::Visibility::Public;
}

// --- body walks -------------------------------------------------------------

struct BodyVisitor {
    std::function<void(const ast::Expr&)> onExpr;
    std::function<void(const ast::TypeRef&)> onType;

    void expr(const ast::Expr& e) const {
        onExpr(e);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ast::FieldAccess>) {
                    expr(*n.object);
                } else if constexpr (std::is_same_v<T, ast::MethodCall>) {
                    if (n.receiver)
                        expr(*n.receiver);
                    for (const auto& a : n.args)
                        expr(*a);
                } else if constexpr (std::is_same_v<T, ast::SuperCall> || std::is_same_v<T, ast::NewObject>) {
                    for (const auto& a : n.args)
                        expr(*a);
                } else if constexpr (std::is_same_v<T, ast::ClassNameOf> || std::is_same_v<T, ast::InstanceOf> ||
                                     std::is_same_v<T, ast::Unary>) {
                    expr(*n.operand);
                } else if constexpr (std::is_same_v<T, ast::Binary>) {
                    expr(*n.lhs);
                    expr(*n.rhs);
                }
            },
            e.node);
    }

    void block(const ast::Block& b) const {
        for (const auto& s : b.stmts)
            stmt(*s);
    }

    void stmt(const ast::Stmt& s) const {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ast::VarDecl>) {
                    onType(n.type);
                    if (n.init)
                        expr(*n.init);
                } else if constexpr (std::is_same_v<T, ast::Assign>) {
                    expr(*n.target);
                    expr(*n.value);
                } else if constexpr (std::is_same_v<T, ast::ExprStmt>) {
                    expr(*n.expr);
                } else if constexpr (std::is_same_v<T, ast::If>) {
                    expr(*n.cond);
                    block(n.thenBlock);
                    if (n.elseBlock)
                        block(*n.elseBlock);
                } else if constexpr (std::is_same_v<T, ast::Return>) {
                    if (n.value)
                        expr(*n.value);
                } else if constexpr (std::is_same_v<T, ast::Assert>) {
                    expr(*n.cond);
                } else if constexpr (std::is_same_v<T, ast::Print>) {
                    expr(*n.value);
                } else if constexpr (std::is_same_v<T, ast::BlockStmt>) {
                    block(n.block);
                } else if constexpr (std::is_same_v<T, ast::SuperCtorCall>) {
                    for (const auto& a : n.args)
                        expr(*a);
                }
            },
            s.node);
    }
};

// Spans of every `super(...)` statement in b, nested blocks included.
void superCalls(const ast::Block& b, std::vector<Span>& out) {
    for (const auto& st : b.stmts) {
        if (std::holds_alternative<ast::SuperCtorCall>(st->node)) {
            out.push_back(st->span);
        } else if (const auto* i = std::get_if<ast::If>(&st->node)) {
            superCalls(i->thenBlock, out);
            if (i->elseBlock)
                superCalls(*i->elseBlock, out);
        } else if (const auto* bs = std::get_if<ast::BlockStmt>(&st->node)) {
            superCalls(bs->block, out);
        }
    }
}

bool startsWithSuper(const ast::CtorDecl& c) {
    return !c.body.stmts.empty() && std::holds_alternative<ast::SuperCtorCall>(c.body.stmts.front()->node);
}

std::optional<Span> firstCurrent(const ast::Block& b) {
    std::optional<Span> found;
    BodyVisitor v{[&](const ast::Expr& e) {
                      if (!found && std::holds_alternative<ast::CurrentRef>(e.node))
                          found = e.span;
                  },
                  [](const ast::TypeRef&) {}};
    v.block(b);
    return found;
}

bool callsSuper(const ast::Block& b, const std::string& method) {
    bool found = false;
    BodyVisitor v{[&](const ast::Expr& e) {
                      if (const auto* s = std::get_if<ast::SuperCall>(&e.node); s && s->method == method)
                          found = true;
                  },
                  [](const ast::TypeRef&) {}};
    v.block(b);
    return found;
}

// --- the binder -------------------------------------------------------------

struct ClassState {
    const ast::ClassDecl* decl = nullptr;
    EntityId id;
    std::vector<EntityId> parents;
    std::set<EntityId> ancestors; // proper
    std::map<std::string, std::set<EntityId>> visibleProps; // property key -> globals
    std::map<EntityId, std::vector<EntityId>> nearestProps; // global -> nearest locals
    std::map<std::string, std::set<EntityId>> visibleTests; // test key -> global tests
    std::map<EntityId, std::vector<EntityId>> nearestTests; // global test -> nearest local tests
};

std::string propertyTestKey(const std::string& name, EntityId target) {
    return "p:" + name + "@" + std::to_string(target.index);
}

std::string classTestKey(const std::string& name) { return "c:" + name; }

class Binder {
public:
    explicit Binder(std::vector<std::shared_ptr<const ast::Unit>> units) {
        program_ = std::make_shared<Program>();
        program_->units = std::move(units);
    }

    BindResult run() {
        declare();
        if (!diags_.empty())
            return finish();
        linkParents();
        if (!diags_.empty())
            return finish();
        for (ClassState* c : topoOrder_)
            bindMembers(*c);
        for (ClassState* c : topoOrder_)
            bindTests(*c);
        bindPackageTests();
        bindResolutions();
        checkBodies();
        if (!diags_.empty())
            return finish();
        computeHas();
        try {
            program_->model = b_.seal();
        } catch (const metamodel::ModelError& e) {
            diags_.push_back(error("ModelInvalid", e.what(), Span{}));
        }
        return finish();
    }

private:
    BindResult finish() {
        BindResult r;
        r.diagnostics = std::move(diags_);
        if (!hasErrors(r.diagnostics))
            r.program = std::move(program_);
        return r;
    }

    const ClassEntry& entry(EntityId cls) const { return b_.data().classes[cls.index]; }
    EntityId ownerOfProp(EntityId l) const { return b_.data().localProperties[l.index].owner; }
    EntityId ownerOfTest(EntityId l) const {
        return l.kind == EntityKind::LocalTestClass ? b_.data().localTestClasses[l.index].owner
                                                    : b_.data().localTestProperties[l.index].owner;
    }
    ClassState& state(EntityId cls) { return *byId_.at(cls.index); }

    EntityId packageFor(const ast::PackageDecl& p) {
        auto it = packages_.find(p.name);
        if (it != packages_.end())
            return it->second;
        const EntityId id = b_.add(PackageEntry{p.name});
        packages_.emplace(p.name, id);
        return id;
    }

    void declare() {
        std::uint32_t order = 0;
        for (const auto& unit : program_->units) {
            for (const ast::PackageDecl& p : unit->packages) {
                const EntityId pkg = packageFor(p);
                for (const ast::PackageItem& item : p.items) {
                    const auto* cd = std::get_if<ast::ClassDecl>(&item);
                    if (cd == nullptr) {
                        pkgTests_.emplace_back(pkg, &std::get<ast::TestDecl>(item));
                        continue;
                    }
                    if (classByName_.count(cd->name)) {
                        diags_.push_back(error("DuplicateClass", "class '" + cd->name + "' is already declared",
                                               cd->span));
                        continue;
                    }
                    const EntityId id = b_.add(ClassEntry{cd->name, pkg, {}, order++});
                    auto st = std::make_unique<ClassState>();
                    st->decl = cd;
                    st->id = id;
                    classByName_.emplace(cd->name, id);
                    byId_.push_back(std::move(st));
                    program_->classes[id].decl = cd;
                }
            }
        }
    }

    void linkParents() {
        for (auto& st : byId_) {
            std::set<EntityId> seen;
            for (const ast::ParentRef& pr : st->decl->parents) {
                auto it = classByName_.find(pr.name);
                if (it == classByName_.end()) {
                    diags_.push_back(error("UnknownParent", "unknown parent class '" + pr.name + "'", pr.span));
                    continue;
                }
                if (!seen.insert(it->second).second) {
                    diags_.push_back(error("DuplicateParent", "class '" + pr.name + "' is listed twice", pr.span));
                    continue;
                }
                st->parents.push_back(it->second);
            }
            b_.setParents(st->id, st->parents);
        }
        if (!diags_.empty())
            return;

        // Depth-first topological sort in declaration order; a grey node
        // reached again closes a cycle.
        std::vector<int> color(byId_.size(), 0);
        std::function<bool(ClassState&)> visit = [&](ClassState& c) {
            if (color[c.id.index] == 2)
                return true;
            if (color[c.id.index] == 1) {
                diags_.push_back(error("CyclicInheritance", "class '" + c.decl->name + "' inherits from itself",
                                       c.decl->span));
                return false;
            }
            color[c.id.index] = 1;
            for (const EntityId& p : c.parents) {
                if (!visit(state(p)))
                    return false;
                c.ancestors.insert(p);
                const auto& up = state(p).ancestors;
                c.ancestors.insert(up.begin(), up.end());
            }
            color[c.id.index] = 2;
            topoOrder_.push_back(&c);
            return true;
        };
        for (auto& st : byId_) {
            if (!visit(*st))
                return;
        }
    }

    // Union of the parents' nearest entities, minus those owned by a proper
    // ancestor of another member's owner.
    template <typename OwnerFn>
    std::vector<EntityId> mergeNearest(const std::vector<std::vector<EntityId>>& lists, OwnerFn ownerOf) {
        std::set<EntityId> all;
        for (const auto& l : lists)
            all.insert(l.begin(), l.end());
        std::vector<EntityId> out;
        for (const EntityId& a : all) {
            const bool shadowed = std::any_of(all.begin(), all.end(), [&](const EntityId& b) {
                return b != a && state(ownerOf(b)).ancestors.count(ownerOf(a));
            });
            if (!shadowed)
                out.push_back(a);
        }
        return out;
    }

    void inherit(ClassState& c) {
        for (const EntityId& p : c.parents) {
            const ClassState& ps = state(p);
            for (const auto& [key, gs] : ps.visibleProps)
                c.visibleProps[key].insert(gs.begin(), gs.end());
        }
        for (const auto& [key, gs] : c.visibleProps) {
            for (const EntityId& g : gs) {
                std::vector<std::vector<EntityId>> lists;
                for (const EntityId& p : c.parents) {
                    auto it = state(p).nearestProps.find(g);
                    if (it != state(p).nearestProps.end())
                        lists.push_back(it->second);
                }
                c.nearestProps[g] = mergeNearest(lists, [&](EntityId l) { return ownerOfProp(l); });
            }
        }
    }

    BodyRef addBody(Body body) {
        program_->bodies.push_back(body);
        return static_cast<BodyRef>(program_->bodies.size() - 1);
    }

    void declareProperty(ClassState& c, PropertyEntry entry, const Span& span, const ast::FieldDecl* field) {
        const std::string key = metamodel::propertyKey(entry.role, entry.name);
        if (b_.find(EntityKind::LocalProperty, c.id, key)) {
            diags_.push_back(error("DuplicateMember",
                                   std::string(entry.role == PropertyRole::Field ? "field" : "method") + " '" +
                                       entry.name + "' is declared twice in '" + c.decl->name + "'",
                                   span));
            return;
        }
        auto& visible = c.visibleProps[key];
        if (visible.size() > 1) {
            diags_.push_back(error("AmbiguousInheritedMember",
                                   "'" + entry.name + "' in '" + c.decl->name +
                                       "' redefines unrelated inherited members of the same name",
                                   span));
            return;
        }
        std::vector<EntityId> redefined;
        if (visible.empty()) {
            entry.global = b_.add(GlobalPropertyEntry{entry.role, entry.name, c.id});
            visible.insert(entry.global);
        } else {
            entry.global = *visible.begin();
            redefined = c.nearestProps[entry.global];
        }
        const EntityId global = entry.global;
        const EntityId local = b_.add(std::move(entry));
        for (const EntityId& r : redefined)
            b_.relate(Relation::Redef, local, r);
        c.nearestProps[global] = {local};
        if (field != nullptr)
            program_->fields[local] = field;
    }

    void bindMembers(ClassState& c) {
        inherit(c);
        for (const auto& [key, gs] : c.visibleProps) {
            if (gs.size() > 1 && !b_.find(EntityKind::LocalProperty, c.id, key))
                diags_.push_back(error("AmbiguousInheritedMember",
                                       "'" + c.decl->name + "' inherits unrelated members named '" +
                                           key.substr(2) + "'",
                                       c.decl->span));
        }
        for (const ast::Member& m : c.decl->members) {
            if (const auto* f = std::get_if<ast::FieldDecl>(&m)) {
                PropertyEntry e;
                e.role = PropertyRole::Field;
                e.name = f->name;
                e.signature = Signature{{}, f->type.str()};
                e.visibility = toModel(f->visibility);
                e.owner = c.id;
                declareProperty(c, std::move(e), f->span, f);
            } else if (const auto* md = std::get_if<ast::MethodDecl>(&m)) {
                PropertyEntry e;
                e.role = PropertyRole::Method;
                e.name = md->name;
                for (const ast::Param& p : md->params)
                    e.signature.params.push_back(p.type.str());
                e.signature.type = md->returnType.str();
                e.visibility = toModel(md->visibility);
                e.owner = c.id;
                e.body = addBody(Body{Body::Kind::Method, md, nullptr, c.id});
                declareProperty(c, std::move(e), md->span, nullptr);
            } else if (const auto* ctor = std::get_if<ast::CtorDecl>(&m)) {
                ClassInfo& info = program_->classes[c.id];
                if (info.ctor != nullptr)
                    diags_.push_back(error("DuplicateConstructor",
                                           "class '" + c.decl->name + "' declares more than one constructor",
                                           ctor->span));
                else
                    info.ctor = ctor;
            }
        }
        // Parents run their nullary constructor unless fed by a leading
        // super(...), which only reaches the first parent.
        const ast::CtorDecl* own = program_->classes[c.id].ctor;
        const bool feedsFirst = own != nullptr && startsWithSuper(*own);
        for (std::size_t i = feedsFirst ? 1 : 0; i < c.parents.size(); ++i) {
            const ast::CtorDecl* pc = program_->classes[c.parents[i]].ctor;
            if (pc != nullptr && !pc->params.empty())
                diags_.push_back(error("MissingSuperCall",
                                       "class '" + c.decl->name + "' must call super(...) of '" +
                                           entry(c.parents[i]).name + "'",
                                       own != nullptr ? own->span : c.decl->span));
        }
    }

    void bindTest(ClassState& c, const ast::TestDecl& t) {
        if (!testNames_[c.id].insert(t.name).second) {
            diags_.push_back(error("DuplicateTest",
                                   "test '" + t.name + "' is declared twice in '" + c.decl->name + "'", t.span));
            return;
        }
        const BodyRef body = addBody(Body{Body::Kind::Test, nullptr, &t, c.id});
        TestEntry local;
        local.name = t.name;
        local.owner = c.id;
        local.body = body;

        std::string key;
        std::vector<EntityId> attach;
        TestLevel level = TestLevel::ClassTest;
        if (t.target) {
            level = TestLevel::PropertyTest;
            auto vis = c.visibleProps.find(metamodel::propertyKey(PropertyRole::Method, *t.target));
            if (vis == c.visibleProps.end() || vis->second.size() != 1) {
                diags_.push_back(error("UnknownTestTarget",
                                       "test '" + t.name + "' targets '" + *t.target + "', which is not a method of '" +
                                           c.decl->name + "' or its ancestors",
                                       t.targetSpan));
                return;
            }
            local.target = *vis->second.begin();
            attach = c.nearestProps[local.target];
            key = propertyTestKey(t.name, local.target);
        } else {
            local.target = c.id;
            key = classTestKey(t.name);
        }
        local.level = level;

        auto& visible = c.visibleTests[key];
        if (visible.size() > 1) {
            diags_.push_back(error("AmbiguousInheritedMember",
                                   "test '" + t.name + "' in '" + c.decl->name +
                                       "' redefines unrelated inherited tests of the same name",
                                   t.span));
            return;
        }
        std::vector<EntityId> redefined;
        EntityId global;
        if (visible.empty()) {
            const EntityId target = level == TestLevel::ClassTest ? c.id : local.target;
            global = b_.add(GlobalTestEntry{level, t.name, c.id, target});
            visible.insert(global);
        } else {
            global = *visible.begin();
            redefined = c.nearestTests[global];
        }
        local.global = global;
        const EntityId lt = b_.add(std::move(local));
        for (const EntityId& r : redefined)
            b_.relate(Relation::Redef, lt, r);
        for (const EntityId& l : attach)
            b_.relate(Relation::Has, l, global);
        c.nearestTests[global] = {lt};
    }

    void bindTests(ClassState& c) {
        // Parents come earlier in topological order, so their tests are bound.
        for (const EntityId& p : c.parents) {
            for (const auto& [key, gs] : state(p).visibleTests)
                c.visibleTests[key].insert(gs.begin(), gs.end());
        }
        for (const auto& [key, gs] : c.visibleTests) {
            for (const EntityId& g : gs) {
                std::vector<std::vector<EntityId>> lists;
                for (const EntityId& p : c.parents) {
                    auto it = state(p).nearestTests.find(g);
                    if (it != state(p).nearestTests.end())
                        lists.push_back(it->second);
                }
                c.nearestTests[g] = mergeNearest(lists, [&](EntityId l) { return ownerOfTest(l); });
            }
        }
        for (const ast::Member& m : c.decl->members) {
            if (const auto* t = std::get_if<ast::TestDecl>(&m))
                bindTest(c, *t);
        }
    }

    void bindPackageTests() {
        std::set<std::pair<EntityId, std::string>> names;
        for (const auto& [pkg, t] : pkgTests_) {
            if (!names.emplace(pkg, t->name).second) {
                diags_.push_back(error("DuplicateTest",
                                       "package test '" + t->name + "' is declared twice in package '" +
                                           b_.data().packages[pkg.index].name + "'",
                                       t->span));
                continue;
            }
            TestEntry e;
            e.level = TestLevel::PackageTest;
            e.name = t->name;
            e.owner = pkg;
            e.target = pkg;
            e.body = addBody(Body{Body::Kind::Test, nullptr, t, pkg});
            b_.add(std::move(e));
        }
    }

    std::optional<EntityId> classNamed(const ast::QualifiedMember& q) {
        auto it = classByName_.find(q.parent);
        if (it == classByName_.end()) {
            diags_.push_back(error("UnknownClass", "unknown class '" + q.parent + "'", q.span));
            return std::nullopt;
        }
        return it->second;
    }

    void bindResolutions() {
        for (ClassState* c : topoOrder_) {
            for (const ast::Member& m : c->decl->members) {
                const auto* rd = std::get_if<ast::ResolveDecl>(&m);
                if (rd == nullptr)
                    continue;
                conflicts::Resolution r;
                r.site = c->id;
                r.subject = rd->subject;
                r.span = rd->span;
                switch (rd->strategy) {
                case ast::ResolveStrategy::Unify: r.strategy = conflicts::Strategy::Unify; break;
                case ast::ResolveStrategy::Select: {
                    r.strategy = conflicts::Strategy::Select;
                    const auto cls = classNamed(*rd->selection);
                    if (!cls)
                        continue;
                    r.selection = conflicts::QualifiedChoice{*cls, rd->selection->member};
                    break;
                }
                case ast::ResolveStrategy::Rename: {
                    r.strategy = conflicts::Strategy::Rename;
                    bool ok = true;
                    for (const ast::RenameItem& item : rd->renames) {
                        const auto cls = classNamed(item.from);
                        if (!cls) {
                            ok = false;
                            continue;
                        }
                        r.renames.push_back(conflicts::RenameEntry{{*cls, item.from.member}, item.newName});
                    }
                    if (!ok)
                        continue;
                    break;
                }
                }
                program_->resolutions.push_back(std::move(r));
            }
        }
    }

    void checkType(const ast::TypeRef& t) {
        if (t.kind == ast::TypeRef::Kind::Class && !classByName_.count(t.className))
            diags_.push_back(error("UnknownType", "unknown type '" + t.className + "'", t.span));
    }

    void checkBlock(const ast::Block& b, bool inTest) {
        BodyVisitor v{[&](const ast::Expr& e) {
                          if (std::holds_alternative<ast::CurrentRef>(e.node) && !inTest)
                              diags_.push_back(error("CurrentOutsideTest",
                                                     "'Current' is only available in class and property tests",
                                                     e.span));
                          const std::string* cls = nullptr;
                          if (const auto* n = std::get_if<ast::NewObject>(&e.node))
                              cls = &n->className;
                          else if (const auto* io = std::get_if<ast::InstanceOf>(&e.node))
                              cls = &io->className;
                          if (cls != nullptr && !classByName_.count(*cls))
                              diags_.push_back(error("UnknownClass", "unknown class '" + *cls + "'", e.span));
                      },
                      [&](const ast::TypeRef& t) { checkType(t); }};
        v.block(b);
    }

    void checkExpr(const ast::Expr& e) {
        BodyVisitor v{[&](const ast::Expr& x) {
                          if (std::holds_alternative<ast::CurrentRef>(x.node))
                              diags_.push_back(error("CurrentOutsideTest",
                                                     "'Current' is only available in class and property tests",
                                                     x.span));
                          if (const auto* n = std::get_if<ast::NewObject>(&x.node); n && !classByName_.count(n->className))
                              diags_.push_back(error("UnknownClass", "unknown class '" + n->className + "'", x.span));
                      },
                      [&](const ast::TypeRef& t) { checkType(t); }};
        v.expr(e);
    }

    void misplacedSuper(const ast::Block& b) {
        std::vector<Span> calls;
        superCalls(b, calls);
        for (const Span& sp : calls)
            diags_.push_back(error("MisplacedSuperCall", "super(...) is only allowed in a constructor", sp));
    }

    void checkBodies() {
        for (ClassState* c : topoOrder_) {
            for (const ast::Member& m : c->decl->members) {
                if (const auto* f = std::get_if<ast::FieldDecl>(&m)) {
                    checkType(f->type);
                    if (f->init)
                        checkExpr(*f->init);
                } else if (const auto* md = std::get_if<ast::MethodDecl>(&m)) {
                    checkType(md->returnType);
                    for (const ast::Param& p : md->params)
                        checkType(p.type);
                    checkBlock(md->body, false);
                    misplacedSuper(md->body);
                } else if (const auto* cd = std::get_if<ast::CtorDecl>(&m)) {
                    for (const ast::Param& p : cd->params)
                        checkType(p.type);
                    checkBlock(cd->body, false);
                    std::vector<Span> calls;
                    superCalls(cd->body, calls);
                    const bool leading = startsWithSuper(*cd);
                    for (std::size_t i = leading ? 1 : 0; i < calls.size(); ++i)
                        diags_.push_back(error("MisplacedSuperCall",
                                               "super(...) must be the first statement of a constructor", calls[i]));
                    if (leading && c->decl->parents.empty())
                        diags_.push_back(error("MisplacedSuperCall",
                                               "class '" + c->decl->name + "' has no parent constructor to call",
                                               calls.front()));
                } else if (const auto* t = std::get_if<ast::TestDecl>(&m)) {
                    checkBlock(t->body, true);
                    misplacedSuper(t->body);
                }
            }
        }
        for (const auto& [pkg, t] : pkgTests_) {
            (void)pkg;
            BodyVisitor v{[&](const ast::Expr& e) {
                              if (std::holds_alternative<ast::CurrentRef>(e.node))
                                  diags_.push_back(error("CurrentOutsideTest",
                                                         "package tests have no 'Current' instance", e.span));
                          },
                          [](const ast::TypeRef&) {}};
            v.block(t->body);
            checkBlock(t->body, true);
            misplacedSuper(t->body);
        }

        // Every class in which a test using Current may run must be
        // constructible without arguments.
        for (ClassState* c : topoOrder_) {
            const ast::CtorDecl* ctor = program_->classes[c->id].ctor;
            if (ctor == nullptr || ctor->params.empty())
                continue;
            std::vector<EntityId> hierarchy(c->ancestors.begin(), c->ancestors.end());
            hierarchy.push_back(c->id);
            for (const EntityId& d : hierarchy) {
                for (const ast::Member& m : state(d).decl->members) {
                    const auto* t = std::get_if<ast::TestDecl>(&m);
                    if (t == nullptr)
                        continue;
                    if (const auto at = firstCurrent(t->body)) {
                        diags_.push_back(error("CurrentNeedsNullaryCtor",
                                               "test '" + t->name + "' uses 'Current' but '" + c->decl->name +
                                                   "' has no nullary constructor",
                                               *at));
                    }
                }
            }
        }
    }

    void computeHas() {
        for (ClassState* c : topoOrder_) {
            std::set<EntityId> hierarchy(c->ancestors);
            hierarchy.insert(c->id);
            for (const auto& [key, gs] : c->visibleProps) {
                for (const EntityId& g : gs)
                    b_.relate(Relation::Has, c->id, g);
            }
            const auto& data = b_.data();
            for (std::uint32_t i = 0; i < data.localProperties.size(); ++i) {
                if (!hierarchy.count(data.localProperties[i].owner))
                    continue;
                const EntityId l{EntityKind::LocalProperty, i};
                std::vector<EntityId> gtps;
                for (const auto& [from, to] : data.relations[static_cast<std::size_t>(Relation::Has)]) {
                    if (from == l && to.kind == EntityKind::GlobalTestProperty)
                        gtps.push_back(to);
                }
                for (const EntityId& gtp : gtps)
                    b_.relate(Relation::Has, c->id, gtp);
            }
        }
    }

    ModelBuilder b_;
    std::shared_ptr<Program> program_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, EntityId> packages_;
    std::map<std::string, EntityId> classByName_;
    std::vector<std::unique_ptr<ClassState>> byId_;
    std::vector<ClassState*> topoOrder_;
    std::vector<std::pair<EntityId, const ast::TestDecl*>> pkgTests_;
    std::map<EntityId, std::set<std::string>> testNames_;
};

} // namespace

BindResult bind(std::vector<std::shared_ptr<const ast::Unit>> units) {
    return Binder(std::move(units)).run();
}

bool isSubtype(const Model& model, const std::string& sub, const std::string& super) {
    if (sub == super)
        return true;
    const auto a = model.findClass(sub);
    const auto b = model.findClass(super);
    return a && b && model.isAncestorOrSelf(*b, *a);
}

std::vector<Diagnostic> checkTypeSafety(const Program& program) {
    const Model& model = program.model;
    std::vector<Diagnostic> out;
    for (const auto& [child, parent] : model.pairs(Relation::Redef)) {
        if (child.kind != EntityKind::LocalProperty)
            continue;
        const PropertyEntry& c = model.localProperty(child);
        const PropertyEntry& p = model.localProperty(parent);
        if (c.synthesized)
            continue;
        Span span;
        if (c.role == PropertyRole::Method && c.body != metamodel::kNoBody)
            span = program.body(c.body).method->span;
        else if (auto f = program.fields.find(child); f != program.fields.end())
            span = f->second->span;
        const std::string where = model.displayName(child) + " redefines " + model.displayName(parent);

        if (c.role == PropertyRole::Field) {
            if (c.signature.type != p.signature.type)
                out.push_back(error("FieldTypeMismatch",
                                    where + " with type " + c.signature.type + " instead of " + p.signature.type,
                                    span));
            continue;
        }
        if (!isSubtype(model, c.signature.type, p.signature.type)) {
            out.push_back(error("CovarianceViolation",
                                where + ": return type " + c.signature.type + " is not a subtype of " +
                                    p.signature.type,
                                span));
        }
        if (c.signature.params.size() != p.signature.params.size()) {
            out.push_back(error("SignatureMismatch",
                                where + " with " + std::to_string(c.signature.params.size()) + " parameters instead of " +
                                    std::to_string(p.signature.params.size()),
                                span));
            continue;
        }
        for (std::size_t i = 0; i < c.signature.params.size(); ++i) {
            if (!isSubtype(model, p.signature.params[i], c.signature.params[i]))
                out.push_back(error("ContravarianceViolation",
                                    where + ": parameter " + std::to_string(i + 1) + " type " +
                                        c.signature.params[i] + " is not a supertype of " + p.signature.params[i],
                                    span));
        }
    }
    return out;
}

std::map<std::pair<EntityId, EntityId>, MethodKind> classifyMethods(const Program& program) {
    const Model& model = program.model;
    std::map<std::pair<EntityId, EntityId>, MethodKind> out;
    for (const EntityId& cls : model.ids(EntityKind::Class)) {
        for (const EntityId& g : resolver::globalPropertiesOf(model, cls)) {
            const auto& gp = model.globalProperty(g);
            if (gp.role != PropertyRole::Method)
                continue;
            const auto own = model.find(EntityKind::LocalProperty, cls, metamodel::propertyKey(gp.role, gp.name));
            MethodKind kind = MethodKind::Inherited;
            if (own && model.localProperty(*own).global == g && !model.localProperty(*own).synthesized) {
                const PropertyEntry& l = model.localProperty(*own);
                if (model.successors(Relation::Redef, *own).empty())
                    kind = MethodKind::New;
                else if (l.body != metamodel::kNoBody && callsSuper(program.body(l.body).method->body, l.name))
                    kind = MethodKind::RedefWithSuper;
                else
                    kind = MethodKind::RedefNoSuper;
            }
            out.emplace(std::make_pair(cls, g), kind);
        }
    }
    return out;
}

} // namespace tol::binder
