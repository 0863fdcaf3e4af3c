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

#include "tol/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace tol::runtime {

using metamodel::EntityKind;
using metamodel::Model;
using metamodel::PropertyEntry;
using metamodel::PropertyRole;
using metamodel::Relation;
using metamodel::TestLevel;

std::string_view toString(Status status) {
    switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::RuntimeError: return "error";
    }
    return "?";
}

std::string show(const Model& model, const Value& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Null>)
                return "null";
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>)
                return x;
            else if constexpr (std::is_same_v<T, ast::ColorValue>)
                return x == ast::ColorValue::Red ? "Color.Red" : "Color.Green";
            else
                return model.classEntry(x.cls).name + "#" + std::to_string(x.index);
        },
        v);
}

std::string outcomeName(const Model& model, const TestOutcome& outcome) {
    const auto& t = model.localTest(outcome.test);
    if (outcome.executingClass)
        return model.classEntry(*outcome.executingClass).name + "." + t.name;
    return model.package(t.owner).name + "." + t.name;
}

namespace {

constexpr std::size_t kMaxCallDepth = 512;

struct AssertFailure {
    Span span;
};

struct Object {
    EntityId cls;
    std::map<EntityId, Value> fields; // keyed by global field property
};

// Execution context of one body.
struct Frame {
    std::optional<ObjectRef> self;
    std::optional<EntityId> lexical; // class whose source holds the code
    bool whiteBox = false;
    std::vector<std::map<std::string, Value>> scopes{{}};

    Value* lookup(const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end())
                return &f->second;
        }
        return nullptr;
    }
};

enum class Flow { Normal, Return };

class Interpreter {
public:
    explicit Interpreter(const binder::Program& program) : program_(program), model_(program.model) {}

    std::vector<std::string> output;
    std::optional<ObjectRef> current;
    /// Old name -> renamed global, for a test that follows a renamed branch.
    std::map<std::string, EntityId> aliases;

    void aliasTarget(EntityId cls, EntityId target) {
        const auto local = nearest(cls, target);
        if (!local)
            return;
        if (const auto& from = model_.localProperty(*local).renamedFrom)
            aliases[model_.localProperty(*from).name] = target;
    }

    Value construct(EntityId cls, std::vector<Value> args, const Span& span) {
        const ObjectRef ref{static_cast<std::uint32_t>(heap_.size()), cls};
        Object obj{cls, {}};
        for (const EntityId& g : model_.successors(Relation::Has, cls)) {
            if (g.kind != EntityKind::GlobalProperty || model_.globalProperty(g).role != PropertyRole::Field)
                continue;
            obj.fields.emplace(g, defaultFor(nearest(cls, g)));
        }
        heap_.push_back(std::move(obj));
        std::set<EntityId> done;
        initialize(cls, ref, std::move(args), span, done);
        return ref;
    }

    void runBody(const ast::Block& body, Frame& frame) {
        Value ignored;
        execBlock(body, frame, ignored);
    }

    Value eval(const ast::Expr& e, Frame& f) {
        return std::visit([&](const auto& n) { return evalNode(n, e, f); }, e.node);
    }

private:
    [[noreturn]] static void fail(const std::string& code, const std::string& msg, const Span& span) {
        throw RuntimeError(code, msg, span);
    }

    Value defaultFor(std::optional<EntityId> local) const {
        if (!local)
            return Null{};
        const std::string& t = model_.localProperty(*local).signature.type;
        if (t == "int")
            return std::int64_t{0};
        if (t == "bool")
            return false;
        if (t == "string")
            return std::string();
        return Null{};
    }

    // The local of `g` that the class sees: one not redefined by another
    // local in its hierarchy.
    std::optional<EntityId> nearest(EntityId cls, EntityId g) const {
        const auto locals = resolver::localPropertiesOf(model_, cls, g);
        for (const EntityId& l : locals) {
            const bool shadowed = std::any_of(locals.begin(), locals.end(), [&](const EntityId& o) {
                return o != l && model_.contains(Relation::Redef, o, l);
            });
            if (!shadowed)
                return l;
        }
        return std::nullopt;
    }

    std::optional<EntityId> globalNamed(EntityId cls, PropertyRole role, const std::string& name) const {
        for (const EntityId& g : model_.successors(Relation::Has, cls)) {
            if (g.kind != EntityKind::GlobalProperty)
                continue;
            const auto& gp = model_.globalProperty(g);
            if (gp.role == role && gp.name == name)
                return g;
        }
        return std::nullopt;
    }

    bool mayAccess(const Frame& f, EntityId local) const {
        const PropertyEntry& p = model_.localProperty(local);
        if (p.visibility == metamodel::Visibility::Public || f.whiteBox)
            return true;
        if (!f.lexical)
            return false;
        const auto& sameGlobal = model_.predecessors(Relation::Belongs, p.global);
        return std::any_of(sameGlobal.begin(), sameGlobal.end(),
                           [&](const EntityId& l) { return model_.ownerOf(l) == *f.lexical; });
    }

    Object& deref(const Value& v, const Span& span, const std::string& what) {
        const auto* ref = std::get_if<ObjectRef>(&v);
        if (ref == nullptr) {
            if (std::holds_alternative<Null>(v))
                fail("NullDereference", "null dereference while accessing " + what, span);
            fail("TypeError", "cannot access " + what + " on a non-object value", span);
        }
        return heap_[ref->index];
    }

    Value& fieldSlot(Object& obj, const std::string& name, const Frame& f, const Span& span) {
        const auto g = globalNamed(obj.cls, PropertyRole::Field, name);
        if (!g)
            fail("NoSuchField", "class " + model_.classEntry(obj.cls).name + " has no field '" + name + "'", span);
        const auto local = nearest(obj.cls, *g);
        if (local && !mayAccess(f, *local))
            fail("VisibilityViolation", "field '" + name + "' of " + model_.displayName(*local) + " is private",
                 span);
        return obj.fields[*g];
    }

    // --- construction ----------------------------------------------------

    void initialize(EntityId cls, ObjectRef self, std::vector<Value> args, const Span& span,
                    std::set<EntityId>& done) {
        if (!done.insert(cls).second)
            return;
        const auto& info = program_.classes.at(cls);
        const ast::CtorDecl* ctor = info.ctor;
        const std::size_t arity = ctor ? ctor->params.size() : 0;
        if (args.size() != arity)
            fail("ArityMismatch",
                 "constructor of " + model_.classEntry(cls).name + " expects " + std::to_string(arity) +
                     " arguments, got " + std::to_string(args.size()),
                 span);

        Frame f;
        f.self = self;
        f.lexical = cls;
        if (ctor) {
            for (std::size_t i = 0; i < arity; ++i)
                f.scopes.back()[ctor->params[i].name] = std::move(args[i]);
        }

        // Parents first: an explicit super(...) feeds the first parent.
        std::size_t firstStmt = 0;
        const auto& parents = model_.classEntry(cls).parents;
        if (ctor && !ctor->body.stmts.empty()) {
            if (const auto* sc = std::get_if<ast::SuperCtorCall>(&ctor->body.stmts.front()->node)) {
                if (parents.empty())
                    fail("NoSuchMethod", model_.classEntry(cls).name + " has no parent constructor",
                         ctor->body.stmts.front()->span);
                std::vector<Value> superArgs;
                for (const auto& a : sc->args)
                    superArgs.push_back(eval(*a, f));
                initialize(parents.front(), self, std::move(superArgs), ctor->body.stmts.front()->span, done);
                firstStmt = 1;
            }
        }
        for (const EntityId& p : parents)
            initialize(p, self, {}, span, done);

        for (const ast::Member& m : info.decl->members) {
            const auto* fd = std::get_if<ast::FieldDecl>(&m);
            if (fd == nullptr || !fd->init)
                continue;
            Value v = eval(*fd->init, f);
            Object& obj = heap_[self.index];
            const auto g = globalNamed(cls, PropertyRole::Field, fd->name);
            if (g)
                obj.fields[*g] = std::move(v);
        }

        if (ctor) {
            Value ignored;
            for (std::size_t i = firstStmt; i < ctor->body.stmts.size(); ++i) {
                if (exec(*ctor->body.stmts[i], f, ignored) == Flow::Return)
                    break;
            }
        }
    }

    // --- calls -----------------------------------------------------------

    Value invoke(EntityId local, ObjectRef self, std::vector<Value> args, const Span& span) {
        const PropertyEntry& p = model_.localProperty(local);
        if (p.body == metamodel::kNoBody)
            fail("NoSuchMethod", model_.displayName(local) + " has no body", span);
        const binder::Body& body = program_.body(p.body);
        const ast::MethodDecl& md = *body.method;
        if (args.size() != md.params.size())
            fail("ArityMismatch",
                 md.name + " expects " + std::to_string(md.params.size()) + " arguments, got " +
                     std::to_string(args.size()),
                 span);
        if (depth_ >= kMaxCallDepth)
            fail("StackOverflow", "call depth limit exceeded in " + md.name, span);
        Frame f;
        f.self = self;
        f.lexical = body.scope;
        for (std::size_t i = 0; i < args.size(); ++i)
            f.scopes.back()[md.params[i].name] = std::move(args[i]);
        ++depth_;
        Value result = Null{};
        execBlock(md.body, f, result);
        --depth_;
        return result;
    }

    // Method lookup on the dynamic class. After a rename the original name
    // is gone from the class; code written in a renamed branch still reaches
    // its own member through the renamed local.
    std::optional<EntityId> dispatch(EntityId cls, const std::string& name, const Frame& f) const {
        if (const auto g = globalNamed(cls, PropertyRole::Method, name))
            return nearest(cls, *g);
        if (auto a = aliases.find(name); a != aliases.end() && model_.contains(Relation::Has, cls, a->second))
            return nearest(cls, a->second);
        if (!f.lexical)
            return std::nullopt;
        for (const EntityId& l : model_.ids(EntityKind::LocalProperty)) {
            const PropertyEntry& p = model_.localProperty(l);
            if (!p.renamedFrom || !model_.isAncestorOrSelf(p.owner, cls))
                continue;
            const PropertyEntry& orig = model_.localProperty(*p.renamedFrom);
            if (orig.name == name && model_.isAncestorOrSelf(orig.owner, *f.lexical))
                return nearest(cls, p.global);
        }
        return std::nullopt;
    }

    std::vector<Value> evalArgs(const std::vector<ast::ExprPtr>& args, Frame& f) {
        std::vector<Value> out;
        out.reserve(args.size());
        for (const auto& a : args)
            out.push_back(eval(*a, f));
        return out;
    }

    // --- statements ------------------------------------------------------

    Flow execBlock(const ast::Block& b, Frame& f, Value& result) {
        f.scopes.emplace_back();
        Flow flow = Flow::Normal;
        for (const auto& s : b.stmts) {
            flow = exec(*s, f, result);
            if (flow == Flow::Return)
                break;
        }
        f.scopes.pop_back();
        return flow;
    }

    Flow exec(const ast::Stmt& s, Frame& f, Value& result) {
        if (const auto* n = std::get_if<ast::VarDecl>(&s.node)) {
            f.scopes.back()[n->name] = n->init ? eval(*n->init, f) : Value{Null{}};
        } else if (const auto* n = std::get_if<ast::Assign>(&s.node)) {
            Value v = eval(*n->value, f);
            assign(*n->target, std::move(v), f);
        } else if (const auto* n = std::get_if<ast::ExprStmt>(&s.node)) {
            eval(*n->expr, f);
        } else if (const auto* n = std::get_if<ast::If>(&s.node)) {
            if (truthy(eval(*n->cond, f), n->cond->span))
                return execBlock(n->thenBlock, f, result);
            if (n->elseBlock)
                return execBlock(*n->elseBlock, f, result);
        } else if (const auto* n = std::get_if<ast::Return>(&s.node)) {
            result = n->value ? eval(*n->value, f) : Value{Null{}};
            return Flow::Return;
        } else if (const auto* n = std::get_if<ast::Assert>(&s.node)) {
            if (!truthy(eval(*n->cond, f), n->cond->span))
                throw AssertFailure{s.span};
        } else if (const auto* n = std::get_if<ast::Print>(&s.node)) {
            output.push_back(show(model_, eval(*n->value, f)));
        } else if (const auto* n = std::get_if<ast::BlockStmt>(&s.node)) {
            return execBlock(n->block, f, result);
        } else if (std::holds_alternative<ast::SuperCtorCall>(s.node)) {
            fail("MisplacedSuperCall", "super(...) is only allowed first in a constructor", s.span);
        }
        return Flow::Normal;
    }

    void assign(const ast::Expr& target, Value v, Frame& f) {
        if (const auto* n = std::get_if<ast::Name>(&target.node)) {
            if (Value* slot = f.lookup(n->id)) {
                *slot = std::move(v);
                return;
            }
            if (!f.self)
                fail("UnknownName", "unknown name '" + n->id + "'", target.span);
            fieldSlot(heap_[f.self->index], n->id, f, target.span) = std::move(v);
            return;
        }
        if (const auto* n = std::get_if<ast::FieldAccess>(&target.node)) {
            const Value obj = eval(*n->object, f);
            fieldSlot(deref(obj, target.span, "field '" + n->field + "'"), n->field, f, target.span) = std::move(v);
            return;
        }
        fail("InvalidAssignment", "left side of '=' is not assignable", target.span);
    }

    static bool truthy(const Value& v, const Span& span) {
        if (const auto* b = std::get_if<bool>(&v))
            return *b;
        fail("TypeError", "condition is not a bool", span);
    }

    static std::int64_t asInt(const Value& v, const Span& span) {
        if (const auto* i = std::get_if<std::int64_t>(&v))
            return *i;
        fail("TypeError", "operand is not an int", span);
    }

    // --- expressions -----------------------------------------------------

    Value evalNode(const ast::IntLit& n, const ast::Expr&, Frame&) { return n.value; }
    Value evalNode(const ast::StringLit& n, const ast::Expr&, Frame&) { return n.value; }
    Value evalNode(const ast::BoolLit& n, const ast::Expr&, Frame&) { return n.value; }
    Value evalNode(const ast::NullLit&, const ast::Expr&, Frame&) { return Null{}; }
    Value evalNode(const ast::ColorLit& n, const ast::Expr&, Frame&) { return n.value; }

    Value evalNode(const ast::Name& n, const ast::Expr& e, Frame& f) {
        if (Value* v = f.lookup(n.id))
            return *v;
        if (!f.self)
            fail("UnknownName", "unknown name '" + n.id + "'", e.span);
        return fieldSlot(heap_[f.self->index], n.id, f, e.span);
    }

    Value evalNode(const ast::This&, const ast::Expr& e, Frame& f) {
        if (!f.self)
            fail("UnknownName", "'this' is not available here", e.span);
        return *f.self;
    }

    Value evalNode(const ast::CurrentRef&, const ast::Expr& e, Frame&) {
        if (!current)
            fail("UnknownName", "'Current' is not available here", e.span);
        return *current;
    }

    Value evalNode(const ast::FieldAccess& n, const ast::Expr& e, Frame& f) {
        const Value obj = eval(*n.object, f);
        return fieldSlot(deref(obj, e.span, "field '" + n.field + "'"), n.field, f, e.span);
    }

    Value evalNode(const ast::MethodCall& n, const ast::Expr& e, Frame& f) {
        ObjectRef self;
        if (n.receiver) {
            const Value recv = eval(*n.receiver, f);
            deref(recv, e.span, "method '" + n.method + "'");
            self = std::get<ObjectRef>(recv);
        } else {
            if (!f.self)
                fail("NoSuchMethod", "no receiver for call to '" + n.method + "'", e.span);
            self = *f.self;
        }
        std::vector<Value> args = evalArgs(n.args, f);
        const auto local = dispatch(self.cls, n.method, f);
        if (!local)
            fail("NoSuchMethod", "class " + model_.classEntry(self.cls).name + " has no method '" + n.method + "'",
                 e.span);
        if (!mayAccess(f, *local))
            fail("VisibilityViolation", "method " + model_.displayName(*local) + " is private", e.span);
        return invoke(*local, self, std::move(args), e.span);
    }

    Value evalNode(const ast::SuperCall& n, const ast::Expr& e, Frame& f) {
        if (!f.self || !f.lexical)
            fail("NoSuchMethod", "super." + n.method + " used outside a method", e.span);
        std::vector<Value> args = evalArgs(n.args, f);
        for (const EntityId& p : model_.classEntry(*f.lexical).parents) {
            if (const auto g = globalNamed(p, PropertyRole::Method, n.method)) {
                if (const auto local = nearest(p, *g))
                    return invoke(*local, *f.self, std::move(args), e.span);
            }
        }
        fail("NoSuchMethod", "no parent of " + model_.classEntry(*f.lexical).name + " defines '" + n.method + "'",
             e.span);
    }

    Value evalNode(const ast::NewObject& n, const ast::Expr& e, Frame& f) {
        const auto cls = model_.findClass(n.className);
        if (!cls)
            fail("UnknownClass", "unknown class '" + n.className + "'", e.span);
        return construct(*cls, evalArgs(n.args, f), e.span);
    }

    Value evalNode(const ast::ClassNameOf& n, const ast::Expr& e, Frame& f) {
        const Value v = eval(*n.operand, f);
        deref(v, e.span, "classnameOf");
        return model_.classEntry(std::get<ObjectRef>(v).cls).name;
    }

    Value evalNode(const ast::InstanceOf& n, const ast::Expr& e, Frame& f) {
        const Value v = eval(*n.operand, f);
        const auto cls = model_.findClass(n.className);
        if (!cls)
            fail("UnknownClass", "unknown class '" + n.className + "'", e.span);
        const auto* ref = std::get_if<ObjectRef>(&v);
        return ref != nullptr && model_.isAncestorOrSelf(*cls, ref->cls);
    }

    Value evalNode(const ast::Unary& n, const ast::Expr& e, Frame& f) {
        const Value v = eval(*n.operand, f);
        if (n.op == ast::UnaryOp::Not)
            return !truthy(v, e.span);
        return -asInt(v, e.span);
    }

    Value evalNode(const ast::Binary& n, const ast::Expr& e, Frame& f) {
        using Op = ast::BinaryOp;
        if (n.op == Op::And)
            return truthy(eval(*n.lhs, f), n.lhs->span) && truthy(eval(*n.rhs, f), n.rhs->span);
        if (n.op == Op::Or)
            return truthy(eval(*n.lhs, f), n.lhs->span) || truthy(eval(*n.rhs, f), n.rhs->span);
        const Value a = eval(*n.lhs, f);
        const Value b = eval(*n.rhs, f);
        switch (n.op) {
        case Op::Eq: return a == b;
        case Op::Ne: return a != b;
        case Op::Add:
            if (std::holds_alternative<std::string>(a) || std::holds_alternative<std::string>(b))
                return show(model_, a) + show(model_, b);
            return asInt(a, e.span) + asInt(b, e.span);
        case Op::Sub: return asInt(a, e.span) - asInt(b, e.span);
        case Op::Mul: return asInt(a, e.span) * asInt(b, e.span);
        case Op::Div: {
            const std::int64_t d = asInt(b, e.span);
            if (d == 0)
                fail("DivisionByZero", "division by zero", e.span);
            return asInt(a, e.span) / d;
        }
        case Op::Lt: return asInt(a, e.span) < asInt(b, e.span);
        case Op::Gt: return asInt(a, e.span) > asInt(b, e.span);
        case Op::Le: return asInt(a, e.span) <= asInt(b, e.span);
        case Op::Ge: return asInt(a, e.span) >= asInt(b, e.span);
        default: break;
        }
        fail("TypeError", "unsupported operator", e.span);
    }

    const binder::Program& program_;
    const Model& model_;
    std::vector<Object> heap_;
    std::size_t depth_ = 0;
};

} // namespace

Value evaluate(const binder::Program& program, const ast::Expr& expr) {
    Interpreter interp(program);
    Frame f;
    return interp.eval(expr, f);
}

TestOutcome runTest(const binder::Program& program, const resolver::PlanStep& step) {
    const Model& model = program.model;
    const auto& entry = model.localTest(step.test);
    const binder::Body& body = program.body(entry.body);

    TestOutcome out;
    out.test = step.test;
    out.executingClass = step.executingClass;
    const auto start = std::chrono::steady_clock::now();

    Interpreter interp(program);
    try {
        Frame f;
        if (entry.level == TestLevel::PackageTest) {
            f.whiteBox = false;
        } else {
            const Value cur = interp.construct(*step.executingClass, {}, body.test->span);
            interp.current = std::get<ObjectRef>(cur);
            if (step.targetProperty)
                interp.aliasTarget(*step.executingClass, *step.targetProperty);
            f.self = interp.current;
            f.lexical = body.scope;
            f.whiteBox = true;
        }
        interp.runBody(body.test->body, f);
        out.status = Status::Pass;
    } catch (const AssertFailure& a) {
        out.status = Status::Fail;
        out.failedAssertSpan = a.span;
        out.message = "assertion failed";
    } catch (const RuntimeError& e) {
        out.status = Status::RuntimeError;
        out.errorCode = e.code();
        out.message = e.what();
        out.errorSpan = e.span();
    }
    out.capturedOutput = std::move(interp.output);
    out.durationMs = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
    return out;
}

std::vector<TestOutcome> runAll(const binder::Program& program, const resolver::ExecutionPlan& plan,
                                const RunOptions& options) {
    std::vector<TestOutcome> out;
    for (const resolver::PlanStep& step : plan.steps) {
        out.push_back(runTest(program, step));
        if (options.failFast && out.back().status != Status::Pass)
            break;
    }
    return out;
}

} // namespace tol::runtime
