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

#include <sstream>

#include "tol/parser.hpp"

namespace tol {

std::string ast::TypeRef::str() const {
    switch (kind) {
    case Kind::Int: return "int";
    case Kind::Bool: return "bool";
    case Kind::String: return "string";
    case Kind::Color: return "Color";
    case Kind::Void: return "void";
    case Kind::Class: return className;
    }
    return "?";
}

namespace frontend {

using namespace tol::ast;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* opText(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

class Printer {
public:
    std::string run(const Unit& unit) {
        for (const PackageDecl& pkg : unit.packages) {
            if (pkg.implicit) {
                for (const PackageItem& item : pkg.items)
                    printItem(item);
                continue;
            }
            line("package " + pkg.name + " {");
            ++depth_;
            for (const PackageItem& item : pkg.items)
                printItem(item);
            --depth_;
            line("}");
        }
        return out_.str();
    }

private:
    void line(const std::string& text) { out_ << std::string(depth_ * 4, ' ') << text << '\n'; }

    void printItem(const PackageItem& item) {
        std::visit(overloaded{[&](const TestDecl& t) { printTest(t); },
                              [&](const ClassDecl& c) { printClass(c); }},
                   item);
    }

    static std::string vis(Visibility v) { return v == Visibility::Private ? "private " : "public "; }

    static std::string params(const std::vector<Param>& ps) {
        std::string s = "(";
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i > 0)
                s += ", ";
            s += ps[i].type.str() + " " + ps[i].name;
        }
        return s + ")";
    }

    void printClass(const ClassDecl& c) {
        std::string head = "class " + c.name;
        for (std::size_t i = 0; i < c.parents.size(); ++i)
            head += (i == 0 ? " extends " : ", ") + c.parents[i].name;
        line(head + " {");
        ++depth_;
        for (const Member& m : c.members) {
            std::visit(
                overloaded{
                    [&](const FieldDecl& f) {
                        std::string s = vis(f.visibility) + f.type.str() + " " + f.name;
                        if (f.init)
                            s += " = " + expr(*f.init);
                        line(s + ";");
                    },
                    [&](const MethodDecl& m) {
                        line(vis(m.visibility) + m.returnType.str() + " " + m.name + params(m.params) + " {");
                        body(m.body);
                    },
                    [&](const CtorDecl& ctor) {
                        line(vis(ctor.visibility) + c.name + params(ctor.params) + " {");
                        body(ctor.body);
                    },
                    [&](const TestDecl& t) { printTest(t); },
                    [&](const ResolveDecl& r) { printResolve(r); },
                },
                m);
        }
        --depth_;
        line("}");
    }

    void printTest(const TestDecl& t) {
        std::string head = "test " + t.name;
        if (t.target)
            head += " for " + *t.target;
        line(head + " {");
        body(t.body);
    }

    void printResolve(const ResolveDecl& r) {
        std::string s = "resolve " + r.subject;
        switch (r.strategy) {
        case ResolveStrategy::Unify:
            s += " unify";
            break;
        case ResolveStrategy::Select:
            s += " select " + r.selection->parent + "." + r.selection->member;
            break;
        case ResolveStrategy::Rename:
            s += " rename";
            for (std::size_t i = 0; i < r.renames.size(); ++i) {
                const RenameItem& item = r.renames[i];
                s += (i == 0 ? " " : ", ") + item.from.parent + "." + item.from.member + " as " + item.newName;
            }
            break;
        }
        line(s + ";");
    }

    // Prints the statements of `b` one level deeper, then the closing brace.
    void body(const Block& b) {
        ++depth_;
        for (const StmtPtr& s : b.stmts)
            stmt(*s);
        --depth_;
        line("}");
    }

    void stmt(const Stmt& s) {
        std::visit(overloaded{
                       [&](const VarDecl& d) {
                           std::string t = d.type.str() + " " + d.name;
                           if (d.init)
                               t += " = " + expr(*d.init);
                           line(t + ";");
                       },
                       [&](const Assign& a) { line(expr(*a.target) + " = " + expr(*a.value) + ";"); },
                       [&](const ExprStmt& e) { line(expr(*e.expr) + ";"); },
                       [&](const If& i) {
                           line("if (" + expr(*i.cond) + ") {");
                           body(i.thenBlock);
                           if (i.elseBlock) {
                               line("else {");
                               body(*i.elseBlock);
                           }
                       },
                       [&](const Return& r) { line(r.value ? "return " + expr(*r.value) + ";" : "return;"); },
                       [&](const Assert& a) { line("assert(" + expr(*a.cond) + ");"); },
                       [&](const Print& p) { line("print(" + expr(*p.value) + ");"); },
                       [&](const BlockStmt& b) {
                           line("{");
                           body(b.block);
                       },
                       [&](const SuperCtorCall& c) { line("super" + args(c.args) + ";"); },
                   },
                   s.node);
    }

    std::string args(const std::vector<ExprPtr>& as) {
        std::string s = "(";
        for (std::size_t i = 0; i < as.size(); ++i) {
            if (i > 0)
                s += ", ";
            s += expr(*as[i]);
        }
        return s + ")";
    }

    std::string expr(const Expr& e) {
        return std::visit(
            overloaded{
                [&](const IntLit& v) { return std::to_string(v.value); },
                [&](const StringLit& v) { return quote(v.value); },
                [&](const BoolLit& v) { return std::string(v.value ? "true" : "false"); },
                [&](const NullLit&) { return std::string("null"); },
                [&](const ColorLit& v) {
                    return std::string(v.value == ColorValue::Red ? "Color.Red" : "Color.Green");
                },
                [&](const Name& v) { return v.id; },
                [&](const This&) { return std::string("this"); },
                [&](const CurrentRef&) { return std::string("Current"); },
                [&](const FieldAccess& v) { return expr(*v.object) + "." + v.field; },
                [&](const MethodCall& v) {
                    std::string recv = v.receiver ? expr(*v.receiver) + "." : "";
                    return recv + v.method + args(v.args);
                },
                [&](const SuperCall& v) { return "super." + v.method + args(v.args); },
                [&](const NewObject& v) { return "new " + v.className + args(v.args); },
                [&](const ClassNameOf& v) { return "classnameOf(" + expr(*v.operand) + ")"; },
                [&](const InstanceOf& v) { return "(" + expr(*v.operand) + " instanceof " + v.className + ")"; },
                [&](const Unary& v) {
                    return std::string("(") + (v.op == UnaryOp::Not ? "!" : "-") + expr(*v.operand) + ")";
                },
                [&](const Binary& v) {
                    return "(" + expr(*v.lhs) + " " + opText(v.op) + " " + expr(*v.rhs) + ")";
                },
            },
            e.node);
    }

    std::ostringstream out_;
    int depth_ = 0;
};

} // namespace

std::string print(const Unit& unit) { return Printer().run(unit); }

} // namespace frontend
} // namespace tol
