#include "nplan/pddl/printer.hpp"

#include <sstream>

namespace nplan::pddl {

namespace {

void print_expr(std::ostream& os, const ArithExpr& expr, int node);

void print_fluent(std::ostream& os, const FluentRef& ref) {
    os << "(" << ref.function;
    for (const Term& t : ref.args) os << " " << t.name;
    os << ")";
}

void print_expr(std::ostream& os, const ArithExpr& expr, int node) {
    const ArithExpr::Node& n = expr.nodes[node];
    switch (n.op) {
        case ArithExpr::Op::constant:
            os << n.value.to_string();
            break;
        case ArithExpr::Op::fluent:
            print_fluent(os, n.fluent);
            break;
        case ArithExpr::Op::neg:
            os << "(- ";
            print_expr(os, expr, n.lhs);
            os << ")";
            break;
        default: {
            const char* op = n.op == ArithExpr::Op::add   ? "+"
                             : n.op == ArithExpr::Op::sub ? "-"
                             : n.op == ArithExpr::Op::mul ? "*"
                                                          : "/";
            os << "(" << op << " ";
            print_expr(os, expr, n.lhs);
            os << " ";
            print_expr(os, expr, n.rhs);
            os << ")";
        }
    }
}

void print_typed_names(std::ostream& os, const std::vector<TypedName>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) os << " ";
        os << names[i].name << " - " << names[i].type;
    }
}

void print_condition(std::ostream& os, const Condition& cond) {
    if (const Literal* lit = std::get_if<Literal>(&cond)) {
        os << to_string(*lit);
    } else {
        const NumericCondition& nc = std::get<NumericCondition>(cond);
        std::ostringstream expr;
        print_expr(expr, nc.expr, nc.expr.root);
        os << "(" << comparator_token(nc.cmp) << " " << expr.str() << " 0)";
    }
}

}  // namespace

std::string to_string(const ArithExpr& expr) {
    std::ostringstream os;
    if (expr.root >= 0) print_expr(os, expr, expr.root);
    return os.str();
}

std::string to_string(const Literal& literal) {
    std::ostringstream os;
    if (literal.negated) os << "(not ";
    os << "(" << literal.predicate;
    for (const Term& t : literal.args) os << " " << t.name;
    os << ")";
    if (literal.negated) os << ")";
    return os.str();
}

std::string to_string(const Condition& condition) {
    std::ostringstream os;
    print_condition(os, condition);
    return os.str();
}

std::string to_pddl(const LiftedDomain& domain) {
    std::ostringstream os;
    os << "(define (domain " << domain.name << ")\n";
    os << "  (:requirements :strips :typing :numeric-fluents)\n";
    if (!domain.types.empty()) {
        os << "  (:types";
        for (const TypeDecl& t : domain.types) os << " " << t.name << " - " << t.parent;
        os << ")\n";
    }
    if (!domain.constants.empty()) {
        os << "  (:constants ";
        print_typed_names(os, domain.constants);
        os << ")\n";
    }
    if (!domain.predicates.empty()) {
        os << "  (:predicates\n";
        for (const PredicateDecl& p : domain.predicates) {
            os << "    (" << p.name;
            for (std::size_t i = 0; i < p.param_types.size(); ++i)
                os << " ?x" << i << " - " << p.param_types[i];
            os << ")\n";
        }
        os << "  )\n";
    }
    if (!domain.functions.empty()) {
        os << "  (:functions\n";
        for (const FunctionDecl& f : domain.functions) {
            os << "    (" << f.name;
            for (std::size_t i = 0; i < f.param_types.size(); ++i)
                os << " ?x" << i << " - " << f.param_types[i];
            os << ")\n";
        }
        os << "  )\n";
    }
    for (const ActionSchema& a : domain.schemata) {
        os << "  (:action " << a.name << "\n";
        os << "    :parameters (";
        print_typed_names(os, a.parameters);
        os << ")\n";
        os << "    :precondition (and";
        for (const Condition& c : a.preconditions) {
            os << "\n      ";
            print_condition(os, c);
        }
        os << ")\n";
        os << "    :effect (and";
        for (const Literal& lit : a.prop_effects) os << "\n      " << to_string(lit);
        for (const NumericEffect& eff : a.numeric_effects) {
            const char* op = eff.op == NumericEffectOp::assign     ? "assign"
                             : eff.op == NumericEffectOp::increase ? "increase"
                                                                   : "decrease";
            os << "\n      (" << op << " ";
            std::ostringstream ref;
            print_fluent(ref, eff.fluent);
            os << ref.str() << " " << to_string(eff.expr) << ")";
        }
        if (!(a.cost == ArithExpr::constant(Rational::integer(1))))
            os << "\n      (increase (total-cost) " << to_string(a.cost) << ")";
        os << ")\n";
        os << "  )\n";
    }
    os << ")\n";
    return os.str();
}

std::string to_pddl(const LiftedProblem& problem) {
    std::ostringstream os;
    os << "(define (problem " << problem.name << ")\n";
    os << "  (:domain " << problem.domain_name << ")\n";
    if (!problem.objects.empty()) {
        os << "  (:objects ";
        print_typed_names(os, problem.objects);
        os << ")\n";
    }
    os << "  (:init\n";
    for (const GroundAtom& atom : problem.init_atoms) {
        os << "    (" << atom.predicate;
        for (const std::string& arg : atom.args) os << " " << arg;
        os << ")\n";
    }
    for (const GroundFluentInit& fi : problem.init_fluents) {
        os << "    (= (" << fi.function;
        for (const std::string& arg : fi.args) os << " " << arg;
        os << ") " << fi.value.to_string() << ")\n";
    }
    os << "  )\n";
    os << "  (:goal (and";
    for (const Condition& c : problem.goal) {
        os << "\n    ";
        print_condition(os, c);
    }
    os << "))\n";
    os << ")\n";
    return os.str();
}

}  // namespace nplan::pddl
