#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nplan::pddl {

// Exact rational numeric literal. Stays exact through parsing and printing;
// grounding converts to double.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational integer(std::int64_t n) { return Rational{n, 1}; }

    void normalize();
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Exact decimal form ("2", "-1.5"). Requires den to factor into 2s and 5s,
    // which holds for every literal the parser produces.
    std::string to_string() const;

    bool operator==(const Rational&) const = default;
};

// A term is either a schema variable ("?x") or an object/constant name.
struct Term {
    bool is_variable = false;
    std::string name;

    bool operator==(const Term&) const = default;
};

struct FluentRef {
    std::string function;
    std::vector<Term> args;

    bool operator==(const FluentRef&) const = default;
};

// Arithmetic expression tree stored as a flat node vector; `root` indexes the
// top node. Value semantics give deep structural equality for free.
struct ArithExpr {
    enum class Op : std::uint8_t { constant, fluent, add, sub, mul, div, neg };

    struct Node {
        Op op = Op::constant;
        Rational value;
        FluentRef fluent;
        int lhs = -1;
        int rhs = -1;

        bool operator==(const Node&) const = default;
    };

    std::vector<Node> nodes;
    int root = -1;

    static ArithExpr constant(Rational r);
    static ArithExpr fluent(FluentRef ref);
    static ArithExpr binary(Op op, ArithExpr lhs, ArithExpr rhs);
    static ArithExpr negate(ArithExpr operand);

    bool empty() const { return root < 0; }
    // All fluent references appearing in the tree, in node order.
    std::vector<const FluentRef*> fluent_refs() const;
    // Value if the expression contains no fluent references.
    std::optional<Rational> constant_value() const;

    bool operator==(const ArithExpr&) const = default;
};

enum class Comparator : std::uint8_t { ge, gt, eq };

const char* comparator_token(Comparator cmp);

struct Literal {
    std::string predicate;
    std::vector<Term> args;
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

// Normalized numeric condition: expr cmp 0.
struct NumericCondition {
    ArithExpr expr;
    Comparator cmp = Comparator::ge;

    bool operator==(const NumericCondition&) const = default;
};

using Condition = std::variant<Literal, NumericCondition>;

enum class NumericEffectOp : std::uint8_t { assign, increase, decrease };

struct NumericEffect {
    FluentRef fluent;
    NumericEffectOp op = NumericEffectOp::assign;
    ArithExpr expr;

    bool operator==(const NumericEffect&) const = default;
};

struct TypedName {
    std::string name;
    std::string type = "object";

    bool operator==(const TypedName&) const = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<std::string> param_types;

    std::size_t arity() const { return param_types.size(); }
    bool operator==(const PredicateDecl&) const = default;
};

struct FunctionDecl {
    std::string name;
    std::vector<std::string> param_types;

    std::size_t arity() const { return param_types.size(); }
    bool operator==(const FunctionDecl&) const = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> parameters;
    std::vector<Condition> preconditions;
    std::vector<Literal> prop_effects;  // negated entries are deletes
    std::vector<NumericEffect> numeric_effects;
    ArithExpr cost;  // defaults to constant 1

    bool operator==(const ActionSchema&) const = default;
};

struct TypeDecl {
    std::string name;
    std::string parent = "object";

    bool operator==(const TypeDecl&) const = default;
};

struct LiftedDomain {
    std::string name;
    std::vector<TypeDecl> types;  // implicit root "object" is not listed
    std::vector<PredicateDecl> predicates;
    std::vector<FunctionDecl> functions;
    std::vector<ActionSchema> schemata;
    std::vector<TypedName> constants;

    const PredicateDecl* find_predicate(const std::string& name) const;
    const FunctionDecl* find_function(const std::string& name) const;
    bool has_type(const std::string& name) const;
    // Reflexive-transitive subtype test along parent chains.
    bool is_subtype(const std::string& type, const std::string& ancestor) const;

    bool operator==(const LiftedDomain&) const = default;
};

struct GroundAtom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const GroundAtom&) const = default;
};

struct GroundFluentInit {
    std::string function;
    std::vector<std::string> args;
    Rational value;

    bool operator==(const GroundFluentInit&) const = default;
};

struct LiftedProblem {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<GroundAtom> init_atoms;
    std::vector<GroundFluentInit> init_fluents;
    std::vector<Condition> goal;  // ground: every term is an object name

    bool operator==(const LiftedProblem&) const = default;
};

}  // namespace nplan::pddl
