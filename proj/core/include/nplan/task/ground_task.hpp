#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nplan/pddl/ast.hpp"
#include "nplan/task/state.hpp"

namespace nplan::task {

// Arithmetic expression over numeric variable indices; flat node vector.
struct GroundExpr {
    enum class Op : std::uint8_t { constant, fluent, add, sub, mul, div, neg };

    struct Node {
        Op op = Op::constant;
        double value = 0.0;
        int fluent = -1;
        int lhs = -1;
        int rhs = -1;
    };

    std::vector<Node> nodes;
    int root = -1;

    // nullopt on division by zero.
    std::optional<double> eval(const State& s) const;
    // Distinct fluent indices appearing in the expression, in first-seen order.
    std::vector<int> fluents() const;
};

struct GroundCondition {
    enum class Kind : std::uint8_t { proposition, numeric };

    Kind kind = Kind::proposition;
    int atom = -1;
    bool negated = false;
    GroundExpr expr;
    pddl::Comparator cmp = pddl::Comparator::ge;
};

// Evaluation failures make a condition unsatisfied rather than an error.
bool holds(const GroundCondition& condition, const State& s);
bool satisfies(const State& s, const std::vector<GroundCondition>& conditions);

enum class NumericEffectOp : std::uint8_t { assign, increase, decrease };

struct GroundNumericEffect {
    int fluent = -1;
    NumericEffectOp op = NumericEffectOp::assign;
    GroundExpr expr;
};

struct GroundAction {
    std::string signature;  // "stack a b i"
    int schema = -1;
    std::vector<GroundCondition> preconditions;
    std::vector<int> adds;     // sorted atom indices
    std::vector<int> deletes;  // sorted atom indices
    std::vector<GroundNumericEffect> numeric_effects;
    double cost = 1.0;
};

struct GroundTask {
    struct AtomInfo {
        int predicate = -1;
        std::vector<int> args;  // object indices
    };
    struct FluentInfo {
        int function = -1;
        std::vector<int> args;
    };

    std::string domain_name;
    std::string problem_name;

    std::vector<std::string> object_names;
    std::vector<bool> object_is_constant;  // true for domain constants
    std::vector<std::string> predicate_names;
    std::vector<std::string> function_names;

    std::vector<AtomInfo> atoms;      // X_p, dense indices
    std::vector<FluentInfo> fluents;  // X_n, dense indices
    std::vector<GroundAction> actions;
    State initial_state;
    std::vector<GroundCondition> goal;  // deduplicated

    std::unordered_map<std::string, int> action_index;  // signature -> index

    std::string atom_name(int index) const;
    std::string fluent_name(int index) const;
    std::string condition_name(const GroundCondition& condition) const;
    std::string expr_name(const GroundExpr& expr) const;

    int find_action(const std::string& signature) const;

    // Copy of the task with a replaced initial state; every search state
    // induces such a task.
    GroundTask with_initial(State s) const;
};

// Successor of s under a, or nullopt when a is inapplicable (including
// evaluation errors in preconditions or effect expressions). Deletes are
// applied before adds; every numeric effect reads the source state.
std::optional<State> apply(const GroundTask& task, const State& s, const GroundAction& a);

// Applicable (action index, successor) pairs in action index order.
std::vector<std::pair<int, State>> successors(const GroundTask& task, const State& s);

struct ValidationResult {
    bool valid = false;
    double cost = 0.0;
    std::size_t failed_step = 0;  // 1-based; plan length + 1 means goal failure
    std::string reason;
    std::vector<State> trace;  // filled on success: s_0 .. s_n
    std::vector<int> actions;  // resolved action indices
};

// Validates `plan` (action signatures, e.g. "(stack a b i)") step by step.
// Throws std::runtime_error on unresolvable action names.
ValidationResult validate_plan(const GroundTask& task, const std::vector<std::string>& plan);

}  // namespace nplan::task
