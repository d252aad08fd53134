#include "nplan/task/ground_task.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nplan::task {

std::optional<double> GroundExpr::eval(const State& s) const {
    // Nodes are created bottom-up, so a forward sweep evaluates children first.
    thread_local std::vector<double> vals;
    vals.assign(nodes.size(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
            case Op::constant: vals[i] = n.value; break;
            case Op::fluent: vals[i] = s.numerics[n.fluent]; break;
            case Op::add: vals[i] = vals[n.lhs] + vals[n.rhs]; break;
            case Op::sub: vals[i] = vals[n.lhs] - vals[n.rhs]; break;
            case Op::mul: vals[i] = vals[n.lhs] * vals[n.rhs]; break;
            case Op::div:
                if (vals[n.rhs] == 0.0) return std::nullopt;
                vals[i] = vals[n.lhs] / vals[n.rhs];
                break;
            case Op::neg: vals[i] = -vals[n.lhs]; break;
        }
    }
    return vals[root];
}

std::vector<int> GroundExpr::fluents() const {
    std::vector<int> result;
    for (const Node& n : nodes) {
        if (n.op == Op::fluent &&
            std::find(result.begin(), result.end(), n.fluent) == result.end())
            result.push_back(n.fluent);
    }
    return result;
}

bool holds(const GroundCondition& condition, const State& s) {
    if (condition.kind == GroundCondition::Kind::proposition)
        return s.props.test(condition.atom) != condition.negated;
    std::optional<double> value = condition.expr.eval(s);
    if (!value) return false;
    switch (condition.cmp) {
        case pddl::Comparator::ge: return *value >= 0.0;
        case pddl::Comparator::gt: return *value > 0.0;
        case pddl::Comparator::eq: return *value == 0.0;
    }
    return false;
}

bool satisfies(const State& s, const std::vector<GroundCondition>& conditions) {
    return std::all_of(conditions.begin(), conditions.end(),
                       [&](const GroundCondition& c) { return holds(c, s); });
}

std::optional<State> apply(const GroundTask& task, const State& s, const GroundAction& a) {
    (void)task;
    if (!satisfies(s, a.preconditions)) return std::nullopt;
    // All numeric effects read the source state; evaluation errors make the
    // action inapplicable.
    thread_local std::vector<double> new_values;
    new_values.resize(a.numeric_effects.size());
    for (std::size_t i = 0; i < a.numeric_effects.size(); ++i) {
        std::optional<double> v = a.numeric_effects[i].expr.eval(s);
        if (!v) return std::nullopt;
        new_values[i] = *v;
    }
    State succ = s;
    for (int atom : a.deletes) succ.props.reset(atom);
    for (int atom : a.adds) succ.props.set(atom);
    for (std::size_t i = 0; i < a.numeric_effects.size(); ++i) {
        const GroundNumericEffect& eff = a.numeric_effects[i];
        switch (eff.op) {
            case NumericEffectOp::assign: succ.numerics[eff.fluent] = new_values[i]; break;
            case NumericEffectOp::increase: succ.numerics[eff.fluent] += new_values[i]; break;
            case NumericEffectOp::decrease: succ.numerics[eff.fluent] -= new_values[i]; break;
        }
    }
    return succ;
}

std::vector<std::pair<int, State>> successors(const GroundTask& task, const State& s) {
    std::vector<std::pair<int, State>> result;
    for (std::size_t i = 0; i < task.actions.size(); ++i) {
        if (std::optional<State> succ = apply(task, s, task.actions[i]))
            result.emplace_back(static_cast<int>(i), std::move(*succ));
    }
    return result;
}

std::string GroundTask::atom_name(int index) const {
    const AtomInfo& info = atoms[index];
    std::string name = predicate_names[info.predicate];
    if (!info.args.empty()) {
        name += "(";
        for (std::size_t i = 0; i < info.args.size(); ++i) {
            if (i) name += ",";
            name += object_names[info.args[i]];
        }
        name += ")";
    }
    return name;
}

std::string GroundTask::fluent_name(int index) const {
    const FluentInfo& info = fluents[index];
    std::string name = function_names[info.function];
    if (!info.args.empty()) {
        name += "(";
        for (std::size_t i = 0; i < info.args.size(); ++i) {
            if (i) name += ",";
            name += object_names[info.args[i]];
        }
        name += ")";
    }
    return name;
}

std::string GroundTask::expr_name(const GroundExpr& expr) const {
    std::vector<std::string> parts(expr.nodes.size());
    for (std::size_t i = 0; i < expr.nodes.size(); ++i) {
        const GroundExpr::Node& n = expr.nodes[i];
        std::ostringstream os;
        switch (n.op) {
            case GroundExpr::Op::constant: {
                double v = n.value;
                if (v == static_cast<std::int64_t>(v))
                    os << static_cast<std::int64_t>(v);
                else
                    os << v;
                break;
            }
            case GroundExpr::Op::fluent: os << fluent_name(n.fluent); break;
            case GroundExpr::Op::add: os << "(" << parts[n.lhs] << " + " << parts[n.rhs] << ")"; break;
            case GroundExpr::Op::sub: os << "(" << parts[n.lhs] << " - " << parts[n.rhs] << ")"; break;
            case GroundExpr::Op::mul: os << "(" << parts[n.lhs] << " * " << parts[n.rhs] << ")"; break;
            case GroundExpr::Op::div: os << "(" << parts[n.lhs] << " / " << parts[n.rhs] << ")"; break;
            case GroundExpr::Op::neg: os << "(-" << parts[n.lhs] << ")"; break;
        }
        parts[i] = os.str();
    }
    return parts[expr.root];
}

std::string GroundTask::condition_name(const GroundCondition& condition) const {
    if (condition.kind == GroundCondition::Kind::proposition) {
        std::string name = atom_name(condition.atom);
        return condition.negated ? "(not " + name + ")" : name;
    }
    return expr_name(condition.expr) + " " + pddl::comparator_token(condition.cmp) + " 0";
}

int GroundTask::find_action(const std::string& signature) const {
    auto it = action_index.find(signature);
    return it == action_index.end() ? -1 : it->second;
}

GroundTask GroundTask::with_initial(State s) const {
    GroundTask copy = *this;
    copy.initial_state = std::move(s);
    return copy;
}

ValidationResult validate_plan(const GroundTask& task, const std::vector<std::string>& plan) {
    ValidationResult result;
    result.trace.push_back(task.initial_state);
    for (std::size_t step = 0; step < plan.size(); ++step) {
        int index = task.find_action(plan[step]);
        if (index < 0)
            throw std::runtime_error("unknown action '(" + plan[step] + ")' at step " +
                                     std::to_string(step + 1));
        const GroundAction& action = task.actions[index];
        std::optional<State> succ = apply(task, result.trace.back(), action);
        if (!succ) {
            result.failed_step = step + 1;
            for (const GroundCondition& pre : action.preconditions) {
                if (!holds(pre, result.trace.back())) {
                    const char* kind = pre.kind == GroundCondition::Kind::numeric
                                           ? "numeric precondition "
                                           : "precondition ";
                    result.reason = kind + task.condition_name(pre) + " unsatisfied";
                    break;
                }
            }
            if (result.reason.empty()) result.reason = "effect evaluation failed";
            return result;
        }
        result.actions.push_back(index);
        result.trace.push_back(std::move(*succ));
        result.cost += action.cost;
    }
    if (!satisfies(result.trace.back(), task.goal)) {
        result.failed_step = plan.size() + 1;
        for (const GroundCondition& g : task.goal) {
            if (!holds(g, result.trace.back())) {
                result.reason = "goal condition " + task.condition_name(g) + " unsatisfied";
                break;
            }
        }
        return result;
    }
    result.valid = true;
    return result;
}

}  // namespace nplan::task
