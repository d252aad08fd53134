#include "nplan/task/grounder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

namespace nplan::task {

namespace {

using pddl::ActionSchema;
using pddl::ArithExpr;
using pddl::Condition;
using pddl::LiftedDomain;
using pddl::LiftedProblem;
using pddl::Literal;
using pddl::NumericCondition;
using pddl::Term;
using pddl::TypedName;

struct GrounderState {
    const LiftedDomain* domain;
    GroundTask task;
    std::unordered_map<std::string, int> object_ids;
    std::vector<std::string> object_types;
    std::unordered_map<std::string, int> predicate_ids;
    std::unordered_map<std::string, int> function_ids;
    std::map<std::pair<int, std::vector<int>>, int> atom_ids;
    std::map<std::pair<int, std::vector<int>>, int> fluent_ids;

    int object_id(const std::string& name) const {
        auto it = object_ids.find(name);
        if (it == object_ids.end()) throw GroundError("unknown object '" + name + "'");
        return it->second;
    }
};

std::vector<int> candidates_for_type(const GrounderState& g, const std::string& type) {
    std::vector<int> result;
    for (std::size_t i = 0; i < g.task.object_names.size(); ++i) {
        if (g.domain->is_subtype(g.object_types[i], type)) result.push_back(static_cast<int>(i));
    }
    return result;
}

// Enumerates all tuples from the per-position candidate lists in
// lexicographic order and calls fn on each.
template <typename Fn>
void enumerate_bindings(const std::vector<std::vector<int>>& candidates, Fn&& fn) {
    std::vector<int> tuple(candidates.size(), 0);
    for (const std::vector<int>& c : candidates) {
        if (c.empty()) return;
    }
    std::vector<std::size_t> cursor(candidates.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < candidates.size(); ++i) tuple[i] = candidates[i][cursor[i]];
        fn(tuple);
        std::size_t pos = candidates.size();
        while (pos > 0) {
            --pos;
            if (++cursor[pos] < candidates[pos].size()) break;
            cursor[pos] = 0;
            if (pos == 0) return;
        }
        if (candidates.empty()) return;
    }
}

void index_all_atoms(GrounderState& g) {
    for (std::size_t p = 0; p < g.domain->predicates.size(); ++p) {
        const pddl::PredicateDecl& decl = g.domain->predicates[p];
        std::vector<std::vector<int>> candidates;
        for (const std::string& type : decl.param_types)
            candidates.push_back(candidates_for_type(g, type));
        enumerate_bindings(candidates, [&](const std::vector<int>& tuple) {
            GroundTask::AtomInfo info;
            info.predicate = static_cast<int>(p);
            info.args = tuple;
            int id = static_cast<int>(g.task.atoms.size());
            g.atom_ids.emplace(std::make_pair(static_cast<int>(p), tuple), id);
            g.task.atoms.push_back(std::move(info));
        });
    }
}

int resolve_term(const GrounderState& g, const Term& term,
                 const std::unordered_map<std::string, int>& binding) {
    if (term.is_variable) return binding.at(term.name);
    return g.object_id(term.name);
}

int resolve_atom(const GrounderState& g, const Literal& lit,
                 const std::unordered_map<std::string, int>& binding) {
    int predicate = g.predicate_ids.at(lit.predicate);
    std::vector<int> args;
    args.reserve(lit.args.size());
    for (const Term& t : lit.args) args.push_back(resolve_term(g, t, binding));
    auto it = g.atom_ids.find(std::make_pair(predicate, args));
    if (it == g.atom_ids.end()) {
        // Reachable only when an argument's type does not fit the declaration,
        // which the parser rejects; kept as a safeguard.
        throw GroundError("atom '" + lit.predicate + "' has no index");
    }
    return it->second;
}

int resolve_fluent(const GrounderState& g, const pddl::FluentRef& ref,
                   const std::unordered_map<std::string, int>& binding,
                   const std::string& context) {
    int function = g.function_ids.at(ref.function);
    std::vector<int> args;
    args.reserve(ref.args.size());
    for (const Term& t : ref.args) args.push_back(resolve_term(g, t, binding));
    auto it = g.fluent_ids.find(std::make_pair(function, args));
    if (it == g.fluent_ids.end()) {
        std::string name = ref.function;
        if (!args.empty()) {
            name += "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) name += ",";
                name += g.task.object_names[args[i]];
            }
            name += ")";
        }
        throw GroundError(context + " references numeric fluent '" + name +
                          "' with no initial value");
    }
    return it->second;
}

GroundExpr ground_expr(const GrounderState& g, const ArithExpr& expr,
                       const std::unordered_map<std::string, int>& binding,
                       const std::string& context) {
    GroundExpr out;
    out.nodes.reserve(expr.nodes.size());
    for (const ArithExpr::Node& n : expr.nodes) {
        GroundExpr::Node m;
        m.lhs = n.lhs;
        m.rhs = n.rhs;
        switch (n.op) {
            case ArithExpr::Op::constant:
                m.op = GroundExpr::Op::constant;
                m.value = n.value.to_double();
                break;
            case ArithExpr::Op::fluent:
                m.op = GroundExpr::Op::fluent;
                m.fluent = resolve_fluent(g, n.fluent, binding, context);
                break;
            case ArithExpr::Op::add: m.op = GroundExpr::Op::add; break;
            case ArithExpr::Op::sub: m.op = GroundExpr::Op::sub; break;
            case ArithExpr::Op::mul: m.op = GroundExpr::Op::mul; break;
            case ArithExpr::Op::div: m.op = GroundExpr::Op::div; break;
            case ArithExpr::Op::neg: m.op = GroundExpr::Op::neg; break;
        }
        out.nodes.push_back(std::move(m));
    }
    out.root = expr.root;
    return out;
}

GroundCondition ground_condition(const GrounderState& g, const Condition& cond,
                                 const std::unordered_map<std::string, int>& binding,
                                 const std::string& context) {
    GroundCondition out;
    if (const Literal* lit = std::get_if<Literal>(&cond)) {
        out.kind = GroundCondition::Kind::proposition;
        out.atom = resolve_atom(g, *lit, binding);
        out.negated = lit->negated;
    } else {
        const NumericCondition& nc = std::get<NumericCondition>(cond);
        out.kind = GroundCondition::Kind::numeric;
        out.expr = ground_expr(g, nc.expr, binding, context);
        out.cmp = nc.cmp;
    }
    return out;
}

}  // namespace

GroundTask ground(const LiftedDomain& domain, const LiftedProblem& problem) {
    GrounderState g;
    g.domain = &domain;
    g.task.domain_name = domain.name;
    g.task.problem_name = problem.name;

    for (const TypedName& c : domain.constants) {
        g.object_ids.emplace(c.name, static_cast<int>(g.task.object_names.size()));
        g.task.object_names.push_back(c.name);
        g.task.object_is_constant.push_back(true);
        g.object_types.push_back(c.type);
    }
    for (const TypedName& o : problem.objects) {
        g.object_ids.emplace(o.name, static_cast<int>(g.task.object_names.size()));
        g.task.object_names.push_back(o.name);
        g.task.object_is_constant.push_back(false);
        g.object_types.push_back(o.type);
    }

    for (std::size_t i = 0; i < domain.predicates.size(); ++i) {
        g.predicate_ids.emplace(domain.predicates[i].name, static_cast<int>(i));
        g.task.predicate_names.push_back(domain.predicates[i].name);
    }
    for (std::size_t i = 0; i < domain.functions.size(); ++i) {
        g.function_ids.emplace(domain.functions[i].name, static_cast<int>(i));
        g.task.function_names.push_back(domain.functions[i].name);
    }

    index_all_atoms(g);

    // X_n holds exactly the fluents assigned in :init.
    for (const pddl::GroundFluentInit& fi : problem.init_fluents) {
        int function = g.function_ids.at(fi.function);
        std::vector<int> args;
        for (const std::string& name : fi.args) args.push_back(g.object_id(name));
        GroundTask::FluentInfo info;
        info.function = function;
        info.args = args;
        g.fluent_ids.emplace(std::make_pair(function, std::move(args)),
                             static_cast<int>(g.task.fluents.size()));
        g.task.fluents.push_back(std::move(info));
    }

    g.task.initial_state.props = Bitset(g.task.atoms.size());
    g.task.initial_state.numerics.resize(g.task.fluents.size(), 0.0);
    for (const pddl::GroundAtom& atom : problem.init_atoms) {
        int predicate = g.predicate_ids.at(atom.predicate);
        std::vector<int> args;
        for (const std::string& name : atom.args) args.push_back(g.object_id(name));
        g.task.initial_state.props.set(
            static_cast<std::size_t>(g.atom_ids.at(std::make_pair(predicate, args))));
    }
    for (std::size_t i = 0; i < problem.init_fluents.size(); ++i)
        g.task.initial_state.numerics[i] = problem.init_fluents[i].value.to_double();

    const std::unordered_map<std::string, int> empty_binding;
    std::set<std::string> goal_keys;
    for (const Condition& cond : problem.goal) {
        GroundCondition gc = ground_condition(g, cond, empty_binding, "goal");
        std::string key = (gc.negated ? "!" : "") + g.task.condition_name(gc);
        if (goal_keys.insert(key).second) g.task.goal.push_back(std::move(gc));
    }

    for (std::size_t s = 0; s < domain.schemata.size(); ++s) {
        const ActionSchema& schema = domain.schemata[s];
        std::optional<pddl::Rational> cost = schema.cost.constant_value();
        if (!cost)
            throw GroundError("action '" + schema.name + "' has a non-constant cost expression");
        double cost_value = cost->to_double();
        if (cost_value < 0.0)
            throw GroundError("action '" + schema.name + "' has a negative cost");

        std::vector<std::vector<int>> candidates;
        for (const TypedName& param : schema.parameters)
            candidates.push_back(candidates_for_type(g, param.type));

        enumerate_bindings(candidates, [&](const std::vector<int>& tuple) {
            std::unordered_map<std::string, int> binding;
            for (std::size_t i = 0; i < schema.parameters.size(); ++i)
                binding.emplace(schema.parameters[i].name, tuple[i]);

            GroundAction action;
            action.schema = static_cast<int>(s);
            action.signature = schema.name;
            for (int obj : tuple) action.signature += " " + g.task.object_names[obj];
            action.cost = cost_value;

            std::string context = "action '" + action.signature + "'";
            for (const Condition& cond : schema.preconditions)
                action.preconditions.push_back(ground_condition(g, cond, binding, context));

            std::set<int> adds, deletes;
            for (const Literal& lit : schema.prop_effects) {
                int atom = resolve_atom(g, lit, binding);
                (lit.negated ? deletes : adds).insert(atom);
            }
            action.adds.assign(adds.begin(), adds.end());
            action.deletes.assign(deletes.begin(), deletes.end());

            std::set<int> touched;
            for (const pddl::NumericEffect& eff : schema.numeric_effects) {
                GroundNumericEffect ge;
                ge.fluent = resolve_fluent(g, eff.fluent, binding, context);
                if (!touched.insert(ge.fluent).second)
                    throw GroundError(context + " assigns fluent '" +
                                      g.task.fluent_name(ge.fluent) + "' twice");
                ge.op = eff.op == pddl::NumericEffectOp::assign     ? NumericEffectOp::assign
                        : eff.op == pddl::NumericEffectOp::increase ? NumericEffectOp::increase
                                                                    : NumericEffectOp::decrease;
                ge.expr = ground_expr(g, eff.expr, binding, context);
                action.numeric_effects.push_back(std::move(ge));
            }

            int index = static_cast<int>(g.task.actions.size());
            g.task.action_index.emplace(action.signature, index);
            g.task.actions.push_back(std::move(action));
        });
    }

    return g.task;
}

}  // namespace nplan::task
