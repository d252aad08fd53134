#include "nplan/nilg/graph.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nplan::nilg {

CatFeature CatFeature::constant_object(std::string name) {
    CatFeature f;
    f.kind = Kind::constant_object;
    f.symbol = std::move(name);
    return f;
}

CatFeature CatFeature::predicate(std::string symbol, PropStatus status) {
    CatFeature f;
    f.kind = Kind::predicate;
    f.symbol = std::move(symbol);
    f.prop_status = status;
    return f;
}

CatFeature CatFeature::function(std::string symbol) {
    CatFeature f;
    f.kind = Kind::function;
    f.symbol = std::move(symbol);
    return f;
}

CatFeature CatFeature::numeric_goal(pddl::Comparator cmp, bool achieved) {
    CatFeature f;
    f.kind = Kind::numeric_goal;
    f.cmp = cmp;
    f.achieved = achieved;
    return f;
}

std::string CatFeature::canonical() const {
    switch (kind) {
        case Kind::object: return "obj";
        case Kind::constant_object: return "obj:" + symbol;
        case Kind::predicate: {
            const char* status = prop_status == PropStatus::achieved_goal ? "achieved-goal"
                                 : prop_status == PropStatus::unachieved_goal
                                     ? "unachieved-goal"
                                     : "non-goal";
            return "pred:" + symbol + ":" + status;
        }
        case Kind::function: return "func:" + symbol;
        case Kind::numeric_goal:
            return std::string("ngoal:") + pddl::comparator_token(cmp) + ":" +
                   (achieved ? "achieved" : "unachieved");
    }
    return "?";
}

NilgGraph build_nilg(const task::GroundTask& task, const task::State& s) {
    NilgGraph graph;

    // Objects first; their node index equals the object index.
    for (std::size_t i = 0; i < task.object_names.size(); ++i) {
        NilgGraph::Node node;
        node.cat = task.object_is_constant[i] ? CatFeature::constant_object(task.object_names[i])
                                              : CatFeature::object();
        node.origin = NilgGraph::Origin::object;
        node.origin_index = static_cast<int>(i);
        graph.nodes.push_back(std::move(node));
    }

    // Propositional goal atoms, for status assignment and merging.
    std::unordered_map<int, bool> goal_atoms;  // atom -> seen
    for (const task::GroundCondition& g : task.goal) {
        if (g.kind != task::GroundCondition::Kind::proposition) continue;
        if (g.negated)
            throw std::runtime_error("negative propositional goals have no graph encoding");
        goal_atoms.emplace(g.atom, false);
    }

    auto add_atom_edges = [&](int node, int atom) {
        const task::GroundTask::AtomInfo& info = task.atoms[atom];
        for (std::size_t pos = 0; pos < info.args.size(); ++pos) {
            graph.edges.push_back({node, info.args[pos], static_cast<int>(pos) + 1});
        }
    };

    for (std::size_t atom = 0; atom < task.atoms.size(); ++atom) {
        if (!s.props.test(atom)) continue;
        auto goal_it = goal_atoms.find(static_cast<int>(atom));
        NilgGraph::Node node;
        node.cat = CatFeature::predicate(
            task.predicate_names[task.atoms[atom].predicate],
            goal_it != goal_atoms.end() ? CatFeature::PropStatus::achieved_goal
                                        : CatFeature::PropStatus::nongoal);
        node.origin = NilgGraph::Origin::proposition;
        node.origin_index = static_cast<int>(atom);
        int id = static_cast<int>(graph.nodes.size());
        graph.nodes.push_back(std::move(node));
        add_atom_edges(id, static_cast<int>(atom));
        if (goal_it != goal_atoms.end()) goal_it->second = true;
    }

    // Unachieved propositional goals, in goal order.
    for (const task::GroundCondition& g : task.goal) {
        if (g.kind != task::GroundCondition::Kind::proposition) continue;
        if (goal_atoms.at(g.atom)) continue;
        NilgGraph::Node node;
        node.cat = CatFeature::predicate(task.predicate_names[task.atoms[g.atom].predicate],
                                         CatFeature::PropStatus::unachieved_goal);
        node.origin = NilgGraph::Origin::prop_goal;
        node.origin_index = g.atom;
        int id = static_cast<int>(graph.nodes.size());
        graph.nodes.push_back(std::move(node));
        add_atom_edges(id, g.atom);
    }

    // Numeric variables.
    std::vector<int> fluent_node(task.fluents.size(), -1);
    for (std::size_t f = 0; f < task.fluents.size(); ++f) {
        NilgGraph::Node node;
        node.cat = CatFeature::function(task.function_names[task.fluents[f].function]);
        node.con = s.numerics[f];
        node.origin = NilgGraph::Origin::numeric_variable;
        node.origin_index = static_cast<int>(f);
        int id = static_cast<int>(graph.nodes.size());
        fluent_node[f] = id;
        graph.nodes.push_back(std::move(node));
        const task::GroundTask::FluentInfo& info = task.fluents[f];
        for (std::size_t pos = 0; pos < info.args.size(); ++pos)
            graph.edges.push_back({id, info.args[pos], static_cast<int>(pos) + 1});
    }

    // Numeric goal conditions; label-0 edges reach each variable of the
    // condition's expression.
    for (std::size_t gi = 0; gi < task.goal.size(); ++gi) {
        const task::GroundCondition& g = task.goal[gi];
        if (g.kind != task::GroundCondition::Kind::numeric) continue;
        bool achieved = task::holds(g, s);
        NilgGraph::Node node;
        node.cat = CatFeature::numeric_goal(g.cmp, achieved);
        if (!achieved) {
            std::optional<double> value = g.expr.eval(s);
            node.con = value ? *value : 0.0;
        }
        node.origin = NilgGraph::Origin::numeric_goal;
        node.origin_index = static_cast<int>(gi);
        int id = static_cast<int>(graph.nodes.size());
        graph.nodes.push_back(std::move(node));
        for (int fluent : g.expr.fluents()) graph.edges.push_back({id, fluent_node[fluent], 0});
    }

    graph.adjacency.resize(graph.nodes.size());
    for (const NilgGraph::Edge& e : graph.edges) {
        graph.adjacency[e.u].emplace_back(e.v, e.label);
        graph.adjacency[e.v].emplace_back(e.u, e.label);
    }
    return graph;
}

int alphabet_size(const pddl::LiftedDomain& domain) {
    return 5 + 3 * static_cast<int>(domain.predicates.size()) +
           static_cast<int>(domain.functions.size()) + static_cast<int>(domain.constants.size());
}

std::string to_text(const NilgGraph& graph) {
    std::ostringstream os;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const NilgGraph::Node& n = graph.nodes[i];
        os << "node " << i << " " << n.cat.canonical() << " " << n.con << "\n";
    }
    for (const NilgGraph::Edge& e : graph.edges)
        os << "edge " << e.u << " " << e.v << " " << e.label << "\n";
    return os.str();
}

}  // namespace nplan::nilg
