#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nplan/pddl/ast.hpp"
#include "nplan/task/ground_task.hpp"

namespace nplan::nilg {

// Categorical node feature. The canonical string is the stable key used by
// the colour table and the model file.
struct CatFeature {
    enum class Kind : std::uint8_t { object, constant_object, predicate, function, numeric_goal };
    enum class PropStatus : std::uint8_t { achieved_goal, unachieved_goal, nongoal };

    Kind kind = Kind::object;
    std::string symbol;  // constant/predicate/function name; empty for plain objects
    PropStatus prop_status = PropStatus::nongoal;
    pddl::Comparator cmp = pddl::Comparator::ge;
    bool achieved = false;  // numeric goals

    static CatFeature object() { return {}; }
    static CatFeature constant_object(std::string name);
    static CatFeature predicate(std::string symbol, PropStatus status);
    static CatFeature function(std::string symbol);
    static CatFeature numeric_goal(pddl::Comparator cmp, bool achieved);

    std::string canonical() const;

    bool operator==(const CatFeature&) const = default;
};

struct NilgGraph {
    enum class Origin : std::uint8_t { object, proposition, prop_goal, numeric_variable, numeric_goal };

    struct Node {
        CatFeature cat;
        double con = 0.0;
        Origin origin = Origin::object;
        int origin_index = -1;  // object/atom/fluent/goal-condition index
    };

    struct Edge {
        int u = 0;
        int v = 0;
        int label = 0;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;  // stored once, traversed both ways
    std::vector<std::vector<std::pair<int, int>>> adjacency;  // node -> (neighbour, label)
};

// Builds the instance learning graph of `task` at state `s`: one node per
// object, per proposition true in s (merged with its goal node when the same
// atom is a goal), per unachieved propositional goal, per numeric variable,
// and per numeric goal condition. Negative propositional goals are rejected.
NilgGraph build_nilg(const task::GroundTask& task, const task::State& s);

// Nominal size of a domain's categorical feature alphabet.
int alphabet_size(const pddl::LiftedDomain& domain);

// Line-based debug dump: "node <id> <cat> <con>" and "edge <u> <v> <label>".
std::string to_text(const NilgGraph& graph);

}  // namespace nplan::nilg
