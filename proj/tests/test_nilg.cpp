#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "nplan/nilg/graph.hpp"
#include "nplan/pddl/parser.hpp"
#include "nplan/task/grounder.hpp"
#include "nplan/task/plan_io.hpp"
#include "test_util.hpp"

using namespace nplan;

namespace {

int count_origin(const nilg::NilgGraph& g, nilg::NilgGraph::Origin origin) {
    int n = 0;
    for (const nilg::NilgGraph::Node& node : g.nodes)
        if (node.origin == origin) ++n;
    return n;
}

int node_for_atom(const nilg::NilgGraph& g, const task::GroundTask& t, const std::string& name) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const nilg::NilgGraph::Node& node = g.nodes[i];
        if ((node.origin == nilg::NilgGraph::Origin::proposition ||
             node.origin == nilg::NilgGraph::Origin::prop_goal) &&
            t.atom_name(node.origin_index) == name)
            return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::pair<int, int>> sorted_adjacency(const nilg::NilgGraph& g, int node) {
    std::vector<std::pair<int, int>> adj = g.adjacency[static_cast<std::size_t>(node)];
    std::sort(adj.begin(), adj.end());
    return adj;
}

// Token-wise object renaming of the running example, for the isomorphism
// check.
std::string rename_tokens(const std::string& text, const std::map<std::string, std::string>& map) {
    std::string out;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        auto it = map.find(token);
        out += it == map.end() ? token : it->second;
        token.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
            token.push_back(c);
        } else {
            flush();
            out.push_back(c);
        }
    }
    flush();
    return out;
}

std::multiset<std::string> cat_multiset(const nilg::NilgGraph& g) {
    std::multiset<std::string> cats;
    for (const nilg::NilgGraph::Node& node : g.nodes) cats.insert(node.cat.canonical());
    return cats;
}

// Multiset of (node feature, label, neighbour feature) triples; matching
// multisets witness a colour-preserving local structure match.
std::multiset<std::string> edge_profile(const nilg::NilgGraph& g) {
    std::multiset<std::string> profile;
    for (const nilg::NilgGraph::Edge& e : g.edges) {
        std::string a = g.nodes[e.u].cat.canonical();
        std::string b = g.nodes[e.v].cat.canonical();
        if (b < a) std::swap(a, b);
        profile.insert(a + "|" + std::to_string(e.label) + "|" + b);
    }
    return profile;
}

}  // namespace

TEST_CASE("running example graph at s0 has 30 nodes with the goal atom merged") {
    task::GroundTask t = test_util::running_example_task();
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);
    CHECK(g.nodes.size() == 30);
    CHECK(count_origin(g, nilg::NilgGraph::Origin::object) == 9);
    CHECK(count_origin(g, nilg::NilgGraph::Origin::proposition) == 16);
    CHECK(count_origin(g, nilg::NilgGraph::Origin::prop_goal) == 2);
    CHECK(count_origin(g, nilg::NilgGraph::Origin::numeric_variable) == 3);
    CHECK(count_origin(g, nilg::NilgGraph::Origin::numeric_goal) == 0);
    CHECK(g.edges.size() == 34);  // 27 proposition + 3 variable + 4 goal edges

    // capacities carry their values as continuous features
    std::vector<double> cons;
    for (const nilg::NilgGraph::Node& node : g.nodes) {
        if (node.origin == nilg::NilgGraph::Origin::numeric_variable) cons.push_back(node.con);
    }
    CHECK(cons == std::vector<double>{2.0, 0.0, 1.0});

    // objects and propositions have zero continuous features
    for (const nilg::NilgGraph::Node& node : g.nodes) {
        if (node.origin != nilg::NilgGraph::Origin::numeric_variable) CHECK(node.con == 0.0);
    }

    // clear(a) is one merged node with achieved-goal status
    int clear_a = node_for_atom(g, t, "clear(a)");
    REQUIRE(clear_a >= 0);
    CHECK(g.nodes[clear_a].cat.canonical() == "pred:clear:achieved-goal");
    int merged = 0;
    for (const nilg::NilgGraph::Node& node : g.nodes) {
        if ((node.origin == nilg::NilgGraph::Origin::proposition ||
             node.origin == nilg::NilgGraph::Origin::prop_goal) &&
            t.atom_name(node.origin_index) == "clear(a)")
            ++merged;
    }
    CHECK(merged == 1);

    // the unachieved goals are on(a,b) and on(b,i)
    int on_ab = node_for_atom(g, t, "on(a,b)");
    REQUIRE(on_ab >= 0);
    CHECK(g.nodes[on_ab].cat.canonical() == "pred:on:unachieved-goal");
}

TEST_CASE("argument edges carry 1-based position labels") {
    task::GroundTask t = test_util::running_example_task();
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);
    int on_ai = node_for_atom(g, t, "on(a,i)");
    REQUIRE(on_ai >= 0);
    // object nodes have the object index as node id
    int a = -1, i = -1;
    for (std::size_t o = 0; o < t.object_names.size(); ++o) {
        if (t.object_names[o] == "a") a = static_cast<int>(o);
        if (t.object_names[o] == "i") i = static_cast<int>(o);
    }
    CHECK(sorted_adjacency(g, on_ai) == std::vector<std::pair<int, int>>{{a, 1}, {i, 2}});
}

TEST_CASE("single object, empty state and goal") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects o - object) (:init) (:goal (and)))", domain);
    task::GroundTask t = task::ground(domain, problem);
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.nodes[0].cat.canonical() == "obj");
    CHECK(g.nodes[0].con == 0.0);
}

TEST_CASE("ccblocksworld alphabet size is 21") {
    CHECK(nilg::alphabet_size(test_util::ccbw_domain()) == 5 + 3 * 5 + 1 + 0);
}

TEST_CASE("constant objects get named features") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:constants home - object) (:predicates (p ?x - object)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects o - object) (:init (p home))"
        " (:goal (and)))",
        domain);
    task::GroundTask t = task::ground(domain, problem);
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);
    std::multiset<std::string> cats = cat_multiset(g);
    CHECK(cats.count("obj:home") == 1);
    CHECK(cats.count("obj") == 1);
    CHECK(nilg::alphabet_size(domain) == 5 + 3 + 0 + 1);
}

TEST_CASE("numeric goals: status, error feature, and label-0 edges") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:functions (f) (g))"
        " (:action bump :parameters () :precondition (and) :effect (increase (f) 1)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (= (f) 1) (= (g) 4))"
        " (:goal (and (>= (- (f) 3) 0) (> (g) 0) (= (- (g) 4) 0))))",
        domain);
    task::GroundTask t = task::ground(domain, problem);
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);

    // 0 objects + 2 numeric variables + 3 numeric goals
    CHECK(g.nodes.size() == 5);
    std::map<std::string, double> goal_features;
    for (const nilg::NilgGraph::Node& node : g.nodes) {
        if (node.origin == nilg::NilgGraph::Origin::numeric_goal)
            goal_features[node.cat.canonical()] = node.con;
    }
    REQUIRE(goal_features.size() == 3);
    // f - 3 = -2 in s0: unachieved with the error as feature
    CHECK(goal_features.at("ngoal:>=:unachieved") == -2.0);
    // g > 0 achieved: zero feature
    CHECK(goal_features.at("ngoal:>:achieved") == 0.0);
    // g - 4 = 0 achieved
    CHECK(goal_features.at("ngoal:=:achieved") == 0.0);

    // all numeric-goal edges carry label 0 and reach variable nodes
    for (const nilg::NilgGraph::Edge& e : g.edges) {
        bool goal_edge = g.nodes[e.u].origin == nilg::NilgGraph::Origin::numeric_goal ||
                         g.nodes[e.v].origin == nilg::NilgGraph::Origin::numeric_goal;
        CHECK(goal_edge == (e.label == 0));
    }

    // after bumping f to 3 the first goal flips to achieved with zero feature
    task::State s = *task::apply(t, t.initial_state, t.actions[t.find_action("bump")]);
    s = *task::apply(t, s, t.actions[t.find_action("bump")]);
    nilg::NilgGraph g2 = nilg::build_nilg(t, s);
    std::multiset<std::string> cats = cat_multiset(g2);
    CHECK(cats.count("ngoal:>=:achieved") == 1);
    CHECK(cats.count("ngoal:>=:unachieved") == 0);
}

TEST_CASE("negative propositional goals are rejected") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (p)) (:goal (not (p))))", domain);
    task::GroundTask t = task::ground(domain, problem);
    CHECK_THROWS(nilg::build_nilg(t, t.initial_state));
}

TEST_CASE("repeated arguments produce parallel edges with distinct labels") {
    pddl::LiftedDomain domain =
        pddl::parse_domain("(define (domain d) (:predicates (p ?x - object ?y - object)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects o - object) (:init (p o o)) (:goal (and)))",
        domain);
    task::GroundTask t = task::ground(domain, problem);
    nilg::NilgGraph g = nilg::build_nilg(t, t.initial_state);
    REQUIRE(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 2);
    int prop = 1;  // object node is 0
    CHECK(sorted_adjacency(g, prop) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
}

TEST_CASE("object renaming yields an isomorphic graph") {
    std::map<std::string, std::string> renaming = {
        {"a", "u1"}, {"b", "u2"}, {"c", "u3"}, {"d", "u4"}, {"e", "u5"},
        {"f", "u6"}, {"i", "v1"}, {"j", "v2"}, {"k", "v3"}};
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    std::string original_text = test_util::fixture("ccblocksworld/running-example.pddl");
    pddl::LiftedProblem original = pddl::parse_problem(original_text, domain);
    pddl::LiftedProblem renamed =
        pddl::parse_problem(rename_tokens(original_text, renaming), domain);

    task::GroundTask t1 = task::ground(domain, original);
    task::GroundTask t2 = task::ground(domain, renamed);
    nilg::NilgGraph g1 = nilg::build_nilg(t1, t1.initial_state);
    nilg::NilgGraph g2 = nilg::build_nilg(t2, t2.initial_state);

    CHECK(g1.nodes.size() == g2.nodes.size());
    CHECK(cat_multiset(g1) == cat_multiset(g2));
    CHECK(edge_profile(g1) == edge_profile(g2));
}

TEST_CASE("debug export lists nodes and edges") {
    pddl::LiftedDomain domain =
        pddl::parse_domain("(define (domain d) (:predicates (p ?x - object)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects o - object) (:init (p o)) (:goal (and)))",
        domain);
    task::GroundTask t = task::ground(domain, problem);
    std::string text = nilg::to_text(nilg::build_nilg(t, t.initial_state));
    CHECK(text ==
          "node 0 obj 0\n"
          "node 1 pred:p:non-goal 0\n"
          "edge 1 0 1\n");
}
