#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "nplan/pddl/parser.hpp"
#include "nplan/task/grounder.hpp"
#include "nplan/task/plan_io.hpp"
#include "test_util.hpp"

using namespace nplan;

namespace {

task::GroundExpr make_fluent_plus_const(int fluent, double constant) {
    task::GroundExpr e;
    e.nodes.push_back({task::GroundExpr::Op::fluent, 0.0, fluent, -1, -1});
    e.nodes.push_back({task::GroundExpr::Op::constant, constant, -1, -1, -1});
    e.nodes.push_back({task::GroundExpr::Op::add, 0.0, -1, 0, 1});
    e.root = 2;
    return e;
}

int fluent_index(const task::GroundTask& t, const std::string& name) {
    for (std::size_t i = 0; i < t.fluents.size(); ++i) {
        if (t.fluent_name(static_cast<int>(i)) == name) return static_cast<int>(i);
    }
    return -1;
}

int atom_index(const task::GroundTask& t, const std::string& name) {
    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
        if (t.atom_name(static_cast<int>(i)) == name) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

TEST_CASE("grounding the running example yields 252 actions and 3 fluents") {
    task::GroundTask t = test_util::running_example_task();
    std::map<std::string, int> per_schema;
    for (const task::GroundAction& a : t.actions)
        ++per_schema[a.signature.substr(0, a.signature.find(' '))];
    CHECK(per_schema["pickup"] == 18);   // 6 blocks x 3 bases
    CHECK(per_schema["putdown"] == 18);
    CHECK(per_schema["unstack"] == 108);  // 6 x 6 x 3, no distinctness filter
    CHECK(per_schema["stack"] == 108);
    CHECK(t.actions.size() == 252);
    CHECK(t.fluents.size() == 3);
    // X_p: on 6x9 + above 6x3 + clear 9 + holding 6 + arm_empty
    CHECK(t.atoms.size() == 54 + 18 + 9 + 6 + 1);
    CHECK(t.initial_state.props.count() == 16);
    CHECK(t.initial_state.numerics == std::vector<double>{2.0, 0.0, 1.0});
}

TEST_CASE("a parameter type with no objects contributes zero actions") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:types t1 t2 - object) (:predicates (p ?x - t1) (q ?y - t2))"
        " (:action a :parameters (?x - t1 ?y - t2) :precondition (p ?x) :effect (q ?y)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects o1 - t1) (:init) (:goal (and)))", domain);
    task::GroundTask t = task::ground(domain, problem);
    CHECK(t.actions.empty());
}

TEST_CASE("grounding rejects references to unassigned fluents") {
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    // capacity k never assigned; pickup grounds over base k and refers to it.
    std::string text = "(define (problem p) (:domain ccblocksworld)"
                       " (:objects a - block i k - base)"
                       " (:init (= (capacity i) 1) (on a i) (above a i) (clear a) (arm_empty))"
                       " (:goal (and (on a i))))";
    pddl::LiftedProblem problem = pddl::parse_problem(text, domain);
    CHECK_THROWS_AS(task::ground(domain, problem), task::GroundError);
}

TEST_CASE("grounding rejects non-constant action costs") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:functions (f))"
        " (:action a :parameters () :precondition (>= (f) 0)"
        "  :effect (and (assign (f) 1) (increase (total-cost) (f)))))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (= (f) 0)) (:goal (and)))", domain);
    CHECK_THROWS_AS(task::ground(domain, problem), task::GroundError);
}

TEST_CASE("constant total-cost effects become action costs") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:predicates (p))"
        " (:action a :parameters () :precondition (and) :effect (and (p)"
        "  (increase (total-cost) 5))))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init) (:goal (p)))", domain);
    task::GroundTask t = task::ground(domain, problem);
    REQUIRE(t.actions.size() == 1);
    CHECK(t.actions[0].cost == 5.0);
    task::ValidationResult v = task::validate_plan(t, {"a"});
    CHECK(v.valid);
    CHECK(v.cost == 5.0);
}

TEST_CASE("expression evaluation") {
    task::GroundTask t = test_util::running_example_task();
    task::GroundExpr constant;
    constant.nodes.push_back({task::GroundExpr::Op::constant, 5.0, -1, -1, -1});
    constant.root = 0;
    CHECK(constant.eval(t.initial_state) == 5.0);

    // capacity(j) - 1 in s0 is -1
    int cap_j = fluent_index(t, "capacity(j)");
    REQUIRE(cap_j >= 0);
    task::GroundExpr expr = make_fluent_plus_const(cap_j, -1.0);
    CHECK(expr.eval(t.initial_state) == -1.0);

    // (2 * 3) + 4 = 10
    task::GroundExpr arith;
    arith.nodes.push_back({task::GroundExpr::Op::constant, 2.0, -1, -1, -1});
    arith.nodes.push_back({task::GroundExpr::Op::constant, 3.0, -1, -1, -1});
    arith.nodes.push_back({task::GroundExpr::Op::mul, 0.0, -1, 0, 1});
    arith.nodes.push_back({task::GroundExpr::Op::constant, 4.0, -1, -1, -1});
    arith.nodes.push_back({task::GroundExpr::Op::add, 0.0, -1, 2, 3});
    arith.root = 4;
    CHECK(arith.eval(t.initial_state) == 10.0);

    // division by zero evaluates to nothing
    task::GroundExpr division;
    division.nodes.push_back({task::GroundExpr::Op::constant, 1.0, -1, -1, -1});
    division.nodes.push_back({task::GroundExpr::Op::fluent, 0.0, cap_j, -1, -1});
    division.nodes.push_back({task::GroundExpr::Op::div, 0.0, -1, 0, 1});
    division.root = 2;
    CHECK(!division.eval(t.initial_state).has_value());  // capacity(j) = 0
}

TEST_CASE("satisfies") {
    task::GroundTask t = test_util::running_example_task();
    CHECK(task::satisfies(t.initial_state, {}));
    // goal {clear a, on a b, on b i}: only clear a holds in s0
    CHECK(!task::satisfies(t.initial_state, t.goal));
    int holds_count = 0;
    for (const task::GroundCondition& g : t.goal)
        if (task::holds(g, t.initial_state)) ++holds_count;
    CHECK(holds_count == 1);

    // 1 <= capacity(k), normalized capacity(k) - 1 >= 0, holds in s0
    int cap_k = fluent_index(t, "capacity(k)");
    task::GroundCondition cond;
    cond.kind = task::GroundCondition::Kind::numeric;
    cond.expr = make_fluent_plus_const(cap_k, -1.0);
    cond.cmp = pddl::Comparator::ge;
    CHECK(task::holds(cond, t.initial_state));
}

TEST_CASE("apply unstack f d j to s0") {
    task::GroundTask t = test_util::running_example_task();
    int action = t.find_action("unstack f d j");
    REQUIRE(action >= 0);
    std::optional<task::State> succ = task::apply(t, t.initial_state, t.actions[action]);
    REQUIRE(succ.has_value());
    CHECK(succ->numerics[fluent_index(t, "capacity(j)")] == 1.0);
    CHECK(succ->props.test(atom_index(t, "holding(f)")));
    CHECK(!succ->props.test(atom_index(t, "arm_empty")));
    CHECK(!succ->props.test(atom_index(t, "on(f,d)")));
    CHECK(!succ->props.test(atom_index(t, "above(f,j)")));
    CHECK(succ->props.test(atom_index(t, "clear(d)")));
}

TEST_CASE("stack d f k is inapplicable after three steps of the capacity-free plan") {
    task::GroundTask t = test_util::running_example_task();
    task::State s = t.initial_state;
    for (const char* step : {"unstack f d j", "stack f e k", "unstack d b j"}) {
        std::optional<task::State> next = task::apply(t, s, t.actions[t.find_action(step)]);
        REQUIRE(next.has_value());
        s = std::move(*next);
    }
    CHECK(s.numerics[fluent_index(t, "capacity(k)")] == 0.0);
    CHECK(!task::apply(t, s, t.actions[t.find_action("stack d f k")]).has_value());
}

TEST_CASE("apply with an empty-effect action returns an equal state") {
    pddl::LiftedDomain domain = pddl::parse_domain(
        "(define (domain d) (:predicates (p))"
        " (:action a :parameters () :precondition (p) :effect (and)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (p)) (:goal (p)))", domain);
    task::GroundTask t = task::ground(domain, problem);
    std::optional<task::State> succ = task::apply(t, t.initial_state, t.actions[0]);
    REQUIRE(succ.has_value());
    CHECK(*succ == t.initial_state);
}

TEST_CASE("successors of s0 are exactly the three applicable actions") {
    task::GroundTask t = test_util::running_example_task();
    std::vector<std::pair<int, task::State>> succs = task::successors(t, t.initial_state);
    REQUIRE(succs.size() == 3);
    std::set<std::string> names;
    for (const auto& [action, state] : succs) names.insert(t.actions[action].signature);
    CHECK(names == std::set<std::string>{"unstack f d j", "unstack e c k", "pickup a i"});

    // determinism: a second call yields the identical ordered list
    std::vector<std::pair<int, task::State>> again = task::successors(t, t.initial_state);
    REQUIRE(again.size() == succs.size());
    for (std::size_t i = 0; i < succs.size(); ++i) {
        CHECK(succs[i].first == again[i].first);
        CHECK(succs[i].second == again[i].second);
    }
}

TEST_CASE("successors match apply over all actions") {
    task::GroundTask t = test_util::running_example_task();
    task::State s = t.initial_state;
    std::vector<std::pair<int, task::State>> succs = task::successors(t, s);
    std::size_t applicable = 0;
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        std::optional<task::State> result = task::apply(t, s, t.actions[i]);
        bool pre_holds = task::satisfies(s, t.actions[i].preconditions);
        CHECK(result.has_value() == pre_holds);
        if (result) ++applicable;
    }
    CHECK(applicable == succs.size());
}

TEST_CASE("numeric effects read the source state simultaneously") {
    // x := y + 1 and y := x + 1 from (x, y) = (10, 20) gives (21, 11).
    task::GroundTask t;
    t.function_names = {"x", "y"};
    t.fluents.push_back({0, {}});
    t.fluents.push_back({1, {}});
    t.initial_state.props = task::Bitset(0);
    t.initial_state.numerics = {10.0, 20.0};
    task::GroundAction a;
    a.signature = "swapish";
    a.numeric_effects.push_back({0, task::NumericEffectOp::assign, make_fluent_plus_const(1, 1.0)});
    a.numeric_effects.push_back({1, task::NumericEffectOp::assign, make_fluent_plus_const(0, 1.0)});
    t.actions.push_back(a);
    std::optional<task::State> succ = task::apply(t, t.initial_state, t.actions[0]);
    REQUIRE(succ.has_value());
    CHECK(succ->numerics == std::vector<double>{21.0, 11.0});
}

TEST_CASE("ccblocksworld conserves capacity plus placed blocks over random walks") {
    task::GroundTask t = test_util::running_example_task();
    auto invariant = [&](const task::State& s) {
        double total = 0.0;
        for (double v : s.numerics) total += v;
        int placed = 0;
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            if (t.predicate_names[t.atoms[i].predicate] == "above" && s.props.test(i)) ++placed;
        }
        return total + placed;
    };
    double expected = invariant(t.initial_state);
    CHECK(expected == 9.0);

    std::uint64_t rng = 42;
    task::State s = t.initial_state;
    for (int step = 0; step < 300; ++step) {
        std::vector<std::pair<int, task::State>> succs = task::successors(t, s);
        REQUIRE(!succs.empty());
        rng = rng * 6364136223846793005ull + 1442695040888963407ull;
        s = succs[(rng >> 33) % succs.size()].second;
        CHECK(invariant(s) == expected);
    }
}

TEST_CASE("the 16-step plan validates at cost 16") {
    task::GroundTask t = test_util::running_example_task();
    std::vector<std::string> plan =
        task::read_plan_file(test_util::fixture_path("ccblocksworld/optimal-16.plan"));
    REQUIRE(plan.size() == 16);
    task::ValidationResult v = task::validate_plan(t, plan);
    CHECK(v.valid);
    CHECK(v.cost == 16.0);
    CHECK(v.trace.size() == 17);
    CHECK(task::satisfies(v.trace.back(), t.goal));
}

TEST_CASE("the capacity-free 10-step plan fails at step 4 on a numeric precondition") {
    task::GroundTask t = test_util::running_example_task();
    std::vector<std::string> plan =
        task::read_plan_file(test_util::fixture_path("ccblocksworld/no-capacity-10.plan"));
    REQUIRE(plan.size() == 10);
    task::ValidationResult v = task::validate_plan(t, plan);
    CHECK(!v.valid);
    CHECK(v.failed_step == 4);
    CHECK(v.reason.find("numeric precondition") != std::string::npos);
    CHECK(v.reason.find("capacity(k)") != std::string::npos);
}

TEST_CASE("empty plan is valid when s0 satisfies the goal") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (p)) (:goal (p)))", domain);
    task::GroundTask t = task::ground(domain, problem);
    task::ValidationResult v = task::validate_plan(t, {});
    CHECK(v.valid);
    CHECK(v.cost == 0.0);
}

TEST_CASE("unknown action names are reported") {
    task::GroundTask t = test_util::running_example_task();
    CHECK_THROWS(task::validate_plan(t, {"teleport a b"}));
}

TEST_CASE("plan text parsing skips comments and normalizes case") {
    std::vector<std::string> plan =
        task::parse_plan_text("; a comment\n\n  (Pickup A I)\n(stack a b i)  \n");
    REQUIRE(plan.size() == 2);
    CHECK(plan[0] == "pickup a i");
    CHECK(plan[1] == "stack a b i");
    CHECK_THROWS(task::parse_plan_text("pickup a i"));  // missing parentheses
}

TEST_CASE("state equality is bitwise on numerics") {
    task::State a, b;
    a.props = task::Bitset(1);
    b.props = task::Bitset(1);
    a.numerics = {0.0};
    b.numerics = {-0.0};
    CHECK(!(a == b));
    b.numerics = {0.0};
    CHECK(a == b);
}
