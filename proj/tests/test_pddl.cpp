#include "doctest.h"

#include <cstdint>

#include "nplan/pddl/parser.hpp"
#include "nplan/pddl/printer.hpp"
#include "test_util.hpp"

using namespace nplan;

TEST_CASE("ccblocksworld domain parses to the expected declarations") {
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    CHECK(domain.name == "ccblocksworld");
    REQUIRE(domain.types.size() == 2);
    CHECK(domain.types[0].name == "block");
    CHECK(domain.types[1].name == "base");
    CHECK(domain.types[0].parent == "object");
    REQUIRE(domain.predicates.size() == 5);
    CHECK(domain.predicates[4].name == "arm_empty");
    CHECK(domain.predicates[4].arity() == 0);
    REQUIRE(domain.functions.size() == 1);
    CHECK(domain.functions[0].name == "capacity");
    CHECK(domain.functions[0].arity() == 1);
    REQUIRE(domain.schemata.size() == 4);
    CHECK(domain.schemata[0].name == "pickup");
    CHECK(domain.schemata[3].name == "stack");
    CHECK(domain.constants.empty());
}

TEST_CASE("running example problem parses to the expected counts") {
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    pddl::LiftedProblem problem =
        pddl::parse_problem(test_util::fixture("ccblocksworld/running-example.pddl"), domain);
    CHECK(problem.name == "running-example");
    CHECK(problem.objects.size() == 9);
    int blocks = 0, bases = 0;
    for (const pddl::TypedName& o : problem.objects) {
        if (o.type == "block") ++blocks;
        if (o.type == "base") ++bases;
    }
    CHECK(blocks == 6);
    CHECK(bases == 3);
    CHECK(problem.init_atoms.size() == 16);
    REQUIRE(problem.init_fluents.size() == 3);
    CHECK(problem.init_fluents[0].value == pddl::Rational{2, 1});
    CHECK(problem.init_fluents[1].value == pddl::Rational{0, 1});
    CHECK(problem.init_fluents[2].value == pddl::Rational{1, 1});
    CHECK(problem.goal.size() == 3);
}

TEST_CASE("minimal domain with a zero-arity predicate") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    CHECK(domain.name == "d");
    REQUIRE(domain.predicates.size() == 1);
    CHECK(domain.predicates[0].arity() == 0);
    CHECK(domain.functions.empty());
    CHECK(domain.schemata.empty());
}

TEST_CASE("unknown parameter type is rejected") {
    std::string text = "(define (domain d) (:predicates (p ?x - object))"
                       " (:action a :parameters (?x - ghost) :precondition (p ?x) :effect (p ?x)))";
    CHECK_THROWS_AS(pddl::parse_domain(text), pddl::ParseError);
}

TEST_CASE("duplicate declarations are rejected") {
    CHECK_THROWS_AS(pddl::parse_domain("(define (domain d) (:predicates (p) (p)))"),
                    pddl::ParseError);
    CHECK_THROWS_AS(pddl::parse_domain("(define (domain d) (:types t - object t - object))"),
                    pddl::ParseError);
}

TEST_CASE("arity mismatches are rejected") {
    std::string domain_text = "(define (domain d) (:predicates (p ?x - object))"
                              " (:functions (f ?x - object)))";
    pddl::LiftedDomain domain = pddl::parse_domain(domain_text);
    CHECK_THROWS_AS(pddl::parse_problem("(define (problem q) (:domain d)"
                                        " (:objects o1 - object) (:init (p o1 o1)) (:goal (and)))",
                                        domain),
                    pddl::ParseError);
    CHECK_THROWS_AS(pddl::parse_problem("(define (problem q) (:domain d)"
                                        " (:objects o1 - object) (:init (= (f) 1)) (:goal (and)))",
                                        domain),
                    pddl::ParseError);
}

TEST_CASE("comparators normalize to expr-vs-zero form") {
    std::string text = "(define (domain d) (:functions (f))"
                       " (:action a :parameters ()"
                       "  :precondition (and (<= 1 (f)) (< (f) 5) (>= (f) 0) (= (f) 2))"
                       "  :effect (assign (f) 0)))";
    pddl::LiftedDomain domain = pddl::parse_domain(text);
    const auto& pre = domain.schemata[0].preconditions;
    REQUIRE(pre.size() == 4);
    // (<= 1 (f))  ->  (f) - 1 >= 0
    const auto& c0 = std::get<pddl::NumericCondition>(pre[0]);
    CHECK(c0.cmp == pddl::Comparator::ge);
    CHECK(pddl::to_string(pre[0]) == "(>= (- (f) 1) 0)");
    // (< (f) 5)  ->  5 - (f) > 0
    const auto& c1 = std::get<pddl::NumericCondition>(pre[1]);
    CHECK(c1.cmp == pddl::Comparator::gt);
    CHECK(pddl::to_string(pre[1]) == "(> (- 5 (f)) 0)");
    // (>= (f) 0) keeps the bare expression
    CHECK(pddl::to_string(pre[2]) == "(>= (f) 0)");
    const auto& c3 = std::get<pddl::NumericCondition>(pre[3]);
    CHECK(c3.cmp == pddl::Comparator::eq);
}

TEST_CASE("negative numeric conditions are rejected") {
    std::string text = "(define (domain d) (:functions (f))"
                       " (:action a :parameters ()"
                       "  :precondition (not (>= (f) 1)) :effect (assign (f) 0)))";
    CHECK_THROWS_AS(pddl::parse_domain(text), pddl::ParseError);
}

TEST_CASE("negative propositional preconditions are accepted") {
    std::string text = "(define (domain d) (:predicates (p))"
                       " (:action a :parameters () :precondition (not (p)) :effect (p)))";
    pddl::LiftedDomain domain = pddl::parse_domain(text);
    const auto& lit = std::get<pddl::Literal>(domain.schemata[0].preconditions[0]);
    CHECK(lit.negated);
}

TEST_CASE("unknown requirements produce warnings, not errors") {
    std::vector<std::string> warnings;
    pddl::parse_domain("(define (domain d) (:requirements :strips :action-costs))", &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find(":action-costs") != std::string::npos);
}

TEST_CASE("identifiers are case-insensitive and lowercased") {
    pddl::LiftedDomain domain =
        pddl::parse_domain("(define (domain BlocksWorld) (:predicates (ON ?x - OBJECT)))");
    CHECK(domain.name == "blocksworld");
    CHECK(domain.predicates[0].name == "on");
}

TEST_CASE("empty goal is a valid problem") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (p)) (:goal (and)))", domain);
    CHECK(problem.goal.empty());
}

TEST_CASE("object of undeclared type is rejected") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:predicates (p)))");
    CHECK_THROWS_AS(
        pddl::parse_problem("(define (problem q) (:domain d) (:objects o - ghost)"
                            " (:init) (:goal (and)))",
                            domain),
        pddl::ParseError);
}

TEST_CASE("numeric goal needs an initial assignment for its fluents") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:functions (f)))");
    CHECK_THROWS_AS(pddl::parse_problem("(define (problem q) (:domain d) (:objects)"
                                        " (:init) (:goal (>= (f) 1)))",
                                        domain),
                    pddl::ParseError);
    pddl::LiftedProblem ok = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (= (f) 0)) (:goal (>= (f) 1)))",
        domain);
    CHECK(ok.goal.size() == 1);
}

TEST_CASE("decimal literals parse as exact rationals") {
    pddl::LiftedDomain domain = pddl::parse_domain("(define (domain d) (:functions (f)))");
    pddl::LiftedProblem problem = pddl::parse_problem(
        "(define (problem q) (:domain d) (:objects) (:init (= (f) 1.50)) (:goal (and)))", domain);
    CHECK(problem.init_fluents[0].value == pddl::Rational{3, 2});
    CHECK(problem.init_fluents[0].value.to_string() == "1.5");
}

TEST_CASE("round trip: print then re-parse is structurally identical") {
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    pddl::LiftedDomain reparsed = pddl::parse_domain(pddl::to_pddl(domain));
    CHECK(domain == reparsed);

    pddl::LiftedProblem problem =
        pddl::parse_problem(test_util::fixture("ccblocksworld/running-example.pddl"), domain);
    pddl::LiftedProblem problem_reparsed = pddl::parse_problem(pddl::to_pddl(problem), domain);
    CHECK(problem == problem_reparsed);
}

TEST_CASE("parse errors carry positions") {
    try {
        pddl::parse_domain("(define (domain d)\n  (:predicates (p) (p)))");
        FAIL("expected a parse error");
    } catch (const pddl::ParseError& e) {
        CHECK(e.line() >= 1);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

namespace {

// Deterministic garbage for the totality check.
std::string mutate(const std::string& base, std::uint64_t seed) {
    std::string text = base;
    std::uint64_t state = seed;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    for (int edit = 0; edit < 8 && !text.empty(); ++edit) {
        std::size_t pos = next() % text.size();
        switch (next() % 4) {
            case 0: text[pos] = "(){:?;-09azZ. \n"[next() % 15]; break;
            case 1: text.erase(pos, next() % 7); break;
            case 2: text.insert(pos, "()"); break;
            case 3: text = text.substr(0, pos); break;
        }
    }
    return text;
}

}  // namespace

TEST_CASE("parsing is total on fuzzed inputs") {
    std::string domain_text = test_util::fixture("ccblocksworld/domain.pddl");
    std::string problem_text = test_util::fixture("ccblocksworld/running-example.pddl");
    pddl::LiftedDomain domain = test_util::ccbw_domain();
    int parsed = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        try {
            pddl::parse_domain(mutate(domain_text, seed));
            ++parsed;
        } catch (const pddl::ParseError&) {
        }
        try {
            pddl::parse_problem(mutate(problem_text, seed ^ 0xabcdef), domain);
            ++parsed;
        } catch (const pddl::ParseError&) {
        }
    }
    // Some mutations may still parse; the point is that none crash or throw
    // anything but ParseError.
    CHECK(parsed >= 0);
}
