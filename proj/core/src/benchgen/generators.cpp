#include "nplan/benchgen/generators.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "nplan/benchgen/rng.hpp"

namespace nplan::benchgen {

namespace {

const char* const kCcBlocksworldDomain = R"((define (domain ccblocksworld)
  (:requirements :strips :typing :numeric-fluents)
  (:types
    block base - object
  )
  (:predicates
    (on      ?x - block      ?y - object)
    (above  ?x - block      ?y - base )
    (clear  ?x - object      )
    (holding ?x - block      )
    (arm_empty
    )
  )
  (:functions
    (capacity ?x - base
    )
  )
  (:action pickup
    :parameters (?block - block ?base - base)
    :precondition (and
      (on ?block ?base)
      (above ?block ?base)
      (clear ?block)
      (arm_empty))
    :effect (and
      (not (on ?block ?base))
      (not (above ?block ?base))
      (not (clear ?block))
      (clear ?base)
      (holding ?block)
      (not (arm_empty))
      (increase (capacity ?base) 1))
  )
  (:action putdown
    :parameters (?block - block ?base - base)
    :precondition (and
      (holding ?block)
      (clear ?base)
      (<= 1 (capacity ?base)))
    :effect (and
      (not (holding ?block))
      (not (clear ?base))
      (on ?block ?base)
      (above ?block ?base)
      (clear ?block)
      (arm_empty)
      (decrease (capacity ?base) 1))
  )
  (:action unstack
    :parameters (?block_a - block ?block_b - block ?base - base)
    :precondition (and
      (on ?block_a ?block_b)
      (above ?block_a ?base)
      (clear ?block_a)
      (arm_empty))
    :effect (and
      (not (on ?block_a ?block_b))
      (not (above ?block_a ?base))
      (not (clear ?block_a))
      (clear ?block_b)
      (holding ?block_a)
      (not (arm_empty))
      (increase (capacity ?base) 1))
  )
  (:action stack
    :parameters (?block_a - block ?block_b - block ?base - base)
    :precondition (and
      (holding ?block_a)
      (clear ?block_b)
      (above ?block_b ?base)
      (<= 1 (capacity ?base)))
    :effect (and
      (not (holding ?block_a))
      (not (clear ?block_b))
      (on ?block_a ?block_b)
      (above ?block_a ?base)
      (clear ?block_a)
      (arm_empty)
      (decrease (capacity ?base) 1))
  )
)
)";

const char* const kFerryDomain = R"((define (domain ferry)
  (:requirements :strips :typing :numeric-fluents)
  (:types
    car location - object
  )
  (:predicates
    (at ?c - car ?l - location)
    (on-board ?c - car)
    (at-ferry ?l - location)
  )
  (:functions
    (capacity)
  )
  (:action sail
    :parameters (?from - location ?to - location)
    :precondition (and
      (at-ferry ?from))
    :effect (and
      (not (at-ferry ?from))
      (at-ferry ?to))
  )
  (:action board
    :parameters (?car - car ?loc - location)
    :precondition (and
      (at ?car ?loc)
      (at-ferry ?loc)
      (<= 1 (capacity)))
    :effect (and
      (not (at ?car ?loc))
      (on-board ?car)
      (decrease (capacity) 1))
  )
  (:action debark
    :parameters (?car - car ?loc - location)
    :precondition (and
      (on-board ?car)
      (at-ferry ?loc))
    :effect (and
      (not (on-board ?car))
      (at ?car ?loc)
      (increase (capacity) 1))
  )
)
)";

const char* const kSpannerDomain = R"((define (domain spanner)
  (:requirements :strips :typing :numeric-fluents)
  (:types
    spanner nut location - object
  )
  (:predicates
    (at-man ?l - location)
    (at ?s - spanner ?l - location)
    (at-nut ?n - nut ?l - location)
    (link ?from - location ?to - location)
    (loose ?n - nut)
    (tightened ?n - nut)
  )
  (:functions
    (carrying)
  )
  (:action walk
    :parameters (?from - location ?to - location)
    :precondition (and
      (at-man ?from)
      (link ?from ?to))
    :effect (and
      (not (at-man ?from))
      (at-man ?to))
  )
  (:action pickup
    :parameters (?s - spanner ?l - location)
    :precondition (and
      (at-man ?l)
      (at ?s ?l))
    :effect (and
      (not (at ?s ?l))
      (increase (carrying) 1))
  )
  (:action tighten
    :parameters (?n - nut ?l - location)
    :precondition (and
      (at-man ?l)
      (at-nut ?n ?l)
      (loose ?n)
      (<= 1 (carrying)))
    :effect (and
      (not (loose ?n))
      (tightened ?n)
      (decrease (carrying) 1))
  )
)
)";

// Deals blocks into towers: shuffle, then each block joins a random base that
// still has room. Towers are bottom-to-top.
std::vector<std::vector<int>> deal_towers(int blocks, int bases, int capacity, SplitMix64& rng) {
    std::vector<int> order(static_cast<std::size_t>(blocks));
    for (int i = 0; i < blocks; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = blocks - 1; i > 0; --i) {
        std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    std::vector<std::vector<int>> towers(static_cast<std::size_t>(bases));
    for (int block : order) {
        std::vector<int> open;
        for (int b = 0; b < bases; ++b) {
            if (static_cast<int>(towers[static_cast<std::size_t>(b)].size()) < capacity)
                open.push_back(b);
        }
        int base = open[rng.below(open.size())];
        towers[static_cast<std::size_t>(base)].push_back(block);
    }
    return towers;
}

std::string block_name(int i) { return "b" + std::to_string(i + 1); }
std::string base_name(int i) { return "base" + std::to_string(i + 1); }

}  // namespace

GeneratedInstance gen_ccblocksworld(int blocks, int bases, int capacity, std::uint64_t seed) {
    if (blocks < 1) throw GeneratorError("need at least one block");
    if (bases < 2) throw GeneratorError("need at least two bases");
    if (capacity < 1) throw GeneratorError("capacity must be positive");
    if (blocks > bases * capacity)
        throw GeneratorError("unsolvable: " + std::to_string(blocks) + " blocks exceed " +
                             std::to_string(bases) + " x " + std::to_string(capacity) + " slots");

    SplitMix64 rng(seed);
    std::vector<std::vector<int>> init = deal_towers(blocks, bases, capacity, rng);
    std::vector<std::vector<int>> goal = deal_towers(blocks, bases, capacity, rng);

    std::ostringstream os;
    os << "(define (problem ccblocksworld-" << blocks << "-" << bases << "-" << capacity << "-s"
       << seed << ")\n";
    os << "  (:domain ccblocksworld)\n";
    os << "  (:objects\n    ";
    for (int i = 0; i < blocks; ++i) os << block_name(i) << " ";
    os << "- block\n    ";
    for (int i = 0; i < bases; ++i) os << base_name(i) << " ";
    os << "- base\n  )\n";
    os << "  (:init\n";
    os << "    (arm_empty)\n";
    for (int b = 0; b < bases; ++b) {
        const std::vector<int>& tower = init[static_cast<std::size_t>(b)];
        os << "    (= (capacity " << base_name(b) << ") "
           << capacity - static_cast<int>(tower.size()) << ")\n";
        if (tower.empty()) {
            os << "    (clear " << base_name(b) << ")\n";
            continue;
        }
        os << "    (on " << block_name(tower[0]) << " " << base_name(b) << ")\n";
        for (std::size_t h = 1; h < tower.size(); ++h)
            os << "    (on " << block_name(tower[h]) << " " << block_name(tower[h - 1]) << ")\n";
        for (int block : tower)
            os << "    (above " << block_name(block) << " " << base_name(b) << ")\n";
        os << "    (clear " << block_name(tower.back()) << ")\n";
    }
    os << "  )\n";
    os << "  (:goal (and\n";
    for (int b = 0; b < bases; ++b) {
        const std::vector<int>& tower = goal[static_cast<std::size_t>(b)];
        if (tower.empty()) continue;
        os << "    (on " << block_name(tower[0]) << " " << base_name(b) << ")\n";
        for (std::size_t h = 1; h < tower.size(); ++h)
            os << "    (on " << block_name(tower[h]) << " " << block_name(tower[h - 1]) << ")\n";
        os << "    (clear " << block_name(tower.back()) << ")\n";
    }
    os << "  ))\n";
    os << ")\n";

    return {kCcBlocksworldDomain, os.str()};
}

GeneratedInstance gen_ferry(int cars, int locations, int capacity, std::uint64_t seed) {
    if (cars < 1) throw GeneratorError("need at least one car");
    if (locations < 2) throw GeneratorError("need at least two locations");
    if (capacity < 1) throw GeneratorError("capacity must be positive");

    SplitMix64 rng(seed);
    auto loc_name = [](int i) { return "loc" + std::to_string(i + 1); };
    auto car_name = [](int i) { return "car" + std::to_string(i + 1); };

    int ferry_at = static_cast<int>(rng.below(static_cast<std::uint64_t>(locations)));
    std::vector<int> car_at(static_cast<std::size_t>(cars));
    std::vector<int> car_goal(static_cast<std::size_t>(cars));
    for (int c = 0; c < cars; ++c)
        car_at[static_cast<std::size_t>(c)] =
            static_cast<int>(rng.below(static_cast<std::uint64_t>(locations)));
    for (int c = 0; c < cars; ++c)
        car_goal[static_cast<std::size_t>(c)] =
            static_cast<int>(rng.below(static_cast<std::uint64_t>(locations)));

    std::ostringstream os;
    os << "(define (problem ferry-" << cars << "-" << locations << "-" << capacity << "-s" << seed
       << ")\n";
    os << "  (:domain ferry)\n";
    os << "  (:objects\n    ";
    for (int c = 0; c < cars; ++c) os << car_name(c) << " ";
    os << "- car\n    ";
    for (int l = 0; l < locations; ++l) os << loc_name(l) << " ";
    os << "- location\n  )\n";
    os << "  (:init\n";
    os << "    (= (capacity) " << capacity << ")\n";
    os << "    (at-ferry " << loc_name(ferry_at) << ")\n";
    for (int c = 0; c < cars; ++c)
        os << "    (at " << car_name(c) << " " << loc_name(car_at[static_cast<std::size_t>(c)])
           << ")\n";
    os << "  )\n";
    os << "  (:goal (and\n";
    for (int c = 0; c < cars; ++c)
        os << "    (at " << car_name(c) << " " << loc_name(car_goal[static_cast<std::size_t>(c)])
           << ")\n";
    os << "  ))\n";
    os << ")\n";

    return {kFerryDomain, os.str()};
}

GeneratedInstance gen_spanner(int spanners, int nuts, int locations, std::uint64_t seed) {
    if (nuts < 1) throw GeneratorError("need at least one nut");
    if (spanners < nuts)
        throw GeneratorError("unsolvable: fewer spanners than nuts");
    if (locations < 2) throw GeneratorError("need at least two locations");

    SplitMix64 rng(seed);
    auto loc_name = [](int i) { return "loc" + std::to_string(i + 1); };
    auto spanner_name = [](int i) { return "spanner" + std::to_string(i + 1); };
    auto nut_name = [](int i) { return "nut" + std::to_string(i + 1); };

    // Spanners lie strictly before the final location so they can be missed.
    std::vector<int> spanner_at(static_cast<std::size_t>(spanners));
    for (int s = 0; s < spanners; ++s)
        spanner_at[static_cast<std::size_t>(s)] =
            static_cast<int>(rng.below(static_cast<std::uint64_t>(locations - 1)));

    std::ostringstream os;
    os << "(define (problem spanner-" << spanners << "-" << nuts << "-" << locations << "-s"
       << seed << ")\n";
    os << "  (:domain spanner)\n";
    os << "  (:objects\n    ";
    for (int s = 0; s < spanners; ++s) os << spanner_name(s) << " ";
    os << "- spanner\n    ";
    for (int n = 0; n < nuts; ++n) os << nut_name(n) << " ";
    os << "- nut\n    ";
    for (int l = 0; l < locations; ++l) os << loc_name(l) << " ";
    os << "- location\n  )\n";
    os << "  (:init\n";
    os << "    (= (carrying) 0)\n";
    os << "    (at-man " << loc_name(0) << ")\n";
    for (int l = 0; l + 1 < locations; ++l)
        os << "    (link " << loc_name(l) << " " << loc_name(l + 1) << ")\n";
    for (int s = 0; s < spanners; ++s)
        os << "    (at " << spanner_name(s) << " "
           << loc_name(spanner_at[static_cast<std::size_t>(s)]) << ")\n";
    for (int n = 0; n < nuts; ++n) {
        os << "    (at-nut " << nut_name(n) << " " << loc_name(locations - 1) << ")\n";
        os << "    (loose " << nut_name(n) << ")\n";
    }
    os << "  )\n";
    os << "  (:goal (and\n";
    for (int n = 0; n < nuts; ++n) os << "    (tightened " << nut_name(n) << ")\n";
    os << "  ))\n";
    os << ")\n";

    return {kSpannerDomain, os.str()};
}

}  // namespace nplan::benchgen
