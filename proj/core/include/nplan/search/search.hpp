#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nplan/search/heuristic.hpp"
#include "nplan/task/ground_task.hpp"

namespace nplan::search {

struct SearchLimits {
    std::uint64_t max_expansions = 1'000'000;
    double max_seconds = 300.0;
};

enum class Outcome : std::uint8_t { plan_found, unsolvable, resource_limit };

const char* outcome_name(Outcome outcome);

struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t generated = 0;
    std::uint64_t peak_open = 0;
    double wall_seconds = 0.0;
};

struct SearchResult {
    Outcome outcome = Outcome::resource_limit;
    std::vector<int> plan;  // action indices
    double cost = 0.0;
    SearchStats stats;

    std::vector<std::string> plan_signatures(const task::GroundTask& task) const;
};

// Greedy best-first search: pops the open state with the smallest h (FIFO on
// ties), goal-tests successors at generation time, and never revisits a state.
// `unsolvable` is reported only on open-list exhaustion.
SearchResult gbfs(const task::GroundTask& task, Heuristic& h, const SearchLimits& limits = {});

// A* ordered by g + h with smaller h then FIFO as tie-breakers; duplicate
// states reopen when rediscovered with a smaller g. Goal test happens at
// expansion, so plans are cost-optimal for admissible h.
SearchResult astar(const task::GroundTask& task, Heuristic& h, const SearchLimits& limits = {});
SearchResult astar(const task::GroundTask& task, const SearchLimits& limits = {});  // blind

}  // namespace nplan::search
