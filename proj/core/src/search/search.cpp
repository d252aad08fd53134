#include "nplan/search/search.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>
#include <unordered_map>

namespace nplan::search {

namespace {

using Clock = std::chrono::steady_clock;

// Stable state ids with parent pointers for plan extraction. States live in
// the node deque; the id map points at them.
class StateSpace {
  public:
    struct Node {
        task::State state;
        int parent = -1;
        int action = -1;
        double g = 0.0;
    };

    int insert(task::State state, int parent, int action, double g) {
        auto [it, fresh] = ids_.try_emplace(std::move(state), static_cast<int>(nodes_.size()));
        if (!fresh) return it->second;
        Node node;
        node.state = it->first;
        node.parent = parent;
        node.action = action;
        node.g = g;
        nodes_.push_back(std::move(node));
        return it->second;
    }

    int find(const task::State& state) const {
        auto it = ids_.find(state);
        return it == ids_.end() ? -1 : it->second;
    }

    Node& operator[](int id) { return nodes_[static_cast<std::size_t>(id)]; }
    const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  private:
    std::unordered_map<task::State, int, task::StateHash> ids_;
    std::deque<Node> nodes_;
};

std::vector<int> extract_plan(const StateSpace& space, int goal_id) {
    std::vector<int> plan;
    for (int id = goal_id; space[id].parent >= 0; id = space[id].parent)
        plan.push_back(space[id].action);
    std::reverse(plan.begin(), plan.end());
    return plan;
}

bool out_of_time(const Clock::time_point& start, double max_seconds) {
    return std::chrono::duration<double>(Clock::now() - start).count() > max_seconds;
}

}  // namespace

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::plan_found: return "plan";
        case Outcome::unsolvable: return "unsolvable";
        case Outcome::resource_limit: return "resource-limit";
    }
    return "?";
}

std::vector<std::string> SearchResult::plan_signatures(const task::GroundTask& task) const {
    std::vector<std::string> signatures;
    signatures.reserve(plan.size());
    for (int action : plan) signatures.push_back(task.actions[static_cast<std::size_t>(action)].signature);
    return signatures;
}

SearchResult gbfs(const task::GroundTask& task, Heuristic& h, const SearchLimits& limits) {
    const Clock::time_point start = Clock::now();
    SearchResult result;

    auto finish = [&](Outcome outcome) -> SearchResult& {
        result.outcome = outcome;
        result.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    };

    if (task::satisfies(task.initial_state, task.goal)) return finish(Outcome::plan_found);

    StateSpace space;
    int root = space.insert(task.initial_state, -1, -1, 0.0);

    struct Entry {
        double h;
        std::uint64_t order;
        int id;
        bool operator>(const Entry& other) const {
            return std::tie(h, order) > std::tie(other.h, other.order);
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    std::uint64_t tick = 0;

    ++result.stats.evaluations;
    open.push({h.evaluate(task, task.initial_state), tick++, root});

    while (!open.empty()) {
        if (result.stats.expansions >= limits.max_expansions) return finish(Outcome::resource_limit);
        if ((result.stats.expansions & 1023) == 0 && out_of_time(start, limits.max_seconds))
            return finish(Outcome::resource_limit);

        int id = open.top().id;
        open.pop();
        ++result.stats.expansions;

        std::vector<std::pair<int, task::State>> succs = task::successors(task, space[id].state);
        result.stats.generated += succs.size();
        for (auto& [action, state] : succs) {
            if (space.find(state) >= 0) continue;
            double g = space[id].g + task.actions[static_cast<std::size_t>(action)].cost;
            int child = space.insert(std::move(state), id, action, g);
            if (task::satisfies(space[child].state, task.goal)) {
                result.plan = extract_plan(space, child);
                result.cost = g;
                result.stats.peak_open = std::max(result.stats.peak_open,
                                                  static_cast<std::uint64_t>(open.size()));
                return finish(Outcome::plan_found);
            }
            ++result.stats.evaluations;
            open.push({h.evaluate(task, space[child].state), tick++, child});
        }
        result.stats.peak_open =
            std::max(result.stats.peak_open, static_cast<std::uint64_t>(open.size()));
    }
    return finish(Outcome::unsolvable);
}

SearchResult astar(const task::GroundTask& task, Heuristic& h, const SearchLimits& limits) {
    const Clock::time_point start = Clock::now();
    SearchResult result;

    auto finish = [&](Outcome outcome) -> SearchResult& {
        result.outcome = outcome;
        result.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    };

    StateSpace space;
    int root = space.insert(task.initial_state, -1, -1, 0.0);

    struct Entry {
        double f;
        double h;
        std::uint64_t order;
        int id;
        double g;
        bool operator>(const Entry& other) const {
            return std::tie(f, h, order) > std::tie(other.f, other.h, other.order);
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    std::uint64_t tick = 0;

    ++result.stats.evaluations;
    double h0 = h.evaluate(task, task.initial_state);
    open.push({h0, h0, tick++, root, 0.0});

    while (!open.empty()) {
        Entry entry = open.top();
        open.pop();
        if (entry.g > space[entry.id].g) continue;  // stale after reopening

        if (result.stats.expansions >= limits.max_expansions) return finish(Outcome::resource_limit);
        if ((result.stats.expansions & 1023) == 0 && out_of_time(start, limits.max_seconds))
            return finish(Outcome::resource_limit);

        if (task::satisfies(space[entry.id].state, task.goal)) {
            result.plan = extract_plan(space, entry.id);
            result.cost = space[entry.id].g;
            return finish(Outcome::plan_found);
        }
        ++result.stats.expansions;

        std::vector<std::pair<int, task::State>> succs =
            task::successors(task, space[entry.id].state);
        result.stats.generated += succs.size();
        for (auto& [action, state] : succs) {
            double g = space[entry.id].g + task.actions[static_cast<std::size_t>(action)].cost;
            int child = space.find(state);
            if (child < 0) {
                child = space.insert(std::move(state), entry.id, action, g);
                ++result.stats.evaluations;
                double hc = h.evaluate(task, space[child].state);
                open.push({g + hc, hc, tick++, child, g});
            } else if (g < space[child].g) {
                space[child].g = g;
                space[child].parent = entry.id;
                space[child].action = action;
                ++result.stats.evaluations;
                double hc = h.evaluate(task, space[child].state);
                open.push({g + hc, hc, tick++, child, g});
            }
        }
        result.stats.peak_open =
            std::max(result.stats.peak_open, static_cast<std::uint64_t>(open.size()));
    }
    return finish(Outcome::unsolvable);
}

SearchResult astar(const task::GroundTask& task, const SearchLimits& limits) {
    BlindHeuristic blind;
    return astar(task, blind, limits);
}

}  // namespace nplan::search
