#include "nplan/ccwl/ccwl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nplan::ccwl {

int ColorTable::base_color(const std::string& canonical_feature) {
    auto it = base_.find(canonical_feature);
    if (it != base_.end()) return it->second;
    if (frozen_) return kUnseen;
    int id = next_id_++;
    base_.emplace(canonical_feature, id);
    return id;
}

int ColorTable::refined_color(const RefinedKey& key) {
    auto it = refined_.find(key);
    if (it != refined_.end()) return it->second;
    if (frozen_) return kUnseen;
    int id = next_id_++;
    refined_.emplace(key, id);
    return id;
}

int ColorTable::find_base(const std::string& canonical_feature) const {
    auto it = base_.find(canonical_feature);
    return it == base_.end() ? kUnseen : it->second;
}

int ColorTable::find_refined(const RefinedKey& key) const {
    auto it = refined_.find(key);
    return it == refined_.end() ? kUnseen : it->second;
}

std::vector<std::pair<std::string, int>> ColorTable::entries() const {
    std::vector<std::pair<std::string, int>> result(static_cast<std::size_t>(next_id_));
    for (const auto& [key, id] : base_) result[static_cast<std::size_t>(id)] = {key, id};
    for (const auto& [key, id] : refined_) {
        std::ostringstream os;
        os << "(" << key.previous << ":";
        for (std::size_t i = 0; i < key.neighbours.size(); ++i) {
            if (i) os << ",";
            os << key.neighbours[i].first << "." << key.neighbours[i].second;
        }
        os << ")";
        result[static_cast<std::size_t>(id)] = {os.str(), id};
    }
    return result;
}

ColorTable ColorTable::from_entries(const std::vector<std::pair<std::string, int>>& entries) {
    ColorTable table;
    int max_id = -1;
    for (const auto& [key, id] : entries) {
        if (id < 0) throw std::runtime_error("colour table id must be non-negative");
        max_id = std::max(max_id, id);
        if (!key.empty() && key.front() == '(' && key.back() == ')') {
            std::istringstream is(key.substr(1, key.size() - 2));
            RefinedKey rk;
            std::string part;
            if (!std::getline(is, part, ':'))
                throw std::runtime_error("malformed colour key '" + key + "'");
            rk.previous = std::stoi(part);
            while (std::getline(is, part, ',')) {
                if (part.empty()) continue;
                std::size_t dot = part.find('.');
                if (dot == std::string::npos)
                    throw std::runtime_error("malformed colour key '" + key + "'");
                rk.neighbours.emplace_back(std::stoi(part.substr(0, dot)),
                                           std::stoi(part.substr(dot + 1)));
            }
            if (!table.refined_.emplace(std::move(rk), id).second)
                throw std::runtime_error("duplicate colour key '" + key + "'");
        } else {
            if (!table.base_.emplace(key, id).second)
                throw std::runtime_error("duplicate colour key '" + key + "'");
        }
    }
    if (max_id + 1 != static_cast<int>(entries.size()))
        throw std::runtime_error("colour table ids must be dense");
    table.next_id_ = max_id + 1;
    table.frozen_ = true;
    return table;
}

const char* pooling_name(Pooling pooling) {
    switch (pooling) {
        case Pooling::sum: return "sum";
        case Pooling::mean: return "mean";
        case Pooling::max: return "max";
    }
    return "?";
}

Pooling pooling_from_name(const std::string& name) {
    if (name == "sum") return Pooling::sum;
    if (name == "mean") return Pooling::mean;
    if (name == "max") return Pooling::max;
    throw std::runtime_error("unknown pooling '" + name + "'");
}

namespace {

template <typename Base, typename Refined>
std::vector<std::vector<int>> refine_impl(const nilg::NilgGraph& graph, int iterations,
                                          Base&& base_color, Refined&& refined_color) {
    const std::size_t n = graph.nodes.size();
    std::vector<std::vector<int>> colors(static_cast<std::size_t>(iterations) + 1,
                                         std::vector<int>(n, kUnseen));
    for (std::size_t v = 0; v < n; ++v) colors[0][v] = base_color(graph.nodes[v].cat.canonical());

    ColorTable::RefinedKey key;
    for (int j = 1; j <= iterations; ++j) {
        const std::vector<int>& prev = colors[j - 1];
        std::vector<int>& cur = colors[j];
        for (std::size_t v = 0; v < n; ++v) {
            if (prev[v] == kUnseen) continue;  // stays kUnseen
            if (graph.adjacency[v].empty()) {
                cur[v] = prev[v];  // empty neighbourhood is a fixed point
                continue;
            }
            key.previous = prev[v];
            key.neighbours.clear();
            bool unseen = false;
            for (const auto& [u, label] : graph.adjacency[v]) {
                if (prev[u] == kUnseen) {
                    unseen = true;
                    break;
                }
                key.neighbours.emplace_back(prev[u], label);
            }
            if (unseen) continue;
            std::sort(key.neighbours.begin(), key.neighbours.end());
            key.neighbours.erase(std::unique(key.neighbours.begin(), key.neighbours.end()),
                                 key.neighbours.end());
            cur[v] = refined_color(key);
        }
    }
    return colors;
}

}  // namespace

std::vector<std::vector<int>> refine(const nilg::NilgGraph& graph, int iterations,
                                     ColorTable& table) {
    return refine_impl(
        graph, iterations, [&](const std::string& key) { return table.base_color(key); },
        [&](const ColorTable::RefinedKey& key) { return table.refined_color(key); });
}

std::vector<std::vector<int>> refine(const nilg::NilgGraph& graph, int iterations,
                                     const ColorTable& table) {
    return refine_impl(
        graph, iterations, [&](const std::string& key) { return table.find_base(key); },
        [&](const ColorTable::RefinedKey& key) { return table.find_refined(key); });
}

ColorTable fit_colors(std::span<const nilg::NilgGraph> graphs, int iterations) {
    ColorTable table;
    for (const nilg::NilgGraph& graph : graphs) refine(graph, iterations, table);
    table.freeze();
    return table;
}

std::vector<double> featurize(const nilg::NilgGraph& graph, const CcwlModel& model) {
    const std::size_t num_colors = static_cast<std::size_t>(model.table.size());
    std::vector<double> features(model.feature_length(), 0.0);
    if (num_colors == 0) return features;

    const ColorTable& table = model.table;
    std::vector<std::vector<int>> colors = refine(graph, model.iterations, table);

    std::vector<double> pooled(num_colors, 0.0);
    std::vector<std::size_t> members(num_colors, 0);
    std::vector<int> held;  // colours this node held, deduplicated
    for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
        held.clear();
        for (const std::vector<int>& iteration : colors) {
            int c = iteration[v];
            if (c == kUnseen) continue;
            features[static_cast<std::size_t>(c)] += 1.0;  // histogram count
            if (std::find(held.begin(), held.end(), c) == held.end()) held.push_back(c);
        }
        double value = graph.nodes[v].con;
        for (int c : held) {
            std::size_t slot = static_cast<std::size_t>(c);
            switch (model.pooling) {
                case Pooling::sum:
                case Pooling::mean: pooled[slot] += value; break;
                case Pooling::max:
                    pooled[slot] = members[slot] == 0 ? value : std::max(pooled[slot], value);
                    break;
            }
            ++members[slot];
        }
    }
    for (std::size_t c = 0; c < num_colors; ++c) {
        double value = pooled[c];
        if (model.pooling == Pooling::mean && members[c] > 0)
            value /= static_cast<double>(members[c]);
        features[num_colors + c] = value;
    }
    return features;
}

}  // namespace nplan::ccwl
