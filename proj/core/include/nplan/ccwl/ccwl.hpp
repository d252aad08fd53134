#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nplan/nilg/graph.hpp"

namespace nplan::ccwl {

// Colour of a node whose key was never allocated by the (frozen) table.
// Propagates through refinement and contributes to neither histogram nor
// pooling.
inline constexpr int kUnseen = -1;

// Injective map from canonical colour keys to dense ids. A key is either a
// categorical feature (iteration 0) or a previous colour paired with the set
// of (neighbour colour, edge label) pairs. Ids are allocated in first-seen
// order, so fitting the same graphs in the same order reproduces the table.
class ColorTable {
  public:
    struct RefinedKey {
        int previous;
        std::vector<std::pair<int, int>> neighbours;  // sorted, deduplicated

        auto operator<=>(const RefinedKey&) const = default;
    };

    // Insert-or-lookup; returns kUnseen for unknown keys once frozen.
    int base_color(const std::string& canonical_feature);
    int refined_color(const RefinedKey& key);

    // Pure lookups.
    int find_base(const std::string& canonical_feature) const;
    int find_refined(const RefinedKey& key) const;

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }
    int size() const { return next_id_; }

    // (key, id) pairs ordered by id; keys are the canonical textual forms
    // persisted in model files.
    std::vector<std::pair<std::string, int>> entries() const;
    static ColorTable from_entries(const std::vector<std::pair<std::string, int>>& entries);

  private:
    std::unordered_map<std::string, int> base_;
    std::map<RefinedKey, int> refined_;
    int next_id_ = 0;
    bool frozen_ = false;
};

enum class Pooling : std::uint8_t { sum, mean, max };

const char* pooling_name(Pooling pooling);
Pooling pooling_from_name(const std::string& name);

// Frozen feature-space definition: L refinement iterations over the colour
// table, histogram of |C| colour counts followed by |C| pooled continuous
// slots (d = 1 for instance learning graphs).
struct CcwlModel {
    int iterations = 1;
    Pooling pooling = Pooling::sum;
    ColorTable table;
    int continuous_dim = 1;

    std::size_t feature_length() const {
        return static_cast<std::size_t>(1 + continuous_dim) * static_cast<std::size_t>(table.size());
    }
};

// Colour refinement. Returns colours[j][v] for j in 0..L. Iteration 0 colours
// come from the categorical features; iteration j hashes the previous colour
// with the SET of (previous neighbour colour, label) pairs. A node with an
// empty neighbourhood keeps its colour. With a frozen table, unknown keys and
// any unseen input yield kUnseen.
std::vector<std::vector<int>> refine(const nilg::NilgGraph& graph, int iterations,
                                     ColorTable& table);
std::vector<std::vector<int>> refine(const nilg::NilgGraph& graph, int iterations,
                                     const ColorTable& table);

// Allocates the colour table over all training graphs and freezes it.
ColorTable fit_colors(std::span<const nilg::NilgGraph> graphs, int iterations);

// Embeds a graph in the model's feature space: per-colour occurrence counts
// over all iterations, then per-colour pooled continuous attributes over the
// nodes that ever held the colour (each node pooled once per colour).
std::vector<double> featurize(const nilg::NilgGraph& graph, const CcwlModel& model);

}  // namespace nplan::ccwl
