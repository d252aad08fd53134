#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nplan::task {

// Fixed-width bitset packed into 64-bit words.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const Bitset&) const = default;

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Total assignment to the task's variables. Duplicate detection uses exact
// bitwise equality, including the numeric vector.
struct State {
    Bitset props;
    std::vector<double> numerics;

    bool operator==(const State& other) const {
        if (props != other.props || numerics.size() != other.numerics.size()) return false;
        for (std::size_t i = 0; i < numerics.size(); ++i) {
            if (std::bit_cast<std::uint64_t>(numerics[i]) !=
                std::bit_cast<std::uint64_t>(other.numerics[i]))
                return false;
        }
        return true;
    }
};

struct StateHash {
    std::size_t operator()(const State& s) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (std::uint64_t w : s.props.words()) mix(w);
        for (double d : s.numerics) mix(std::bit_cast<std::uint64_t>(d));
        return static_cast<std::size_t>(h);
    }
};

}  // namespace nplan::task
