#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nplan::benchgen {

class GeneratorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct GeneratedInstance {
    std::string domain_pddl;
    std::string problem_pddl;
};

// Capacity-constrained blocksworld: blocks stacked into towers on bases, each
// base with a remaining-capacity counter. Initial and goal configurations are
// drawn independently; requires blocks <= bases * capacity.
GeneratedInstance gen_ccblocksworld(int blocks, int bases, int capacity, std::uint64_t seed);

// Ferry with a remaining-capacity counter: cars at locations, a single ferry
// that boards, sails and debarks. Requires cars >= 1, locations >= 2,
// capacity >= 1.
GeneratedInstance gen_ferry(int cars, int locations, int capacity, std::uint64_t seed);

// Spanner: a one-way hallway with spanners scattered before the final
// location, nuts at the end, and a carried-spanner counter consumed by
// tightening. Requires spanners >= nuts >= 1 and locations >= 2.
GeneratedInstance gen_spanner(int spanners, int nuts, int locations, std::uint64_t seed);

}  // namespace nplan::benchgen
