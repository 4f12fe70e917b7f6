#pragma once

#include <cstdint>

#include "limid/model.hpp"

namespace limid {

struct GenParams {
    std::uint64_t seed = 1;
    int n_chance = 4;
    int n_decisions = 2;
    int n_values = 2;
    int max_card = 2;
    int max_parents = 2;  // chance-node parent cap
    bool soluble = false;
};

// Seeded random LIMID. With `soluble`, the output is a traditional influence
// diagram: decisions in temporal sequence, each observing every earlier
// decision plus at most one shared chance observation, so exhaustive strategy
// enumeration stays tractable. Identical params give an identical model.
Limid generate_limid(const GenParams& params);

}  // namespace limid
