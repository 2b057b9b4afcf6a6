#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spectile/groups.hpp"

namespace spectile::testing {

inline GroupSubset random_subset(const Group& g, std::mt19937_64& rng, double density) {
    std::bernoulli_distribution keep(density);
    std::vector<Index> idx;
    for (Index i = 0; i < g.order(); ++i)
        if (keep(rng)) idx.push_back(i);
    if (idx.empty()) idx.push_back(0);
    return GroupSubset(g, std::move(idx));
}

// Subset of G with the given bitmask, G of order <= 63.
inline GroupSubset from_mask(const Group& g, std::uint64_t mask) {
    std::vector<Index> idx;
    for (Index i = 0; i < g.order(); ++i)
        if (mask >> i & 1) idx.push_back(i);
    return GroupSubset(g, std::move(idx));
}

inline GroupSubset ints(const Group& g, std::vector<Index> idx) { return GroupSubset(g, std::move(idx)); }

}  // namespace spectile::testing
