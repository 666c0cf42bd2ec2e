#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coopnet/errors.hpp"

namespace coopnet {

/// Coalitions over players {0..K-1} are bitmasks: bit k set means player k
/// is a member. The grand coalition of K players is mask (1<<K)-1.
using Coalition = std::uint32_t;

constexpr std::size_t kMaxPlayers = 16;

inline Coalition grand_coalition(std::size_t k) {
    return static_cast<Coalition>((1u << k) - 1u);
}

inline bool contains(Coalition s, std::size_t player) { return (s >> player) & 1u; }

inline std::size_t coalition_size(Coalition s) { return static_cast<std::size_t>(std::popcount(s)); }

inline std::vector<std::size_t> members(Coalition s) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; s != 0; ++k, s >>= 1)
        if (s & 1u) out.push_back(k);
    return out;
}

inline std::string coalition_to_string(Coalition s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t k : members(s)) {
        if (!first) out += ",";
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

/// An ordered list of disjoint coalitions covering {0..K-1}. Blocks are kept
/// sorted by smallest member, which is the order partition enumeration emits.
using CoalitionStructure = std::vector<Coalition>;

inline std::string structure_to_string(const CoalitionStructure& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "|";
        out += coalition_to_string(parts[i]);
    }
    return out;
}

/// Visits every partition of {0..K-1} exactly once, in lexicographic order
/// of the restricted growth string: the visit order starts at the one-block
/// partition {{0..K-1}} and ends at all singletons. K up to 12.
inline void for_each_partition(std::size_t k,
                               const std::function<void(const CoalitionStructure&)>& visit) {
    if (k == 0 || k > 12)
        throw KTooLarge("partition enumeration supports 1..12 players, got " + std::to_string(k));

    std::vector<std::size_t> rgs(k, 0);   // rgs[i] = block index of player i
    std::vector<std::size_t> maxv(k, 0);  // maxv[i] = max(rgs[0..i-1])
    while (true) {
        std::size_t blocks = 1;
        for (std::size_t i = 0; i < k; ++i) blocks = std::max(blocks, rgs[i] + 1);
        CoalitionStructure parts(blocks, 0u);
        for (std::size_t i = 0; i < k; ++i) parts[rgs[i]] |= (1u << i);
        visit(parts);

        // advance to the next restricted growth string
        std::size_t i = k;
        while (i-- > 1) {
            if (rgs[i] <= maxv[i]) {
                ++rgs[i];
                const std::size_t m = std::max(maxv[i], rgs[i]);
                for (std::size_t j = i + 1; j < k; ++j) {
                    rgs[j] = 0;
                    maxv[j] = m;
                }
                break;
            }
        }
        if (i == 0) break;  // wrapped past the all-singletons string
    }
}

inline std::vector<CoalitionStructure> enumerate_partitions(std::size_t k) {
    std::vector<CoalitionStructure> out;
    for_each_partition(k, [&](const CoalitionStructure& p) { out.push_back(p); });
    return out;
}

/// Iterates the proper nonempty subsets of `sup` (excludes 0 and sup itself).
inline void for_each_proper_subset(Coalition sup, const std::function<void(Coalition)>& visit) {
    // classic submask walk, descending
    for (Coalition s = (sup - 1) & sup; s != 0; s = (s - 1) & sup) visit(s);
}

}  // namespace coopnet
