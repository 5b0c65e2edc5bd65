#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rnnclust {

inline constexpr int kNoise = -1;

/// Hard assignment of every entity to a cluster id in [0, K) or kNoise.
struct Clustering {
    std::vector<int> assignment;
    std::size_t num_clusters = 0;

    std::size_t size() const noexcept { return assignment.size(); }
    std::size_t noise_count() const noexcept;

    bool operator==(const Clustering&) const = default;
};

/// Renumbers clusters by ascending smallest member index; noise stays noise.
/// Accepts arbitrary non-negative raw ids.
Clustering canonicalize(std::span<const int> raw);

/// Members of every cluster, indexed by cluster id.
std::vector<std::vector<std::size_t>> members(const Clustering& c);

}  // namespace rnnclust
