#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"
#include "rnnclust/neighbors.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace rnnclust {

// DBSCRN: density-based clustering where density is the size of the reverse k-nearest
// neighbor set. Core entities (|RNN_k| >= k) seed clusters that grow along reverse-neighbor
// links through entities with |RNN_k| > 2k/pi; all remaining entities join the cluster of
// their nearest core entity. The result has no noise and needs no random choices.

struct DbscrnParams {
    std::size_t k = 3;
};

/// Raised when no entity satisfies the core condition for the requested k.
class NoCoreEntityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CoreStatus { core, non_core };

CoreStatus classify_core(const NeighborIndex& index, EntityId i, std::size_t k);

/// Density threshold for expansion: an entity spreads the cluster iff |RNN_k| > 2k/pi.
bool expands(const NeighborIndex& index, EntityId i, std::size_t k);

/// Breadth-first growth from `start` over reverse-neighbor links. Every entity reached that
/// has no cluster yet is written to `assignment` with `cluster_id` and returned, start first.
/// Entities already assigned are not traversed; anything reachable through them was
/// claimed by their own expansion, so the result is the same as traversing through them.
std::vector<EntityId> expand_cluster(const NeighborIndex& index, EntityId start, std::size_t k,
                                     std::span<int> assignment, int cluster_id);

Clustering dbscrn(const FeatureMatrix& data, const NeighborIndex& index, const DbscrnParams& params);

}  // namespace rnnclust
