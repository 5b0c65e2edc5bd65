#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"
#include "rnnclust/neighbors.hpp"

#include <cstdint>
#include <vector>

namespace rnnclust {

struct DbscanParams {
    double epsilon = 0.0;  // threshold on squared Euclidean distance
    std::size_t min_pts = 1;

    void validate() const;
};

/// Entities within squared distance epsilon of i, i included. Sorted by index.
std::vector<EntityId> epsilon_neighborhood(const FeatureMatrix& data, EntityId i, double epsilon);

/// Classic DBSCAN with entity visit order drawn from `seed`. Core and noise status do not
/// depend on the seed; a border entity joins whichever cluster reaches it first.
///
/// When `index` is given and its lists are long enough to cover epsilon for an entity,
/// the neighborhood is read from the index; otherwise a kd-tree range query is used.
Clustering dbscan(const FeatureMatrix& data, const NeighborIndex* index, const DbscanParams& params,
                  std::uint64_t seed);

}  // namespace rnnclust
