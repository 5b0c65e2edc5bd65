#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/neighbors.hpp"

#include <cstdint>
#include <vector>

namespace rnnclust {

struct IsdbscanParams {
    std::size_t k = 5;
    std::uint64_t seed = 0;
};

/// Precomputed k-influence spaces of every entity for one k, over the full data set.
class InfluenceSpaces {
public:
    InfluenceSpaces(const NeighborIndex& index, std::size_t k);

    std::size_t k() const noexcept { return k_; }
    std::span<const EntityId> of(EntityId i) const noexcept {
        return {members_.data() + offset_[i], offset_[i + 1] - offset_[i]};
    }
    /// |IS_k(i)| > (2/3) k
    bool dense(EntityId i) const noexcept { return 3 * of(i).size() > 2 * k_; }

private:
    std::size_t k_;
    std::vector<std::size_t> offset_;
    std::vector<EntityId> members_;
};

/// Influence-space closure grown from `start`. Entities already marked in `visited` are
/// neither collected nor expanded; every collected entity is marked. Returns an empty set
/// when the start itself fails the density guard, otherwise a set that contains `start`.
std::vector<EntityId> make_cluster(const InfluenceSpaces& spaces, EntityId start,
                                   std::vector<bool>& visited);

/// ISDBSCAN: repeatedly grows a cluster from a random remaining entity and removes it.
/// Sets larger than k become clusters; smaller ones and failed starts become noise.
Clustering isdbscan(const NeighborIndex& index, const IsdbscanParams& params);

}  // namespace rnnclust
