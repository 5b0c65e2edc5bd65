#pragma once

#include "rnnclust/core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rnnclust {

enum class NeighborBackend { brute, spatial };

/// k-nearest and reverse k-nearest neighbor lists for every entity, for all k <= k_max.
///
/// Neighbor order is (squared distance, entity index) ascending and an entity is never
/// its own neighbor. Reverse lists are the exact inversion of the forward lists: for
/// each entity they hold every (source, rank) pair with the entity at position `rank`
/// (1-based) of the source's list, ordered by rank then source.
class NeighborIndex {
public:
    std::size_t size() const noexcept { return n_; }
    std::size_t k_max() const noexcept { return k_max_; }

    /// First k neighbors of i, nearest first. Throws std::out_of_range if k > k_max.
    std::span<const EntityId> knn(EntityId i, std::size_t k) const;
    /// Squared distances matching knn(i, k).
    std::span<const double> knn_distances(EntityId i, std::size_t k) const;

    /// Entities having i among their k nearest, in (rank, index) order.
    std::span<const EntityId> rnn_view(EntityId i, std::size_t k) const;
    std::size_t rnn_count(EntityId i, std::size_t k) const { return rnn_view(i, k).size(); }

    friend NeighborIndex build_index(const FeatureMatrix&, std::size_t, NeighborBackend, unsigned);

private:
    void check_k(std::size_t k) const;

    std::size_t n_ = 0;
    std::size_t k_max_ = 0;
    std::vector<EntityId> knn_;       // n * k_max
    std::vector<double> knn_dist_;    // n * k_max
    std::vector<std::size_t> rev_offset_;  // n + 1
    std::vector<EntityId> rev_source_;
    std::vector<std::uint32_t> rev_rank_;
};

/// Builds the index with either exhaustive search or an exact kd-tree. Both backends
/// return bit-identical lists. `threads` > 1 splits the forward search across workers.
NeighborIndex build_index(const FeatureMatrix& data, std::size_t k_max,
                          NeighborBackend backend = NeighborBackend::spatial, unsigned threads = 1);

/// NN_k(i), in distance order.
std::vector<EntityId> knn(const NeighborIndex& index, EntityId i, std::size_t k);
/// RNN_k(i), sorted by entity index.
std::vector<EntityId> rnn(const NeighborIndex& index, EntityId i, std::size_t k);
/// IS_k(i) = NN_k(i) intersected with RNN_k(i), sorted by entity index.
std::vector<EntityId> influence_space(const NeighborIndex& index, EntityId i, std::size_t k);

/// Exact kd-tree over a feature matrix, shared by the kNN backend and epsilon range queries.
class KdTree {
public:
    explicit KdTree(const FeatureMatrix& data, std::size_t leaf_size = 16);

    /// k nearest entities to `query` (excluding `exclude`), ordered by (distance, index).
    void nearest(EntityId query, std::size_t k, std::span<EntityId> out_ids,
                 std::span<double> out_dist) const;
    /// All entities within squared distance `radius` of entity `query`, including itself, unsorted.
    void within(EntityId query, double radius, std::vector<EntityId>& out) const;

private:
    struct Node {
        std::size_t begin, end;  // range in order_
        std::size_t left, right; // children, 0 for leaves
    };
    std::size_t build(std::size_t begin, std::size_t end);
    double box_distance(std::size_t node, const double* q) const;

    const FeatureMatrix* data_;
    std::size_t leaf_size_;
    std::vector<EntityId> order_;
    std::vector<Node> nodes_;
    std::vector<double> box_lo_;  // nodes * m
    std::vector<double> box_hi_;
};

}  // namespace rnnclust
