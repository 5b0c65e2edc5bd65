#include "rnnclust/dbscrn.hpp"

#include <limits>
#include <numbers>
#include <string>

namespace rnnclust {

CoreStatus classify_core(const NeighborIndex& index, EntityId i, std::size_t k) {
    return index.rnn_count(i, k) >= k ? CoreStatus::core : CoreStatus::non_core;
}

bool expands(const NeighborIndex& index, EntityId i, std::size_t k) {
    return static_cast<double>(index.rnn_count(i, k)) > 2.0 * static_cast<double>(k) / std::numbers::pi;
}

std::vector<EntityId> expand_cluster(const NeighborIndex& index, EntityId start, std::size_t k,
                                     std::span<int> assignment, int cluster_id) {
    std::vector<EntityId> cluster;
    if (assignment[start] != kNoise)
        return cluster;
    assignment[start] = cluster_id;
    cluster.push_back(start);
    // the cluster vector is also the BFS queue: each entity enters it at most once
    for (std::size_t head = 0; head < cluster.size(); ++head) {
        const EntityId u = cluster[head];
        if (!expands(index, u, k))
            continue;
        for (EntityId v : index.rnn_view(u, k)) {
            if (assignment[v] != kNoise)
                continue;
            assignment[v] = cluster_id;
            cluster.push_back(v);
        }
    }
    return cluster;
}

Clustering dbscrn(const FeatureMatrix& data, const NeighborIndex& index, const DbscrnParams& params) {
    const std::size_t n = data.rows();
    const std::size_t k = params.k;
    if (index.size() != n)
        throw std::invalid_argument("neighbor index was built for a different data set");
    if (k == 0 || k > index.k_max())
        throw std::out_of_range("DBSCRN k = " + std::to_string(k) + " outside [1, k_max]");

    std::vector<EntityId> core;
    std::vector<int> assignment(n, kNoise);  // kNoise doubles as "unassigned" here
    int next_cluster = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<EntityId>(i);
        if (classify_core(index, id, k) != CoreStatus::core)
            continue;
        core.push_back(id);
        if (assignment[i] == kNoise)
            expand_cluster(index, id, k, assignment, next_cluster++);
    }
    if (core.empty())
        throw NoCoreEntityError("no core entity for k = " + std::to_string(k) + "; k is too large for the data");

    // Non-core entities never reached by an expansion take the cluster of the nearest
    // core entity; ties go to the lower index because the scan is ascending and strict.
    const std::size_t m = data.cols();
    for (std::size_t i = 0; i < n; ++i) {
        if (assignment[i] != kNoise)
            continue;
        const double* a = data.row(i).data();
        double best = std::numeric_limits<double>::infinity();
        EntityId nearest = core.front();
        for (EntityId c : core) {
            const double d = squared_euclidean_unchecked(a, data.row(c).data(), m);
            if (d < best) {
                best = d;
                nearest = c;
            }
        }
        assignment[i] = assignment[nearest];
    }
    return canonicalize(assignment);
}

}  // namespace rnnclust
