#include "rnnclust/isdbscan.hpp"

#include "rnnclust/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rnnclust {

InfluenceSpaces::InfluenceSpaces(const NeighborIndex& index, std::size_t k) : k_(k) {
    if (k == 0 || k > index.k_max())
        throw std::out_of_range("influence space k = " + std::to_string(k) + " outside [1, k_max]");
    const std::size_t n = index.size();
    offset_.assign(n + 1, 0);
    members_.reserve(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<EntityId>(i);
        for (EntityId j : index.knn(id, k)) {
            const auto back = index.knn(j, k);
            if (std::find(back.begin(), back.end(), id) != back.end())
                members_.push_back(j);
        }
        offset_[i + 1] = members_.size();
    }
}

std::vector<EntityId> make_cluster(const InfluenceSpaces& spaces, EntityId start,
                                   std::vector<bool>& visited) {
    std::vector<EntityId> cluster;
    if (!spaces.dense(start))
        return cluster;
    cluster.push_back(start);
    visited[start] = true;
    // worklist in place of the recursive formulation; cluster doubles as the queue
    for (std::size_t head = 0; head < cluster.size(); ++head) {
        const EntityId u = cluster[head];
        if (!spaces.dense(u))
            continue;
        for (EntityId v : spaces.of(u)) {
            if (visited[v])
                continue;
            visited[v] = true;
            cluster.push_back(v);
        }
    }
    return cluster;
}

Clustering isdbscan(const NeighborIndex& index, const IsdbscanParams& params) {
    const std::size_t n = index.size();
    std::vector<int> label(n, kNoise);
    if (params.k == 0)
        throw std::invalid_argument("ISDBSCAN k must be positive");
    if (params.k >= n)
        return canonicalize(label);  // no set can exceed k members
    if (params.k > index.k_max())
        throw std::out_of_range("ISDBSCAN k exceeds index k_max");

    const InfluenceSpaces spaces(index, params.k);
    Rng rng(params.seed);

    // remaining entities; position[] allows O(1) swap-removal
    std::vector<EntityId> remaining(n);
    std::iota(remaining.begin(), remaining.end(), EntityId{0});
    std::vector<std::size_t> position(n);
    std::iota(position.begin(), position.end(), std::size_t{0});
    auto unlink = [&](EntityId e) {
        const std::size_t at = position[e];
        const EntityId last = remaining.back();
        remaining[at] = last;
        position[last] = at;
        remaining.pop_back();
    };

    // claimed entities are out of the working set; make_cluster treats them as visited,
    // so a new set never overlaps an earlier one
    std::vector<bool> claimed(n, false);
    int next_cluster = 0;
    while (!remaining.empty()) {
        const EntityId start = remaining[uniform_index(rng, remaining.size())];
        const auto cluster = make_cluster(spaces, start, claimed);
        for (EntityId e : cluster)
            unlink(e);
        if (cluster.empty()) {
            claimed[start] = true;
            unlink(start);
        }
        if (cluster.size() > params.k) {
            for (EntityId e : cluster)
                label[e] = next_cluster;
            ++next_cluster;
        }
    }
    return canonicalize(label);
}

}  // namespace rnnclust
