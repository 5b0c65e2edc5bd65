#include "rnnclust/dbscan.hpp"

#include "rnnclust/random.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace rnnclust {

void DbscanParams::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("DBSCAN epsilon must be a finite non-negative number");
    if (min_pts < 1)
        throw std::invalid_argument("DBSCAN MinPts must be at least 1");
}

std::vector<EntityId> epsilon_neighborhood(const FeatureMatrix& data, EntityId i, double epsilon) {
    std::vector<EntityId> out;
    const auto a = data.row(i);
    for (std::size_t j = 0; j < data.rows(); ++j)
        if (squared_euclidean_unchecked(a.data(), data.row(j).data(), data.cols()) <= epsilon)
            out.push_back(static_cast<EntityId>(j));
    return out;
}

namespace {

class RangeQuery {
public:
    RangeQuery(const FeatureMatrix& data, const NeighborIndex* index, double epsilon)
        : data_(data), index_(index), epsilon_(epsilon) {}

    void operator()(EntityId i, std::vector<EntityId>& out) {
        if (index_ != nullptr && covered(i)) {
            const auto dist = index_->knn_distances(i, index_->k_max());
            const auto ids = index_->knn(i, index_->k_max());
            const auto count = static_cast<std::size_t>(
                std::upper_bound(dist.begin(), dist.end(), epsilon_) - dist.begin());
            out.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count));
            out.push_back(i);
            return;
        }
        if (!tree_)
            tree_.emplace(data_);
        tree_->within(i, epsilon_, out);
    }

private:
    bool covered(EntityId i) const {
        if (index_->k_max() + 1 == index_->size())
            return true;
        return index_->knn_distances(i, index_->k_max()).back() > epsilon_;
    }

    const FeatureMatrix& data_;
    const NeighborIndex* index_;
    double epsilon_;
    std::optional<KdTree> tree_;
};

constexpr int kUnvisited = -2;

}  // namespace

Clustering dbscan(const FeatureMatrix& data, const NeighborIndex* index, const DbscanParams& params,
                  std::uint64_t seed) {
    params.validate();
    const std::size_t n = data.rows();
    if (index != nullptr && index->size() != n)
        throw std::invalid_argument("neighbor index was built for a different data set");

    std::vector<EntityId> order(n);
    std::iota(order.begin(), order.end(), EntityId{0});
    Rng rng(seed);
    shuffle(std::span<EntityId>(order), rng);

    RangeQuery query(data, index, params.epsilon);
    std::vector<int> label(n, kUnvisited);
    std::vector<EntityId> neighborhood;
    std::deque<EntityId> frontier;
    int next_cluster = 0;

    for (EntityId p : order) {
        if (label[p] != kUnvisited)
            continue;
        query(p, neighborhood);
        if (neighborhood.size() < params.min_pts) {
            label[p] = kNoise;
            continue;
        }
        const int c = next_cluster++;
        label[p] = c;
        frontier.assign(neighborhood.begin(), neighborhood.end());
        while (!frontier.empty()) {
            const EntityId q = frontier.front();
            frontier.pop_front();
            if (label[q] == kNoise) {
                label[q] = c;  // border entity, not core
                continue;
            }
            if (label[q] != kUnvisited)
                continue;
            label[q] = c;
            query(q, neighborhood);
            if (neighborhood.size() >= params.min_pts)
                frontier.insert(frontier.end(), neighborhood.begin(), neighborhood.end());
        }
    }
    return canonicalize(label);
}

}  // namespace rnnclust
