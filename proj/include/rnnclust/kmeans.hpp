#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"

#include <cstdint>
#include <vector>

namespace rnnclust {

struct KmeansParams {
    std::size_t k_clusters = 2;
    std::size_t restarts = 1;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;
};

struct KmeansResult {
    Clustering clustering;
    std::vector<double> centroids;   // k_clusters * m, row-major, in raw (pre-canonical) order
    double objective = 0.0;          // within-cluster sum of squared distances
    std::size_t iterations = 0;
    std::vector<double> objective_trace;  // objective after each assignment step of the winning restart
};

/// Lloyd's algorithm from distinct random entities; keeps the restart with the lowest SSE.
/// An empty cluster is reseeded with the entity farthest from its current centroid.
KmeansResult kmeans(const FeatureMatrix& data, const KmeansParams& params);

}  // namespace rnnclust
