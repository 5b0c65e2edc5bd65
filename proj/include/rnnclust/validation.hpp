#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace rnnclust {

// ---------------------------------------------------------------------------
// External validation

/// How predicted noise entities enter the contingency table.
enum class NoiseHandling {
    singletons,  // every noise entity is its own cluster
    one_cluster, // all noise entities share one extra cluster
};

struct ContingencyTable {
    std::size_t rows = 0;  // predicted clusters
    std::size_t cols = 0;  // true classes
    std::vector<std::size_t> counts;  // rows * cols
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t total = 0;

    std::size_t operator()(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

ContingencyTable contingency_table(std::span<const int> predicted, std::span<const int> truth,
                                   NoiseHandling noise = NoiseHandling::singletons);

/// Hubert-Arabie adjusted Rand index. Identical trivial partitions score 1.
double adjusted_rand_index(const ContingencyTable& table);
double adjusted_rand_index(const Clustering& predicted, std::span<const int> truth,
                           NoiseHandling noise = NoiseHandling::singletons);

// ---------------------------------------------------------------------------
// Density-based clustering validation (DBCV)
//
// Distances here are plain (not squared) Euclidean. Noise entities and clusters with
// fewer than two members are left out of every density computation; a clustering with
// fewer than two such clusters scores 0. The size weights divide by the total entity
// count, noise included.

struct DbcvCluster {
    std::size_t size = 0;
    double sparseness = 0.0;   // largest internal MST edge of mutual reachability
    double separation = 0.0;   // smallest mutual reachability to any other cluster
    double validity = 0.0;     // in [-1, 1]
};

struct DbcvReport {
    std::vector<DbcvCluster> clusters;  // indexed by cluster id
    double score = 0.0;
};

DbcvReport dbcv(const FeatureMatrix& data, const Clustering& clustering);

// ---------------------------------------------------------------------------
// Model selection

template <class Params>
struct ScoredResult {
    Params params;
    Clustering clustering;
    double score = 0.0;
};

/// Index of the highest score; ties go to the smaller parameters (Params::operator<).
/// NaN scores never win unless every score is NaN.
template <class Params>
std::size_t select_best_index(std::span<const ScoredResult<Params>> results) {
    if (results.empty())
        throw std::invalid_argument("select_best: no results");
    auto key = [](double s) { return std::isnan(s) ? -std::numeric_limits<double>::infinity() : s; };
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const double a = key(results[i].score);
        const double b = key(results[best].score);
        if (a > b || (a == b && results[i].params < results[best].params))
            best = i;
    }
    return best;
}

template <class Params>
const ScoredResult<Params>& select_best(std::span<const ScoredResult<Params>> results) {
    return results[select_best_index(results)];
}

}  // namespace rnnclust
