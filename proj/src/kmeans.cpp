#include "rnnclust/kmeans.hpp"

#include "rnnclust/random.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rnnclust {

namespace {

struct Run {
    std::vector<int> labels;
    std::vector<double> centroids;
    double objective = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    std::vector<double> trace;
};

// Assigns every entity to its nearest centroid, then repairs empty clusters.
// Returns whether any label changed.
bool assign(const FeatureMatrix& data, std::size_t k, std::vector<double>& centroids,
            std::vector<int>& labels, std::vector<double>& dist) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    bool changed = false;
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* y = data.row(i).data();
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double d = squared_euclidean_unchecked(y, centroids.data() + c * m, m);
            if (d < best) {
                best = d;
                arg = static_cast<int>(c);
            }
        }
        changed |= labels[i] != arg;
        labels[i] = arg;
        dist[i] = best;
        ++sizes[static_cast<std::size_t>(arg)];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0)
            continue;
        // farthest entity whose cluster can spare it; exists because k <= n
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i)
            if (sizes[static_cast<std::size_t>(labels[i])] > 1 && (far == n || dist[i] > dist[far]))
                far = i;
        --sizes[static_cast<std::size_t>(labels[far])];
        labels[far] = static_cast<int>(c);
        sizes[c] = 1;
        dist[far] = 0.0;
        const auto row = data.row(far);
        std::copy(row.begin(), row.end(), centroids.begin() + static_cast<std::ptrdiff_t>(c * m));
        changed = true;
    }
    return changed;
}

void update(const FeatureMatrix& data, std::size_t k, const std::vector<int>& labels,
            std::vector<double>& centroids) {
    const std::size_t m = data.cols();
    std::vector<double> sum(k * m, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        const auto row = data.row(i);
        for (std::size_t v = 0; v < m; ++v)
            sum[c * m + v] += row[v];
        ++count[c];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t v = 0; v < m; ++v)
            centroids[c * m + v] = sum[c * m + v] / static_cast<double>(count[c]);
}

Run lloyd(const FeatureMatrix& data, const KmeansParams& params, std::uint64_t seed) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    const std::size_t k = params.k_clusters;
    Rng rng(seed);

    // k distinct entities via a partial Fisher-Yates shuffle
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    Run run;
    run.centroids.resize(k * m);
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t j = c + static_cast<std::size_t>(uniform_index(rng, n - c));
        std::swap(pick[c], pick[j]);
        const auto row = data.row(pick[c]);
        std::copy(row.begin(), row.end(), run.centroids.begin() + static_cast<std::ptrdiff_t>(c * m));
    }

    run.labels.assign(n, -1);
    std::vector<double> dist(n, 0.0);
    for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
        const bool changed = assign(data, k, run.centroids, run.labels, dist);
        run.objective = std::accumulate(dist.begin(), dist.end(), 0.0);
        run.trace.push_back(run.objective);
        run.iterations = iter + 1;
        if (!changed)
            break;
        update(data, k, run.labels, run.centroids);
    }
    return run;
}

}  // namespace

KmeansResult kmeans(const FeatureMatrix& data, const KmeansParams& params) {
    if (params.k_clusters == 0 || params.k_clusters > data.rows())
        throw std::invalid_argument("k-means needs 1 <= K <= n, got K = " + std::to_string(params.k_clusters));
    if (params.restarts == 0 || params.max_iters == 0)
        throw std::invalid_argument("k-means restarts and max_iters must be positive");

    Run best;
    for (std::size_t r = 0; r < params.restarts; ++r) {
        Run run = lloyd(data, params, params.restarts == 1 ? params.seed : derive_seed(params.seed, r));
        if (run.objective < best.objective)
            best = std::move(run);
    }
    KmeansResult out;
    out.clustering = canonicalize(best.labels);
    out.centroids = std::move(best.centroids);
    out.objective = best.objective;
    out.iterations = best.iterations;
    out.objective_trace = std::move(best.trace);
    return out;
}

}  // namespace rnnclust
