#include "rnnclust/harness/sweep.hpp"

#include "rnnclust/dbscan.hpp"
#include "rnnclust/dbscrn.hpp"
#include "rnnclust/isdbscan.hpp"
#include "rnnclust/kmeans.hpp"
#include "rnnclust/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace rnnclust::harness {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "dbscan")
        return Algorithm::dbscan;
    if (name == "isdbscan")
        return Algorithm::isdbscan;
    if (name == "dbscrn")
        return Algorithm::dbscrn;
    if (name == "kmeans")
        return Algorithm::kmeans;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::dbscan: return "dbscan";
        case Algorithm::isdbscan: return "isdbscan";
        case Algorithm::dbscrn: return "dbscrn";
        case Algorithm::kmeans: return "kmeans";
    }
    return "unknown";
}

bool is_deterministic(Algorithm algorithm) {
    return algorithm == Algorithm::dbscrn;
}

bool operator<(const ParamPoint& a, const ParamPoint& b) {
    return std::tie(a.algorithm, a.epsilon, a.min_pts, a.k, a.k_clusters) <
           std::tie(b.algorithm, b.epsilon, b.min_pts, b.k, b.k_clusters);
}

std::string describe(const ParamPoint& p) {
    char buf[96];
    switch (p.algorithm) {
        case Algorithm::dbscan:
            std::snprintf(buf, sizeof buf, "eps=%.6g MinPts=%zu", p.epsilon, p.min_pts);
            break;
        case Algorithm::kmeans:
            std::snprintf(buf, sizeof buf, "K=%zu", p.k_clusters);
            break;
        default:
            std::snprintf(buf, sizeof buf, "k=%zu", p.k);
            break;
    }
    return buf;
}

Clustering run_algorithm(const FeatureMatrix& data, const NeighborIndex* index, const ParamPoint& p,
                         std::uint64_t seed) {
    switch (p.algorithm) {
        case Algorithm::dbscan:
            return dbscan(data, index, DbscanParams{p.epsilon, p.min_pts}, seed);
        case Algorithm::isdbscan:
            if (index == nullptr)
                throw std::invalid_argument("ISDBSCAN needs a neighbor index");
            return isdbscan(*index, IsdbscanParams{p.k, seed});
        case Algorithm::dbscrn:
            if (index == nullptr)
                throw std::invalid_argument("DBSCRN needs a neighbor index");
            return dbscrn(data, *index, DbscrnParams{p.k});
        case Algorithm::kmeans:
            return kmeans(data, KmeansParams{p.k_clusters, 1, 300, seed}).clustering;
    }
    throw std::invalid_argument("unknown algorithm");
}

SweepSpec default_sweep(Algorithm algorithm) {
    SweepSpec spec;
    spec.algorithm = algorithm;
    if (algorithm == Algorithm::isdbscan) {
        spec.k_lo = 5;
        spec.k_hi = 25;
    }
    if (is_deterministic(algorithm))
        spec.runs = 1;
    return spec;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run) {
    return derive_seed(base_seed, run);
}

std::vector<ParamPoint> build_grid(const SweepSpec& spec, const DataSet& data) {
    const std::size_t n = data.size();
    std::vector<ParamPoint> grid;
    switch (spec.algorithm) {
        case Algorithm::dbscan: {
            if (!(spec.eps_step > 0.0))
                throw std::invalid_argument("epsilon step must be positive");
            double lo = 0.0;
            double hi = 0.0;
            if (!spec.eps_lo || !spec.eps_hi) {
                const auto extrema = pairwise_distance_extrema(data.matrix);
                lo = extrema.min_positive;
                hi = extrema.max;
            }
            lo = spec.eps_lo.value_or(lo);
            hi = spec.eps_hi.value_or(hi);
            std::vector<double> eps;
            for (std::size_t i = 0;; ++i) {
                const double e = lo + static_cast<double>(i) * spec.eps_step;
                if (e > hi + 1e-12)
                    break;
                eps.push_back(e);
            }
            for (double e : eps)
                for (std::size_t mp = spec.min_pts_lo; mp <= spec.min_pts_hi; ++mp)
                    grid.push_back({Algorithm::dbscan, 0, e, mp, 0});
            break;
        }
        case Algorithm::isdbscan:
        case Algorithm::dbscrn:
            for (std::size_t k = std::max<std::size_t>(1, spec.k_lo); k <= spec.k_hi && k < n; ++k)
                grid.push_back({spec.algorithm, k, 0.0, 0, 0});
            break;
        case Algorithm::kmeans: {
            std::size_t kc = spec.k_clusters;
            if (kc == 0) {
                if (!data.true_labels)
                    throw std::invalid_argument("k-means sweep needs K or ground-truth labels");
                kc = std::set<int>(data.true_labels->begin(), data.true_labels->end()).size();
            }
            if (kc >= 1 && kc <= n)
                grid.push_back({Algorithm::kmeans, 0, 0.0, 0, kc});
            break;
        }
    }
    if (grid.empty())
        throw std::invalid_argument("parameter grid for " + to_string(spec.algorithm) + " on '" + data.name +
                                    "' is empty after clamping to n = " + std::to_string(n));
    return grid;
}

SweepResult run_sweep(const DataSet& input, const SweepSpec& spec) {
    const DataSet data = input.standardization ? input : standardize(input);
    const auto grid = build_grid(spec, data);
    const std::size_t n = data.size();
    const std::size_t runs = is_deterministic(spec.algorithm) ? 1 : std::max<std::size_t>(1, spec.runs);

    // One shared index serves the whole grid.
    std::optional<NeighborIndex> index;
    if (spec.algorithm == Algorithm::isdbscan || spec.algorithm == Algorithm::dbscrn) {
        std::size_t k_max = 0;
        for (const auto& p : grid)
            k_max = std::max(k_max, p.k);
        index = build_index(data.matrix, k_max, spec.backend, spec.threads);
    } else if (spec.algorithm == Algorithm::dbscan && n >= 2 && n <= 5000) {
        index = build_index(data.matrix, n - 1, spec.backend, spec.threads);
    }

    SweepResult result;
    result.dataset = data.name;
    result.synthetic = data.synthetic;
    result.algorithm = spec.algorithm;
    result.entities = n;
    result.features = data.dims();
    result.runs = runs;
    result.base_seed = spec.base_seed;
    result.grid = grid;
    result.records.resize(grid.size() * runs);

    const std::size_t tasks = result.records.size();
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto evaluate = [&](std::size_t t) {
        const std::size_t g = t / runs;
        const std::size_t r = t % runs;
        SweepRecord& rec = result.records[t];
        rec.grid_index = g;
        rec.run = r;
        rec.seed = run_seed(spec.base_seed, r);
        const auto start = std::chrono::steady_clock::now();
        const Clustering c = run_algorithm(data.matrix, index ? &*index : nullptr, grid[g], rec.seed);
        if (spec.compute_dbcv)
            rec.dbcv = dbcv(data.matrix, c).score;
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rec.clusters = c.num_clusters;
        rec.noise = c.noise_count();
        if (data.true_labels)
            rec.ari = adjusted_rand_index(c, *data.true_labels, spec.noise);
    };
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            try {
                evaluate(t);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = tasks;
            }
        }
    };
    const unsigned workers = std::clamp<unsigned>(spec.threads, 1, static_cast<unsigned>(std::max<std::size_t>(1, tasks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
    return result;
}

}  // namespace rnnclust::harness
