#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"
#include "rnnclust/neighbors.hpp"
#include "rnnclust/validation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rnnclust::harness {

enum class Algorithm { dbscan, isdbscan, dbscrn, kmeans };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm algorithm);
/// True when the algorithm's output does not depend on a seed.
bool is_deterministic(Algorithm algorithm);

/// One setting of an algorithm's parameters. Unused fields stay zero.
struct ParamPoint {
    Algorithm algorithm = Algorithm::dbscrn;
    std::size_t k = 0;            // isdbscan, dbscrn
    double epsilon = 0.0;         // dbscan, squared standardized distance
    std::size_t min_pts = 0;      // dbscan
    std::size_t k_clusters = 0;   // kmeans

    /// Selection tie-break order: epsilon then MinPts for DBSCAN, k otherwise.
    friend bool operator<(const ParamPoint& a, const ParamPoint& b);
    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

std::string describe(const ParamPoint& p);

/// Runs one algorithm on standardized data. `index` must cover k for the RNN-based
/// algorithms; DBSCAN uses it when present and falls back to kd-tree range queries.
/// k-means performs a single Lloyd run from `seed`.
Clustering run_algorithm(const FeatureMatrix& data, const NeighborIndex* index, const ParamPoint& p,
                         std::uint64_t seed);

struct SweepSpec {
    Algorithm algorithm = Algorithm::dbscrn;

    // DBSCAN: MinPts range and an epsilon grid from the minimum positive to the maximum
    // pairwise squared distance unless overridden
    std::size_t min_pts_lo = 3;
    std::size_t min_pts_hi = 20;
    double eps_step = 0.1;
    std::optional<double> eps_lo;
    std::optional<double> eps_hi;

    // ISDBSCAN / DBSCRN
    std::size_t k_lo = 3;
    std::size_t k_hi = 30;

    // k-means; 0 takes the number of true classes
    std::size_t k_clusters = 0;

    std::size_t runs = 100;  // per grid point, ignored for deterministic algorithms
    std::uint64_t base_seed = 1;
    unsigned threads = 1;
    bool compute_dbcv = true;
    NoiseHandling noise = NoiseHandling::singletons;
    NeighborBackend backend = NeighborBackend::spatial;
};

/// The grids used in the published protocol: DBSCAN MinPts 3..20 with epsilon step 0.1,
/// ISDBSCAN k 5..25, DBSCRN k 3..30, k-means at the true class count.
SweepSpec default_sweep(Algorithm algorithm);

/// Expands the spec into grid points for a standardized data set, dropping k values that
/// the data cannot support (k >= n). Throws if nothing is left.
std::vector<ParamPoint> build_grid(const SweepSpec& spec, const DataSet& standardized);

struct SweepRecord {
    std::size_t grid_index = 0;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::size_t clusters = 0;
    std::size_t noise = 0;
    double dbcv = 0.0;
    std::optional<double> ari;
    double seconds = 0.0;  // clustering plus DBCV
};

struct SweepResult {
    std::string dataset;
    bool synthetic = false;
    Algorithm algorithm = Algorithm::dbscrn;
    std::size_t entities = 0;
    std::size_t features = 0;
    std::size_t runs = 1;
    std::uint64_t base_seed = 0;
    std::vector<ParamPoint> grid;
    std::vector<SweepRecord> records;  // ordered by (grid_index, run)

    const SweepRecord& at(std::size_t grid_index, std::size_t run) const {
        return records[grid_index * runs + run];
    }
};

/// Evaluates every grid point `runs` times (once for deterministic algorithms). The data
/// set is range-standardized here unless it already carries a standardization report.
/// Records are keyed by (grid point, run), so the worker count never changes the output
/// apart from timings.
SweepResult run_sweep(const DataSet& data, const SweepSpec& spec);

/// Seed of replicate `run`; the same replicate seed is used at every grid point.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run);

}  // namespace rnnclust::harness
