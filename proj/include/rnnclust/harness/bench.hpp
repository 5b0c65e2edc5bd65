#pragma once

#include "rnnclust/core.hpp"
#include "rnnclust/harness/sweep.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rnnclust::harness {

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation, 0 for a single value
    double max = 0.0;
    double min = 0.0;
};

Summary summarize(const std::vector<double>& values);

struct BenchSpec {
    ParamPoint params;
    std::size_t runs = 100;
    std::uint64_t base_seed = 1;
    NeighborBackend backend = NeighborBackend::spatial;
    bool include_dbcv = true;
};

struct BenchResult {
    std::string dataset;
    bool synthetic = false;
    ParamPoint params;
    std::vector<double> seconds;  // one sample per run
    Summary timing;
};

/// Wall-clock time of complete runs on standardized data: neighbor index construction,
/// clustering and DBCV scoring. Loading and standardizing happen once, untimed. Runs are
/// sequential, without warmup.
BenchResult bench(const DataSet& data, const BenchSpec& spec);

}  // namespace rnnclust::harness
