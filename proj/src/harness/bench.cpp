#include "rnnclust/harness/bench.hpp"

#include "rnnclust/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

namespace rnnclust::harness {

Summary summarize(const std::vector<double>& values) {
    Summary s;
    s.count = values.size();
    if (values.empty())
        return s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.max = *std::max_element(values.begin(), values.end());
    s.min = *std::min_element(values.begin(), values.end());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

BenchResult bench(const DataSet& input, const BenchSpec& spec) {
    const DataSet data = input.standardization ? input : standardize(input);
    BenchResult result;
    result.dataset = data.name;
    result.synthetic = data.synthetic;
    result.params = spec.params;
    result.seconds.reserve(spec.runs);

    const bool needs_index = spec.params.algorithm == Algorithm::isdbscan || spec.params.algorithm == Algorithm::dbscrn;
    for (std::size_t r = 0; r < spec.runs; ++r) {
        const auto start = std::chrono::steady_clock::now();
        std::optional<NeighborIndex> index;
        if (needs_index)
            index = build_index(data.matrix, spec.params.k, spec.backend);
        const Clustering c = run_algorithm(data.matrix, index ? &*index : nullptr, spec.params,
                                           run_seed(spec.base_seed, r));
        if (spec.include_dbcv)
            static_cast<void>(dbcv(data.matrix, c));
        const auto stop = std::chrono::steady_clock::now();
        result.seconds.push_back(std::chrono::duration<double>(stop - start).count());
    }
    result.timing = summarize(result.seconds);
    return result;
}

}  // namespace rnnclust::harness
