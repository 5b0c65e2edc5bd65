#pragma once

#include "rnnclust/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rnnclust::harness {

enum class SyntheticKind { blobs, two_moons, nested_rings };

SyntheticKind parse_synthetic_kind(const std::string& name);
std::string to_string(SyntheticKind kind);

/// Generator settings. Only the fields of the selected kind are read.
struct SyntheticParams {
    // blobs: Gaussian clusters with centers evenly spaced on a circle of radius `radius`
    std::vector<std::size_t> blob_sizes{20, 20};
    double spread = 0.05;
    double radius = 1.0;

    // two_moons: two interleaved half circles; the dense moon has `dense_points` entities,
    // the sparse one dense_points / density_ratio, spread evenly along the same arc length
    std::size_t dense_points = 280;
    double density_ratio = 3.0;

    // nested_rings: concentric rings with the given radii and entity counts
    std::vector<double> ring_radii{0.3, 1.0};
    std::vector<std::size_t> ring_points{100, 300};

    // moons and rings: Gaussian jitter added to both coordinates
    double jitter = 0.02;
};

/// Labeled 2-D data, fully determined by (kind, params, seed). The returned set is marked
/// synthetic so reports can flag it as an approximation of a published benchmark.
DataSet generate_synthetic(SyntheticKind kind, const SyntheticParams& params, std::uint64_t seed);

}  // namespace rnnclust::harness
