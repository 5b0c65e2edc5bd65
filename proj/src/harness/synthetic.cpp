#include "rnnclust/harness/synthetic.hpp"

#include "rnnclust/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rnnclust::harness {

SyntheticKind parse_synthetic_kind(const std::string& name) {
    if (name == "blobs")
        return SyntheticKind::blobs;
    if (name == "two_moons")
        return SyntheticKind::two_moons;
    if (name == "nested_rings")
        return SyntheticKind::nested_rings;
    throw std::invalid_argument("unknown synthetic kind '" + name + "'");
}

std::string to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::blobs: return "blobs";
        case SyntheticKind::two_moons: return "two_moons";
        case SyntheticKind::nested_rings: return "nested_rings";
    }
    return "unknown";
}

namespace {

struct Builder {
    std::vector<double> values;
    std::vector<int> labels;
    void add(double x, double y, int label) {
        values.push_back(x);
        values.push_back(y);
        labels.push_back(label);
    }
};

DataSet finish(Builder&& b, std::string name) {
    const std::size_t n = b.labels.size();
    DataSet ds = make_dataset(FeatureMatrix(n, 2, std::move(b.values)), std::move(b.labels), std::move(name));
    ds.synthetic = true;
    return ds;
}

}  // namespace

DataSet generate_synthetic(SyntheticKind kind, const SyntheticParams& p, std::uint64_t seed) {
    Rng rng(seed);
    Builder b;
    constexpr double pi = std::numbers::pi;

    switch (kind) {
        case SyntheticKind::blobs: {
            if (p.blob_sizes.empty() || !(p.spread >= 0.0) || !(p.radius >= 0.0))
                throw std::invalid_argument("blobs need at least one center, spread >= 0 and radius >= 0");
            const std::size_t centers = p.blob_sizes.size();
            for (std::size_t c = 0; c < centers; ++c) {
                if (p.blob_sizes[c] == 0)
                    throw std::invalid_argument("blob sizes must be positive");
                const double angle = 2.0 * pi * static_cast<double>(c) / static_cast<double>(centers);
                const double cx = centers == 1 ? 0.0 : p.radius * std::cos(angle);
                const double cy = centers == 1 ? 0.0 : p.radius * std::sin(angle);
                for (std::size_t i = 0; i < p.blob_sizes[c]; ++i) {
                    const double x = cx + p.spread * standard_normal(rng);
                    const double y = cy + p.spread * standard_normal(rng);
                    b.add(x, y, static_cast<int>(c));
                }
            }
            return finish(std::move(b), "blobs");
        }
        case SyntheticKind::two_moons: {
            if (p.dense_points < 2 || !(p.density_ratio >= 1.0) || !(p.jitter >= 0.0))
                throw std::invalid_argument("two_moons need dense_points >= 2, density_ratio >= 1, jitter >= 0");
            const auto sparse = static_cast<std::size_t>(
                std::lround(static_cast<double>(p.dense_points) / p.density_ratio));
            if (sparse < 2)
                throw std::invalid_argument("two_moons sparse moon would have fewer than 2 entities");
            // upper moon: center (0, 0); lower moon: center (1, 0.5), both radius 1
            for (std::size_t i = 0; i < p.dense_points; ++i) {
                const double t = pi * static_cast<double>(i) / static_cast<double>(p.dense_points - 1);
                b.add(std::cos(t) + p.jitter * standard_normal(rng), std::sin(t) + p.jitter * standard_normal(rng), 0);
            }
            for (std::size_t i = 0; i < sparse; ++i) {
                const double t = pi + pi * static_cast<double>(i) / static_cast<double>(sparse - 1);
                b.add(1.0 + std::cos(t) + p.jitter * standard_normal(rng),
                      0.5 + std::sin(t) + p.jitter * standard_normal(rng), 1);
            }
            return finish(std::move(b), "two_moons");
        }
        case SyntheticKind::nested_rings: {
            if (p.ring_radii.empty() || p.ring_radii.size() != p.ring_points.size() || !(p.jitter >= 0.0))
                throw std::invalid_argument("nested_rings need one entity count per radius and jitter >= 0");
            for (std::size_t r = 0; r < p.ring_radii.size(); ++r) {
                if (p.ring_points[r] == 0 || !(p.ring_radii[r] > 0.0))
                    throw std::invalid_argument("ring radii and entity counts must be positive");
                for (std::size_t i = 0; i < p.ring_points[r]; ++i) {
                    const double t = 2.0 * pi * static_cast<double>(i) / static_cast<double>(p.ring_points[r]);
                    b.add(p.ring_radii[r] * std::cos(t) + p.jitter * standard_normal(rng),
                          p.ring_radii[r] * std::sin(t) + p.jitter * standard_normal(rng), static_cast<int>(r));
                }
            }
            return finish(std::move(b), "nested_rings");
        }
    }
    throw std::invalid_argument("unknown synthetic kind");
}

}  // namespace rnnclust::harness
