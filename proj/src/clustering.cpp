#include "rnnclust/clustering.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace rnnclust {

std::size_t Clustering::noise_count() const noexcept {
    return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), kNoise));
}

Clustering canonicalize(std::span<const int> raw) {
    Clustering out;
    out.assignment.assign(raw.size(), kNoise);
    std::unordered_map<int, int> remap;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const int id = raw[i];
        if (id == kNoise)
            continue;
        if (id < 0)
            throw std::invalid_argument("cluster ids must be non-negative or kNoise");
        auto [it, inserted] = remap.try_emplace(id, static_cast<int>(remap.size()));
        out.assignment[i] = it->second;
    }
    out.num_clusters = remap.size();
    return out;
}

std::vector<std::vector<std::size_t>> members(const Clustering& c) {
    std::vector<std::vector<std::size_t>> out(c.num_clusters);
    for (std::size_t i = 0; i < c.assignment.size(); ++i)
        if (c.assignment[i] != kNoise)
            out[static_cast<std::size_t>(c.assignment[i])].push_back(i);
    return out;
}

}  // namespace rnnclust
