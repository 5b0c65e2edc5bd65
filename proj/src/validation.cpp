#include "rnnclust/validation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace rnnclust {

ContingencyTable contingency_table(std::span<const int> predicted, std::span<const int> truth,
                                   NoiseHandling noise) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("contingency table: " + std::to_string(predicted.size()) +
                                    " predictions vs " + std::to_string(truth.size()) + " labels");
    if (truth.empty())
        throw std::invalid_argument("contingency table: no entities");

    const std::size_t n = predicted.size();
    std::map<int, std::size_t> row_of;
    std::map<int, std::size_t> col_of;
    for (int t : truth)
        col_of.try_emplace(t, 0);
    std::size_t c = 0;
    for (auto& [label, idx] : col_of)
        idx = c++;
    for (int p : predicted)
        if (p != kNoise)
            row_of.try_emplace(p, 0);
    std::size_t r = 0;
    for (auto& [label, idx] : row_of)
        idx = r++;

    std::vector<std::size_t> row(n);
    std::size_t shared_noise_row = r;
    bool any_noise = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i] != kNoise) {
            row[i] = row_of[predicted[i]];
        } else if (noise == NoiseHandling::singletons) {
            row[i] = r++;
        } else {
            row[i] = shared_noise_row;
            any_noise = true;
        }
    }
    if (noise == NoiseHandling::one_cluster && any_noise)
        ++r;

    ContingencyTable t;
    t.rows = r;
    t.cols = col_of.size();
    t.total = n;
    t.counts.assign(t.rows * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = col_of[truth[i]];
        ++t.counts[row[i] * t.cols + j];
        ++t.row_sums[row[i]];
        ++t.col_sums[j];
    }
    return t;
}

namespace {
double choose2(std::size_t x) {
    return 0.5 * static_cast<double>(x) * (static_cast<double>(x) - 1.0);
}
}  // namespace

double adjusted_rand_index(const ContingencyTable& table) {
    double index = 0.0;
    for (std::size_t x : table.counts)
        index += choose2(x);
    double sum_a = 0.0;
    for (std::size_t x : table.row_sums)
        sum_a += choose2(x);
    double sum_b = 0.0;
    for (std::size_t x : table.col_sums)
        sum_b += choose2(x);
    const double pairs = choose2(table.total);
    const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    // only reachable when both partitions are all-singletons or both are one block
    if (max_index == expected)
        return 1.0;
    return (index - expected) / (max_index - expected);
}

double adjusted_rand_index(const Clustering& predicted, std::span<const int> truth, NoiseHandling noise) {
    return adjusted_rand_index(contingency_table(predicted.assignment, truth, noise));
}

// ---------------------------------------------------------------------------
// DBCV

namespace {

struct ClusterGeometry {
    std::vector<std::size_t> members;
    std::vector<double> dist;   // s * s plain Euclidean distances
    std::vector<double> core;   // all-points core distance per member
    std::vector<bool> internal; // degree > 1 in the MST (all true on fallback)
    double sparseness = 0.0;
};

// Edges are ordered by (weight, lower endpoint, higher endpoint) so the minimum spanning
// tree is unique even when mutual reachability values tie.
struct EdgeKey {
    double w;
    std::size_t a, b;
    friend bool operator<(const EdgeKey& x, const EdgeKey& y) {
        return std::tie(x.w, x.a, x.b) < std::tie(y.w, y.a, y.b);
    }
};

EdgeKey edge_key(double w, std::size_t u, std::size_t v) {
    return {w, std::min(u, v), std::max(u, v)};
}

// x^e for the integer feature count; much cheaper than std::pow in the O(n^2) loop
double ipow(double x, std::size_t e) {
    double result = 1.0;
    while (e > 0) {
        if (e & 1)
            result *= x;
        x *= x;
        e >>= 1;
    }
    return result;
}

ClusterGeometry analyze(const FeatureMatrix& data, std::vector<std::size_t> members) {
    ClusterGeometry g;
    g.members = std::move(members);
    const std::size_t s = g.members.size();
    const std::size_t m = data.cols();
    const double dims = static_cast<double>(m);

    g.dist.assign(s * s, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
        const double* ya = data.row(g.members[a]).data();
        for (std::size_t b = a + 1; b < s; ++b) {
            const double d = std::sqrt(squared_euclidean_unchecked(ya, data.row(g.members[b]).data(), m));
            g.dist[a * s + b] = d;
            g.dist[b * s + a] = d;
        }
    }

    // core(o) = (mean_j (1/d_oj)^m)^(-1/m), rescaled by the nearest distance to avoid overflow
    g.core.assign(s, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < s; ++b)
            if (b != a)
                nearest = std::min(nearest, g.dist[a * s + b]);
        if (nearest == 0.0)
            continue;  // a duplicate point makes the density infinite
        double acc = 0.0;
        for (std::size_t b = 0; b < s; ++b)
            if (b != a)
                acc += ipow(nearest / g.dist[a * s + b], m);
        g.core[a] = nearest * std::pow(acc / static_cast<double>(s - 1), -1.0 / dims);
    }

    auto mreach = [&](std::size_t a, std::size_t b) {
        return std::max({g.core[a], g.core[b], g.dist[a * s + b]});
    };

    // Prim on the complete mutual-reachability graph
    std::vector<bool> in_tree(s, false);
    std::vector<EdgeKey> best(s, EdgeKey{std::numeric_limits<double>::infinity(), 0, 0});
    std::vector<std::size_t> parent(s, 0);
    std::vector<std::size_t> degree(s, 0);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(s - 1);
    in_tree[0] = true;
    for (std::size_t b = 1; b < s; ++b) {
        best[b] = edge_key(mreach(0, b), 0, b);
        parent[b] = 0;
    }
    for (std::size_t step = 1; step < s; ++step) {
        std::size_t pick = s;
        for (std::size_t b = 0; b < s; ++b)
            if (!in_tree[b] && (pick == s || best[b] < best[pick]))
                pick = b;
        in_tree[pick] = true;
        edges.emplace_back(parent[pick], pick);
        ++degree[parent[pick]];
        ++degree[pick];
        for (std::size_t b = 0; b < s; ++b) {
            if (in_tree[b])
                continue;
            const EdgeKey cand = edge_key(mreach(pick, b), pick, b);
            if (cand < best[b]) {
                best[b] = cand;
                parent[b] = pick;
            }
        }
    }

    g.internal.assign(s, false);
    bool any_internal = false;
    for (std::size_t a = 0; a < s; ++a) {
        g.internal[a] = degree[a] > 1;
        any_internal |= g.internal[a];
    }
    if (!any_internal)
        g.internal.assign(s, true);

    double sparse_internal = -1.0;
    double sparse_all = 0.0;
    for (const auto& [u, v] : edges) {
        const double w = mreach(u, v);
        sparse_all = std::max(sparse_all, w);
        if (degree[u] > 1 && degree[v] > 1)
            sparse_internal = std::max(sparse_internal, w);
    }
    g.sparseness = sparse_internal >= 0.0 ? sparse_internal : sparse_all;
    return g;
}

}  // namespace

DbcvReport dbcv(const FeatureMatrix& data, const Clustering& clustering) {
    if (clustering.size() != data.rows())
        throw std::invalid_argument("dbcv: clustering size does not match data");

    DbcvReport report;
    report.clusters.resize(clustering.num_clusters);
    auto groups = members(clustering);
    std::vector<std::size_t> valid;
    for (std::size_t c = 0; c < groups.size(); ++c) {
        report.clusters[c].size = groups[c].size();
        if (groups[c].size() >= 2)
            valid.push_back(c);
    }
    if (valid.size() < 2)
        return report;

    std::vector<ClusterGeometry> geo;
    geo.reserve(valid.size());
    for (std::size_t c : valid)
        geo.push_back(analyze(data, std::move(groups[c])));

    const std::size_t m = data.cols();
    const std::size_t q = valid.size();
    std::vector<double> sep(q, std::numeric_limits<double>::infinity());
    for (std::size_t x = 0; x < q; ++x) {
        for (std::size_t y = x + 1; y < q; ++y) {
            double dspc = std::numeric_limits<double>::infinity();
            const auto& gx = geo[x];
            const auto& gy = geo[y];
            for (std::size_t a = 0; a < gx.members.size(); ++a) {
                if (!gx.internal[a])
                    continue;
                const double* ya = data.row(gx.members[a]).data();
                for (std::size_t b = 0; b < gy.members.size(); ++b) {
                    if (!gy.internal[b])
                        continue;
                    const double d = std::sqrt(squared_euclidean_unchecked(ya, data.row(gy.members[b]).data(), m));
                    dspc = std::min(dspc, std::max({gx.core[a], gy.core[b], d}));
                }
            }
            sep[x] = std::min(sep[x], dspc);
            sep[y] = std::min(sep[y], dspc);
        }
    }

    const double n = static_cast<double>(data.rows());
    for (std::size_t x = 0; x < q; ++x) {
        auto& out = report.clusters[valid[x]];
        out.sparseness = geo[x].sparseness;
        out.separation = sep[x];
        const double denom = std::max(out.separation, out.sparseness);
        out.validity = denom > 0.0 ? (out.separation - out.sparseness) / denom : 0.0;
        report.score += static_cast<double>(out.size) / n * out.validity;
    }
    return report;
}

}  // namespace rnnclust
