#pragma once

// Slow, direct reference computations used only by the tests. Nothing here calls the
// library's algorithms; each oracle re-evaluates the definitions from scratch.

#include "rnnclust/core.hpp"
#include "rnnclust/clustering.hpp"
#include "rnnclust/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using rnnclust::FeatureMatrix;

inline double sqdist(const FeatureMatrix& d, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t v = 0; v < d.cols(); ++v)
        s += (d(i, v) - d(j, v)) * (d(i, v) - d(j, v));
    return s;
}

inline FeatureMatrix line(std::vector<double> xs) {
    const std::size_t n = xs.size();
    return FeatureMatrix(n, 1, std::move(xs));
}

/// Random data; with `lattice` the coordinates are small integers so distance ties and
/// duplicate points are common.
inline FeatureMatrix random_matrix(rnnclust::Rng& rng, std::size_t n, std::size_t m, bool lattice) {
    std::vector<double> v(n * m);
    for (double& x : v)
        x = lattice ? static_cast<double>(rnnclust::uniform_index(rng, 6)) : rnnclust::uniform01(rng);
    return FeatureMatrix(n, m, std::move(v));
}

/// k nearest others of i by (distance, index), computed by sorting every candidate.
inline std::vector<std::uint32_t> knn(const FeatureMatrix& d, std::size_t i, std::size_t k) {
    std::vector<std::pair<double, std::uint32_t>> all;
    for (std::size_t j = 0; j < d.rows(); ++j)
        if (j != i)
            all.push_back({sqdist(d, i, j), static_cast<std::uint32_t>(j)});
    std::sort(all.begin(), all.end());
    std::vector<std::uint32_t> out;
    for (std::size_t r = 0; r < k && r < all.size(); ++r)
        out.push_back(all[r].second);
    return out;
}

/// { j : i in knn(j, k) }, sorted.
inline std::vector<std::uint32_t> rnn(const FeatureMatrix& d, std::size_t i, std::size_t k) {
    std::vector<std::uint32_t> out;
    for (std::size_t j = 0; j < d.rows(); ++j) {
        if (j == i)
            continue;
        const auto nn = knn(d, j, k);
        if (std::find(nn.begin(), nn.end(), i) != nn.end())
            out.push_back(static_cast<std::uint32_t>(j));
    }
    return out;
}

inline double choose2(double x) { return x * (x - 1.0) / 2.0; }

/// ARI from pair agreement counts over all unordered pairs. Noise (-1) entities get
/// fresh singleton labels.
inline double ari_pairs(std::vector<int> pred, const std::vector<int>& truth) {
    int fresh = 1 << 20;
    for (int& p : pred)
        if (p < 0)
            p = fresh++;
    const std::size_t n = pred.size();
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_p = pred[i] == pred[j];
            const bool same_t = truth[i] == truth[j];
            if (same_p && same_t)
                ++n11;
            else if (same_p)
                ++n10;
            else if (same_t)
                ++n01;
            else
                ++n00;
        }
    const double denom = (n11 + n01) * (n01 + n00) + (n11 + n10) * (n10 + n00);
    if (denom == 0.0)
        return 1.0;
    return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

// ---------------------------------------------------------------------------
// DBCV by direct evaluation: naive pow for core distances, Kruskal for the MST.

struct DbcvOracle {
    std::map<int, double> sparseness;
    std::map<int, double> separation;
    std::map<int, double> validity;
    double score = 0.0;
};

inline DbcvOracle dbcv(const FeatureMatrix& d, const std::vector<int>& labels) {
    const std::size_t n = d.rows();
    const double m = static_cast<double>(d.cols());
    auto dist = [&](std::size_t a, std::size_t b) { return std::sqrt(sqdist(d, a, b)); };

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        if (labels[i] >= 0)
            groups[labels[i]].push_back(i);
    std::vector<int> valid;
    for (auto& [c, g] : groups)
        if (g.size() >= 2)
            valid.push_back(c);
    DbcvOracle out;
    if (valid.size() < 2)
        return out;

    std::vector<double> core(n, 0.0);
    for (int c : valid) {
        const auto& g = groups[c];
        for (std::size_t a : g) {
            double s = 0.0;
            for (std::size_t b : g)
                if (b != a)
                    s += std::pow(1.0 / dist(a, b), m);
            core[a] = std::pow(s / static_cast<double>(g.size() - 1), -1.0 / m);
        }
    }
    auto mreach = [&](std::size_t a, std::size_t b) { return std::max({core[a], core[b], dist(a, b)}); };

    std::map<int, std::vector<std::size_t>> internal;
    for (int c : valid) {
        const auto& g = groups[c];
        std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
        for (std::size_t x = 0; x < g.size(); ++x)
            for (std::size_t y = x + 1; y < g.size(); ++y)
                edges.push_back({mreach(g[x], g[y]), std::min(g[x], g[y]), std::max(g[x], g[y])});
        std::sort(edges.begin(), edges.end());
        std::map<std::size_t, std::size_t> parent;
        for (std::size_t a : g)
            parent[a] = a;
        auto find = [&](std::size_t a) {
            while (parent[a] != a)
                a = parent[a];
            return a;
        };
        std::vector<std::tuple<double, std::size_t, std::size_t>> tree;
        for (const auto& e : edges) {
            const std::size_t ra = find(std::get<1>(e));
            const std::size_t rb = find(std::get<2>(e));
            if (ra != rb) {
                parent[ra] = rb;
                tree.push_back(e);
            }
        }
        std::map<std::size_t, int> degree;
        for (const auto& e : tree) {
            ++degree[std::get<1>(e)];
            ++degree[std::get<2>(e)];
        }
        double sparse = -1.0;
        for (const auto& e : tree)
            if (degree[std::get<1>(e)] > 1 && degree[std::get<2>(e)] > 1)
                sparse = std::max(sparse, std::get<0>(e));
        if (sparse < 0.0)
            for (const auto& e : tree)
                sparse = std::max(sparse, std::get<0>(e));
        out.sparseness[c] = sparse;
        for (std::size_t a : g)
            if (degree[a] > 1)
                internal[c].push_back(a);
        if (internal[c].empty())
            internal[c] = g;
    }

    for (int c : valid) {
        double sep = std::numeric_limits<double>::infinity();
        for (int o : valid) {
            if (o == c)
                continue;
            for (std::size_t a : internal[c])
                for (std::size_t b : internal[o])
                    sep = std::min(sep, mreach(a, b));
        }
        out.separation[c] = sep;
        const double denom = std::max(sep, out.sparseness[c]);
        const double v = denom > 0.0 ? (sep - out.sparseness[c]) / denom : 0.0;
        out.validity[c] = v;
        out.score += static_cast<double>(groups[c].size()) / static_cast<double>(n) * v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// DBSCAN structure: core entities, core components, and border reachability.

struct DbscanOracle {
    std::vector<bool> core;
    std::vector<int> component;  // component id of each core entity, -1 otherwise
    std::vector<bool> reachable; // within epsilon of some core entity
};

inline DbscanOracle dbscan_structure(const FeatureMatrix& d, double eps, std::size_t min_pts) {
    const std::size_t n = d.rows();
    DbscanOracle o{std::vector<bool>(n), std::vector<int>(n, -1), std::vector<bool>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j)
            count += sqdist(d, i, j) <= eps;
        o.core[i] = count >= min_pts;
    }
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (!o.core[s] || o.component[s] >= 0)
            continue;
        std::vector<std::size_t> stack{s};
        o.component[s] = next;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b)
                if (o.core[b] && o.component[b] < 0 && sqdist(d, a, b) <= eps) {
                    o.component[b] = next;
                    stack.push_back(b);
                }
        }
        ++next;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n && !o.reachable[i]; ++j)
            o.reachable[i] = o.core[j] && sqdist(d, i, j) <= eps;
    return o;
}

/// True when two labelings induce the same partition (noise must match exactly).
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        return false;
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] < 0) != (b[i] < 0))
            return false;
        if (a[i] < 0)
            continue;
        auto [it1, new1] = ab.emplace(a[i], b[i]);
        auto [it2, new2] = ba.emplace(b[i], a[i]);
        if (it1->second != b[i] || it2->second != a[i])
            return false;
    }
    return true;
}

/// Two tight square blobs of `per` entities each, far apart; labels 0 and 1.
inline rnnclust::DataSet two_blobs(std::size_t per = 20, std::uint64_t seed = 7) {
    rnnclust::Rng rng(seed);
    std::vector<double> v;
    std::vector<int> labels;
    for (int b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < per; ++i) {
            v.push_back(b * 10.0 + 0.5 * rnnclust::uniform01(rng));
            v.push_back(0.5 * rnnclust::uniform01(rng));
            labels.push_back(b);
        }
    return rnnclust::make_dataset(FeatureMatrix(2 * per, 2, std::move(v)), labels, "two_blobs");
}

/// `count` evenly spaced entities on each circle of radius `r` around the given centers;
/// labels are the circle numbers. On a regular polygon the two neighbors on either side
/// are strictly nearest, so every entity shares at least four of its five nearest
/// neighbors mutually.
inline rnnclust::DataSet rings(const std::vector<std::pair<double, double>>& centers, std::size_t count = 20,
                               double r = 0.5) {
    std::vector<double> v;
    std::vector<int> labels;
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t i = 0; i < count; ++i) {
            const double a = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(count);
            v.push_back(centers[c].first + r * std::cos(a));
            v.push_back(centers[c].second + r * std::sin(a));
            labels.push_back(static_cast<int>(c));
        }
    const std::size_t n = labels.size();
    return rnnclust::make_dataset(FeatureMatrix(n, 2, std::move(v)), labels, "rings");
}

}  // namespace oracle
