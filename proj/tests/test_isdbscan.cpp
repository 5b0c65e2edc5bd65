#include "oracles.hpp"

#include "rnnclust/isdbscan.hpp"
#include "rnnclust/neighbors.hpp"

#include <doctest.h>

using namespace rnnclust;

namespace {

// Closure of influence-space expansion by repeated scanning, straight from the definition.
std::set<EntityId> closure(const FeatureMatrix& d, EntityId start, std::size_t k) {
    auto is = [&](EntityId i) {
        std::vector<EntityId> out;
        const auto nn = oracle::knn(d, i, k);
        const auto rn = oracle::rnn(d, i, k);
        for (auto j : nn)
            if (std::find(rn.begin(), rn.end(), j) != rn.end())
                out.push_back(j);
        return out;
    };
    std::set<EntityId> got;
    if (3 * is(start).size() <= 2 * k)
        return got;
    got.insert(start);
    bool grew = true;
    std::set<EntityId> expanded;
    while (grew) {
        grew = false;
        for (EntityId e : std::set<EntityId>(got)) {
            if (expanded.count(e))
                continue;
            expanded.insert(e);
            const auto s = is(e);
            if (3 * s.size() <= 2 * k)
                continue;
            for (auto j : s)
                grew |= got.insert(j).second;
        }
    }
    return got;
}

}  // namespace

TEST_CASE("make_cluster on two entities, k = 1") {
    const auto d = oracle::line({0, 1});
    const auto idx = build_index(d, 1);
    const InfluenceSpaces spaces(idx, 1);
    CHECK(spaces.dense(0));
    std::vector<bool> visited(2, false);
    const auto got = make_cluster(spaces, 0, visited);
    CHECK(std::set<EntityId>(got.begin(), got.end()) == std::set<EntityId>{0, 1});
    CHECK(got.front() == 0);
    CHECK(visited[0]);
    CHECK(visited[1]);
}

TEST_CASE("make_cluster with a failing start returns nothing") {
    const auto d = oracle::line({0, 1, 2, 4, 8});
    const auto idx = build_index(d, 2);
    const InfluenceSpaces spaces(idx, 2);
    std::vector<bool> visited(5, false);
    REQUIRE_FALSE(spaces.dense(4));
    CHECK(make_cluster(spaces, 4, visited).empty());
}

TEST_CASE("make_cluster agrees with the closure oracle on random blobs") {
    const auto data = oracle::two_blobs(20);
    const auto idx = build_index(data.matrix, 5);
    const InfluenceSpaces spaces(idx, 5);
    for (EntityId start = 0; start < 40; ++start) {
        std::vector<bool> visited(40, false);
        const auto got = make_cluster(spaces, start, visited);
        CHECK(std::set<EntityId>(got.begin(), got.end()) == closure(data.matrix, start, 5));
    }
}

TEST_CASE("make_cluster on a 20-point ring collects the ring") {
    const auto data = oracle::rings({{0, 0}, {10, 0}});
    const auto idx = build_index(data.matrix, 5);
    const InfluenceSpaces spaces(idx, 5);
    for (EntityId i = 0; i < 40; ++i)
        CHECK(spaces.of(i).size() >= 4);
    std::vector<bool> visited(40, false);
    const auto got = make_cluster(spaces, 3, visited);
    CHECK(got.size() == 20);
    for (EntityId e : got)
        CHECK(e < 20);
}

TEST_CASE("two separated rings") {
    const auto data = oracle::rings({{0, 0}, {10, 0}});
    const auto idx = build_index(data.matrix, 5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = isdbscan(idx, IsdbscanParams{5, seed});
        CHECK(c.num_clusters == 2);
        CHECK(c.noise_count() == 0);
        CHECK(oracle::same_partition(c.assignment, *data.true_labels));
    }
}

TEST_CASE("n <= k gives all noise") {
    const auto d = oracle::line({0, 1, 2});
    const auto idx = build_index(d, 2);
    for (std::size_t k : {3u, 4u}) {
        const auto c = isdbscan(idx, IsdbscanParams{k, 1});
        CHECK(c.num_clusters == 0);
        CHECK(c.noise_count() == 3);
    }
    CHECK_THROWS_AS(isdbscan(idx, IsdbscanParams{0, 1}), std::invalid_argument);
}

TEST_CASE("property: partition invariants and determinism on 50 data sets") {
    Rng rng(404);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + uniform_index(rng, 150);
        const auto d = oracle::random_matrix(rng, n, 1 + t % 4, t % 3 == 0);
        const std::size_t k = 1 + uniform_index(rng, 12);
        const std::size_t k_max = std::max<std::size_t>(1, std::min(k, n > 1 ? n - 1 : 1));
        CAPTURE(t);
        CAPTURE(n);
        CAPTURE(k);
        if (n == 1) {
            // no index can be built; nothing else to check on a single entity
            continue;
        }
        const auto idx = build_index(d, k_max);
        const auto c = isdbscan(idx, IsdbscanParams{k, static_cast<std::uint64_t>(t)});
        REQUIRE(c.size() == n);
        if (n <= k) {
            CHECK(c.noise_count() == n);
            continue;
        }
        const auto groups = members(c);
        std::size_t covered = c.noise_count();
        for (const auto& g : groups) {
            CHECK(g.size() > k);
            covered += g.size();
        }
        CHECK(covered == n);
        CHECK(c == isdbscan(idx, IsdbscanParams{k, static_cast<std::uint64_t>(t)}));

        // influence spaces are symmetric, so two dense entities in each other's spaces
        // are always collected by the same expansion
        const InfluenceSpaces spaces(idx, k);
        for (EntityId i = 0; i < n; ++i) {
            if (!spaces.dense(i))
                continue;
            for (EntityId j : spaces.of(i))
                if (spaces.dense(j))
                    CHECK(c.assignment[j] == c.assignment[i]);
        }
    }
}
