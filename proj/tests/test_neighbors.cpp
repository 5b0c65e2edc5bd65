#include "oracles.hpp"

#include "rnnclust/neighbors.hpp"

#include <doctest.h>

using namespace rnnclust;

namespace {

std::vector<EntityId> vec(std::span<const EntityId> s) {
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("two entities list each other") {
    const auto d = oracle::line({0, 5});
    const auto idx = build_index(d, 1);
    CHECK(knn(idx, 0, 1) == std::vector<EntityId>{1});
    CHECK(rnn(idx, 0, 1) == std::vector<EntityId>{1});
    CHECK(influence_space(idx, 0, 1) == std::vector<EntityId>{1});
    CHECK(influence_space(idx, 1, 1) == std::vector<EntityId>{0});
}

TEST_CASE("1-D {0,1,2,4,8}") {
    const auto d = oracle::line({0, 1, 2, 4, 8});
    for (auto backend : {NeighborBackend::brute, NeighborBackend::spatial}) {
        const auto idx = build_index(d, 2, backend);
        CHECK(knn(idx, 2, 2) == std::vector<EntityId>{1, 0});
        CHECK(knn(idx, 1, 1) == std::vector<EntityId>{0});
        CHECK(rnn(idx, 1, 1) == std::vector<EntityId>{0, 2});
        CHECK(rnn(idx, 4, 1).empty());
        CHECK(influence_space(idx, 1, 1) == std::vector<EntityId>{0});
        CHECK(influence_space(idx, 4, 1).empty());
        const auto dist = idx.knn_distances(2, 2);
        CHECK(dist[0] == 1.0);
        CHECK(dist[1] == 4.0);
    }
}

TEST_CASE("index argument checks") {
    const auto d = oracle::line({0, 1, 2});
    CHECK_THROWS_AS(build_index(d, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_index(d, 3), std::invalid_argument);
    const auto idx = build_index(d, 2);
    CHECK_THROWS_AS(idx.knn(0, 3), std::out_of_range);
    CHECK_THROWS_AS(idx.rnn_view(0, 3), std::out_of_range);
    CHECK_THROWS_AS(influence_space(idx, 0, 3), std::out_of_range);
}

TEST_CASE("reverse lists are ordered by rank so each k is a prefix") {
    Rng rng(5);
    const auto d = oracle::random_matrix(rng, 80, 3, false);
    const auto idx = build_index(d, 8);
    for (EntityId i = 0; i < 80; ++i) {
        const auto full = idx.rnn_view(i, 8);
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto part = idx.rnn_view(i, k);
            REQUIRE(part.size() <= full.size());
            CHECK(std::equal(part.begin(), part.end(), full.begin()));
        }
    }
}

// Property suite: random data sets with n <= 300 and m <= 10. Every list is checked
// against the sorting oracle, both backends must agree exactly, and the reverse lists
// must be the exact inversion of the forward ones.
TEST_CASE("property: duality, oracle agreement and backend equivalence on 50 data sets") {
    Rng rng(2024);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + uniform_index(rng, 299);
        const std::size_t m = 1 + uniform_index(rng, 10);
        const bool lattice = t % 3 == 0;
        const auto d = oracle::random_matrix(rng, n, m, lattice);
        const std::size_t k_max = 1 + uniform_index(rng, std::min<std::size_t>(n - 1, 15));
        CAPTURE(t);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(k_max);

        const auto brute = build_index(d, k_max, NeighborBackend::brute);
        const auto spatial = build_index(d, k_max, NeighborBackend::spatial);
        const auto threaded = build_index(d, k_max, NeighborBackend::spatial, 3);

        bool backends_equal = true;
        bool oracle_equal = true;
        bool dual = true;
        bool bounded = true;
        for (EntityId i = 0; i < n; ++i) {
            const auto want = oracle::knn(d, i, k_max);
            for (const auto* idx : {&brute, &spatial, &threaded}) {
                oracle_equal &= vec(idx->knn(i, k_max)) == want;
                backends_equal &= vec(idx->knn(i, k_max)) == vec(brute.knn(i, k_max));
                const auto a = idx->knn_distances(i, k_max);
                const auto b = brute.knn_distances(i, k_max);
                backends_equal &= std::equal(a.begin(), a.end(), b.begin(), b.end());
            }
            for (std::size_t k = 1; k <= k_max; ++k) {
                backends_equal &= vec(spatial.rnn_view(i, k)) == vec(brute.rnn_view(i, k));
                bounded &= influence_space(spatial, i, k).size() <= k;
            }
        }
        // j in RNN_k(i)  <=>  i in NN_k(j)
        for (std::size_t k = 1; k <= k_max; ++k) {
            std::vector<std::set<EntityId>> inverse(n);
            for (EntityId j = 0; j < n; ++j)
                for (EntityId i : spatial.knn(j, k))
                    inverse[i].insert(j);
            for (EntityId i = 0; i < n; ++i) {
                const auto r = rnn(spatial, i, k);
                dual &= std::vector<EntityId>(inverse[i].begin(), inverse[i].end()) == r;
            }
        }
        CHECK(oracle_equal);
        CHECK(backends_equal);
        CHECK(dual);
        CHECK(bounded);
    }
}

TEST_CASE("reverse lists agree with the direct oracle on a small lattice") {
    Rng rng(8);
    const auto d = oracle::random_matrix(rng, 30, 2, true);
    const auto idx = build_index(d, 4);
    for (std::size_t k = 1; k <= 4; ++k)
        for (EntityId i = 0; i < 30; ++i)
            CHECK(rnn(idx, i, k) == oracle::rnn(d, i, k));
}

TEST_CASE("kd-tree range query equals a linear scan") {
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        const auto d = oracle::random_matrix(rng, 150, 1 + t % 4, t % 2 == 0);
        const KdTree tree(d, 4);
        for (EntityId i = 0; i < 150; i += 7) {
            for (double r : {0.0, 0.01, 0.1, 1.0, 4.0}) {
                std::vector<EntityId> got;
                tree.within(i, r, got);
                std::sort(got.begin(), got.end());
                std::vector<EntityId> want;
                for (EntityId j = 0; j < 150; ++j)
                    if (oracle::sqdist(d, i, j) <= r)
                        want.push_back(j);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("rebuilding gives identical lists") {
    Rng rng(10);
    const auto d = oracle::random_matrix(rng, 120, 3, true);
    const auto a = build_index(d, 6);
    const auto b = build_index(d, 6);
    for (EntityId i = 0; i < 120; ++i) {
        CHECK(vec(a.knn(i, 6)) == vec(b.knn(i, 6)));
        CHECK(vec(a.rnn_view(i, 6)) == vec(b.rnn_view(i, 6)));
    }
}
