#include "oracles.hpp"

#include "rnnclust/core.hpp"

#include <doctest.h>

#include <sstream>

using namespace rnnclust;

TEST_CASE("squared distance") {
    const std::vector<double> o{0, 0}, p{3, 4}, a{1, 2, 4}, b{2, 2, 2};
    CHECK(squared_euclidean(o, o) == 0.0);
    CHECK(squared_euclidean(o, p) == 25.0);
    CHECK(squared_euclidean(a, b) == 5.0);
    CHECK_THROWS_AS(squared_euclidean(o, a), std::invalid_argument);
}

TEST_CASE("squared distance is symmetric and zero on the diagonal") {
    Rng rng(3);
    const auto d = oracle::random_matrix(rng, 40, 5, false);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        CHECK(squared_euclidean(d.row(i), d.row(i)) == 0.0);
        for (std::size_t j = 0; j < d.rows(); ++j)
            CHECK(squared_euclidean(d.row(i), d.row(j)) == squared_euclidean(d.row(j), d.row(i)));
    }
}

TEST_CASE("feature matrix rejects bad shapes and values") {
    CHECK_THROWS_AS(FeatureMatrix(0, 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(FeatureMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FeatureMatrix(1, 2, {1, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(make_dataset(FeatureMatrix(2, 1, {1, 2}), std::vector<int>{1}, "x"), std::invalid_argument);
}

TEST_CASE("range standardization") {
    // columns: [0,1,?], [c,c,c], [1,2,4]
    const FeatureMatrix raw(3, 3, {0, 7, 1,   1, 7, 2,   0.5, 7, 4});
    const auto [z, report] = range_standardize(raw);
    CHECK(z(0, 0) == doctest::Approx(-0.5));
    CHECK(z(1, 0) == doctest::Approx(0.5));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(z(i, 1) == 0.0);
    CHECK(z(0, 2) == doctest::Approx(-4.0 / 9.0).epsilon(1e-15));
    CHECK(z(1, 2) == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(z(2, 2) == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(report.range[1] == 0.0);
    CHECK(report.mean[2] == doctest::Approx(7.0 / 3.0));
    CHECK(report.min[2] == 1.0);
    CHECK(report.max[2] == 4.0);
    CHECK(raw(2, 2) == 4.0);  // input untouched
}

TEST_CASE("standardized features have unit range, also after a second pass") {
    Rng rng(11);
    const auto raw = oracle::random_matrix(rng, 60, 4, false);
    const auto once = range_standardize(raw).first;
    const auto twice = range_standardize(once).first;
    for (const auto* d : {&once, &twice})
        for (std::size_t v = 0; v < 4; ++v) {
            double lo = (*d)(0, v), hi = lo;
            for (std::size_t i = 0; i < d->rows(); ++i) {
                lo = std::min(lo, (*d)(i, v));
                hi = std::max(hi, (*d)(i, v));
            }
            CHECK(std::abs(hi - lo - 1.0) <= 1e-12);
        }
}

TEST_CASE("a data set is standardized at most once") {
    const auto ds = make_dataset(FeatureMatrix(2, 1, {0, 1}), std::nullopt, "pair");
    const auto z = standardize(ds);
    REQUIRE(z.standardization.has_value());
    CHECK_THROWS_AS(standardize(z), std::logic_error);
}

TEST_CASE("pairwise distance extrema") {
    auto e = pairwise_distance_extrema(oracle::line({0, 1, 3}));
    CHECK(e.min_positive == 1.0);
    CHECK(e.max == 9.0);
    e = pairwise_distance_extrema(FeatureMatrix(2, 2, {1, 1, 1, 1}));
    CHECK(e.min_positive == 0.0);
    CHECK(e.max == 0.0);
    e = pairwise_distance_extrema(FeatureMatrix(2, 2, {0, 0, 3, 4}));
    CHECK(e.min_positive == 25.0);
    CHECK(e.max == 25.0);
    CHECK_THROWS_AS(pairwise_distance_extrema(oracle::line({5})), std::invalid_argument);
}

TEST_CASE("csv: plain rows with a trailing label column") {
    std::istringstream in("0,0,1\n1,0,1\n5,5,2");
    const auto ds = read_csv(in, CsvOptions{false, -1}, "t");
    CHECK(ds.size() == 3);
    CHECK(ds.dims() == 2);
    REQUIRE(ds.true_labels.has_value());
    CHECK(*ds.true_labels == std::vector<int>{1, 1, 2});
    CHECK(ds.matrix(2, 0) == 5.0);
}

TEST_CASE("csv: header, blank lines, explicit label index") {
    std::istringstream in("label,x,y\n\n3, 1.5 ,2\n4,-1e-3,0\n");
    const auto ds = read_csv(in, CsvOptions{true, 0}, "t");
    CHECK(ds.size() == 2);
    CHECK(ds.dims() == 2);
    CHECK(*ds.true_labels == std::vector<int>{3, 4});
    CHECK(ds.matrix(0, 0) == 1.5);
    CHECK(ds.matrix(1, 0) == -1e-3);
}

TEST_CASE("csv: unlabeled input") {
    std::istringstream in("1,2\n3,4\n");
    const auto ds = read_csv(in, CsvOptions{}, "t");
    CHECK_FALSE(ds.true_labels.has_value());
    CHECK(ds.matrix(1, 1) == 4.0);
}

TEST_CASE("csv: errors name the line") {
    auto row_of_error = [](const std::string& text, CsvOptions opts) -> std::size_t {
        std::istringstream in(text);
        try {
            read_csv(in, opts, "t");
        } catch (const CsvError& e) {
            return e.row();
        }
        return 0;
    };
    CHECK(row_of_error("1,2\n3,abc\n", {}) == 2);
    CHECK(row_of_error("h1,h2\n1,2\n3\n", CsvOptions{true, std::nullopt}) == 3);
    CHECK(row_of_error("1,2,x\n", CsvOptions{false, -1}) == 1);
    CHECK(row_of_error("1,nan\n", {}) == 1);

    std::istringstream in("1,2\n3,abc\n");
    try {
        read_csv(in, {}, "t");
        FAIL("expected an error");
    } catch (const CsvError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("csv: the bundled iris file") {
    const auto ds = read_csv_file(RNNCLUST_DATA_DIR "/iris.csv", CsvOptions{true, -1});
    CHECK(ds.name == "iris");
    CHECK(ds.size() == 150);
    CHECK(ds.dims() == 4);
    CHECK(std::set<int>(ds.true_labels->begin(), ds.true_labels->end()).size() == 3);
}
