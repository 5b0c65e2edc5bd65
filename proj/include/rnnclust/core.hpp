#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rnnclust {

using EntityId = std::uint32_t;

/// Dense n x m matrix of finite reals, row-major. Rows are entities.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t v) const noexcept { return values_[i * cols_ + v]; }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const FeatureMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Per-feature statistics of the original units, recorded by range_standardize.
struct StandardizationReport {
    std::vector<double> mean;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> range;
};

struct DataSet {
    FeatureMatrix matrix;
    std::optional<std::vector<int>> true_labels;
    std::string name;
    // Set once the matrix has been standardized; a second standardization is rejected.
    std::optional<StandardizationReport> standardization;
    // Generated stand-in rather than a loaded benchmark file.
    bool synthetic = false;

    std::size_t size() const noexcept { return matrix.rows(); }
    std::size_t dims() const noexcept { return matrix.cols(); }
};

DataSet make_dataset(FeatureMatrix matrix, std::optional<std::vector<int>> labels, std::string name);

/// Sum of squared coordinate differences. Throws std::invalid_argument on dimension mismatch.
double squared_euclidean(std::span<const double> a, std::span<const double> b);

// Unchecked variant for hot loops; callers guarantee equal lengths.
inline double squared_euclidean_unchecked(const double* a, const double* b, std::size_t m) noexcept {
    double sum = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
        const double diff = a[v] - b[v];
        sum += diff * diff;
    }
    return sum;
}

/// (y - mean) / (max - min) per feature. Constant features become all zeros.
std::pair<FeatureMatrix, StandardizationReport> range_standardize(const FeatureMatrix& data);

/// Standardizes a data set in place of a copy; throws std::logic_error if it was already standardized.
DataSet standardize(const DataSet& data);

struct DistanceExtrema {
    double min_positive = 0.0;  // 0 when every pair coincides
    double max = 0.0;
};

/// Extrema of squared distances over all unordered pairs. Requires n >= 2.
DistanceExtrema pairwise_distance_extrema(const FeatureMatrix& data);

// ---------------------------------------------------------------------------
// CSV ingestion

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t row, const std::string& what);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

struct CsvOptions {
    bool has_header = false;
    // Column holding integer class ids. Negative values count from the end (-1 = last column).
    std::optional<long> label_column;
};

/// Parses comma-separated rows of reals. Errors carry the 1-based file line number.
DataSet read_csv(std::istream& in, const CsvOptions& options, std::string name = {});
DataSet read_csv_file(const std::string& path, const CsvOptions& options);

}  // namespace rnnclust
