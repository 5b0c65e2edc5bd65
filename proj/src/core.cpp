#include "rnnclust/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace rnnclust {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0)
        throw std::invalid_argument("feature matrix needs at least one row and one column");
    if (values_.size() != rows_ * cols_)
        throw std::invalid_argument("feature matrix value count does not match its shape");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("feature matrix contains a non-finite value");
}

DataSet make_dataset(FeatureMatrix matrix, std::optional<std::vector<int>> labels, std::string name) {
    if (labels && labels->size() != matrix.rows())
        throw std::invalid_argument("label count does not match entity count");
    DataSet ds;
    ds.matrix = std::move(matrix);
    ds.true_labels = std::move(labels);
    ds.name = std::move(name);
    return ds;
}

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_euclidean: dimension mismatch");
    return squared_euclidean_unchecked(a.data(), b.data(), a.size());
}

std::pair<FeatureMatrix, StandardizationReport> range_standardize(const FeatureMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    StandardizationReport report;
    report.mean.assign(m, 0.0);
    report.min.assign(m, std::numeric_limits<double>::infinity());
    report.max.assign(m, -std::numeric_limits<double>::infinity());
    report.range.assign(m, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < m; ++v) {
            const double y = data(i, v);
            report.mean[v] += y;
            report.min[v] = std::min(report.min[v], y);
            report.max[v] = std::max(report.max[v], y);
        }
    }
    for (std::size_t v = 0; v < m; ++v) {
        report.mean[v] /= static_cast<double>(n);
        report.range[v] = report.max[v] - report.min[v];
    }

    std::vector<double> out(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < m; ++v) {
            if (report.range[v] > 0.0)
                out[i * m + v] = (data(i, v) - report.mean[v]) / report.range[v];
        }
    }
    return {FeatureMatrix(n, m, std::move(out)), std::move(report)};
}

DataSet standardize(const DataSet& data) {
    if (data.standardization)
        throw std::logic_error("data set '" + data.name + "' is already standardized");
    auto [matrix, report] = range_standardize(data.matrix);
    DataSet out = data;
    out.matrix = std::move(matrix);
    out.standardization = std::move(report);
    return out;
}

DistanceExtrema pairwise_distance_extrema(const FeatureMatrix& data) {
    const std::size_t n = data.rows();
    if (n < 2)
        throw std::invalid_argument("pairwise distance extrema need at least two entities");
    const std::size_t m = data.cols();
    double min_pos = std::numeric_limits<double>::infinity();
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* a = data.row(i).data();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = squared_euclidean_unchecked(a, data.row(j).data(), m);
            if (d > 0.0 && d < min_pos)
                min_pos = d;
            max_d = std::max(max_d, d);
        }
    }
    return {std::isfinite(min_pos) ? min_pos : 0.0, max_d};
}

// ---------------------------------------------------------------------------

CsvError::CsvError(std::size_t row, const std::string& what)
    : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
    if (field.empty())
        return false;
    if (field.front() == '+')
        field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

DataSet read_csv(std::istream& in, const CsvOptions& options, std::string name) {
    std::vector<double> values;
    std::vector<int> labels;
    std::size_t columns = 0;
    std::size_t features = 0;
    std::size_t label_index = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    std::string line;
    bool header_pending = options.has_header;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
            line.erase(0, 3);
        if (trim(line).empty())
            continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line);
        if (columns == 0) {
            columns = fields.size();
            if (options.label_column) {
                const long raw = *options.label_column;
                const long idx = raw < 0 ? static_cast<long>(columns) + raw : raw;
                if (idx < 0 || idx >= static_cast<long>(columns))
                    throw CsvError(line_no, "label column " + std::to_string(raw) + " out of range");
                label_index = static_cast<std::size_t>(idx);
                features = columns - 1;
            } else {
                features = columns;
            }
            if (features == 0)
                throw CsvError(line_no, "no feature columns");
        } else if (fields.size() != columns) {
            throw CsvError(line_no, "expected " + std::to_string(columns) + " columns, found " +
                                        std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (options.label_column && c == label_index) {
                int label = 0;
                if (!parse_number(fields[c], label))
                    throw CsvError(line_no, "label '" + std::string(fields[c]) + "' is not an integer");
                labels.push_back(label);
                continue;
            }
            double value = 0.0;
            if (!parse_number(fields[c], value) || !std::isfinite(value))
                throw CsvError(line_no, "column " + std::to_string(c + 1) + " value '" +
                                            std::string(fields[c]) + "' is not a finite number");
            values.push_back(value);
        }
        ++rows;
    }
    if (rows == 0)
        throw CsvError(line_no, "no data rows");

    std::optional<std::vector<int>> maybe_labels;
    if (options.label_column)
        maybe_labels = std::move(labels);
    return make_dataset(FeatureMatrix(rows, features, std::move(values)), std::move(maybe_labels),
                        std::move(name));
}

DataSet read_csv_file(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
        name = name.substr(0, dot);
    return read_csv(in, options, name);
}

}  // namespace rnnclust
