#include "rnnclust/harness/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace rnnclust::harness {

namespace {

// Red is kept for noise.
constexpr std::array<const char*, 12> kPalette{
    "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
    "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939", "#843c39",
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

const char* cluster_color(std::size_t c) {
    return kPalette[c % kPalette.size()];
}

void plot_clustering(std::ostream& out, const FeatureMatrix& data, const Clustering& clustering,
                     const PlotOptions& options) {
    if (data.cols() != 2)
        throw std::invalid_argument("plot needs 2-D data, got " + std::to_string(data.cols()) + " features");
    if (clustering.size() != data.rows())
        throw std::invalid_argument("clustering size does not match the data");

    const std::size_t n = data.rows();
    double x_lo = data(0, 0), x_hi = x_lo, y_lo = data(0, 1), y_hi = y_lo;
    for (std::size_t i = 1; i < n; ++i) {
        x_lo = std::min(x_lo, data(i, 0));
        x_hi = std::max(x_hi, data(i, 0));
        y_lo = std::min(y_lo, data(i, 1));
        y_hi = std::max(y_hi, data(i, 1));
    }
    const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
    const double y_span = y_hi > y_lo ? y_hi - y_lo : 1.0;

    const double margin = 30.0;
    const double legend_w = 70.0;
    const double plot_w = options.width - 2 * margin - legend_w;
    const double plot_h = options.height - 2 * margin;
    auto px = [&](double x) { return margin + (x - x_lo) / x_span * plot_w; };
    auto py = [&](double y) { return margin + plot_h - (y - y_lo) / y_span * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"" << fmt(margin) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">"
            << escape(options.title) << "</text>\n";
    out << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\"" << fmt(plot_w)
        << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    const double r = options.point_radius;
    out << "<g class=\"clusters\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const int c = clustering.assignment[i];
        if (c == kNoise)
            continue;
        out << "<circle cx=\"" << fmt(px(data(i, 0))) << "\" cy=\"" << fmt(py(data(i, 1))) << "\" r=\"" << fmt(r)
            << "\" fill=\"" << cluster_color(static_cast<std::size_t>(c)) << "\"/>\n";
    }
    out << "</g>\n<g class=\"noise\" stroke=\"red\" stroke-width=\"1.5\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        if (clustering.assignment[i] != kNoise)
            continue;
        const double x = px(data(i, 0));
        const double y = py(data(i, 1));
        out << "<path d=\"M" << fmt(x - r) << ',' << fmt(y - r) << " L" << fmt(x + r) << ',' << fmt(y + r)
            << " M" << fmt(x - r) << ',' << fmt(y + r) << " L" << fmt(x + r) << ',' << fmt(y - r) << "\"/>\n";
    }
    out << "</g>\n";

    // Legend: noise as 0, clusters as 1..K.
    const double lx = options.width - legend_w + 5;
    double ly = margin + 10;
    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    if (clustering.noise_count() > 0) {
        out << "<path d=\"M" << fmt(lx - 4) << ',' << fmt(ly - 4) << " L" << fmt(lx + 4) << ',' << fmt(ly + 4)
            << " M" << fmt(lx - 4) << ',' << fmt(ly + 4) << " L" << fmt(lx + 4) << ',' << fmt(ly - 4)
            << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << fmt(lx + 10) << "\" y=\"" << fmt(ly + 4) << "\">0</text>\n";
        ly += 16;
    }
    for (std::size_t c = 0; c < clustering.num_clusters; ++c) {
        out << "<circle cx=\"" << fmt(lx) << "\" cy=\"" << fmt(ly) << "\" r=\"4\" fill=\"" << cluster_color(c)
            << "\"/>\n";
        out << "<text x=\"" << fmt(lx + 10) << "\" y=\"" << fmt(ly + 4) << "\">" << c + 1 << "</text>\n";
        ly += 16;
    }
    out << "</g>\n</svg>\n";
}

void plot_clustering(const std::string& path, const FeatureMatrix& data, const Clustering& clustering,
                     const PlotOptions& options) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    plot_clustering(f, data, clustering, options);
}

}  // namespace rnnclust::harness
