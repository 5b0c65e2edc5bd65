#pragma once

#include "rnnclust/clustering.hpp"
#include "rnnclust/core.hpp"

#include <iosfwd>
#include <string>

namespace rnnclust::harness {

struct PlotOptions {
    int width = 640;
    int height = 480;
    double point_radius = 3.0;
    std::string title;
};

/// Scatter plot of a 2-D clustering. Clusters are drawn as filled circles, one palette
/// color per id and labeled 1..K in the legend; noise is drawn as red crosses labeled 0.
/// Output depends only on the inputs. Throws std::invalid_argument unless m == 2.
void plot_clustering(std::ostream& out, const FeatureMatrix& data, const Clustering& clustering,
                     const PlotOptions& options = {});
void plot_clustering(const std::string& path, const FeatureMatrix& data, const Clustering& clustering,
                     const PlotOptions& options = {});

/// Fill color used for cluster id `c` (cycles through a fixed palette).
const char* cluster_color(std::size_t c);

}  // namespace rnnclust::harness
