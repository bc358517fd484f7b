#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lne/io.hpp"

namespace lne::test {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(LNE_DATA_DIR) / rel; }

inline SetDescriptor descriptor(const std::string& name) { return load_descriptor(data_path("descriptors/" + name + ".desc")); }

inline SetDescriptor cloud(std::vector<Point> pts) {
    PointCloud c;
    c.metric = AmbientMetric::euclidean(pts.empty() ? 2 : pts.front().dim());
    c.points = std::move(pts);
    return SetDescriptor{"cloud", std::move(c)};
}

inline Sample cloud_sample(const std::vector<Point>& pts) {
    Sample s;
    s.metric = AmbientMetric::euclidean(pts.empty() ? 2 : pts.front().dim());
    Provenance p;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        p.index = i;
        s.add(pts[i], p);
    }
    return s;
}

/// Point with coordinates spread over many orders of magnitude.
inline Point random_point(std::mt19937_64& rng, std::size_t q, double log10_lo = -3.0, double log10_hi = 6.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> e(log10_lo, log10_hi);
    Point p(q);
    double s = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
        p[k] = n(rng);
        s += p[k] * p[k];
    }
    return p * (std::pow(10.0, e(rng)) / std::sqrt(s));
}

}  // namespace lne::test
