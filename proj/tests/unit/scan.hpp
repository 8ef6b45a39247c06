#pragma once

// Brute-force references written independently of the library code paths.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "polyapprox/geometry.hpp"

namespace scan {

using polyapprox::PointMat;
using polyapprox::Vec;

inline double max_dot(const PointMat& pts, const Vec& v) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < pts.rows(); ++j) s += pts(j, i) * v[j];
        best = std::max(best, s);
    }
    return best;
}

inline double width(const PointMat& pts, const Vec& v) {
    return (max_dot(pts, v) + max_dot(pts, -v)) / v.norm();
}

inline Vec unit(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(d);
    for (int j = 0; j < d; ++j) v[j] = g(rng);
    return v.normalized();
}

inline PointMat box_corners(const Vec& lo, const Vec& hi) {
    const auto d = lo.size();
    PointMat p(d, Eigen::Index{1} << d);
    for (Eigen::Index i = 0; i < p.cols(); ++i)
        for (Eigen::Index j = 0; j < d; ++j) p(j, i) = ((i >> j) & 1) ? hi[j] : lo[j];
    return p;
}

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace scan
