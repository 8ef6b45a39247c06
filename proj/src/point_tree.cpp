#include "point_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace polyapprox::detail {

namespace {

// Box bounds are pruned with a small slack so rounding never discards a
// point that a scan would pick.
constexpr double kSlack = 1e-12;

}  // namespace

PointTree::PointTree(const Eigen::MatrixXd& points, int leaf_size)
    : dim_(static_cast<int>(points.rows())), points_(points), order_(static_cast<std::size_t>(points.cols())) {
    std::iota(order_.begin(), order_.end(), Eigen::Index{0});
    nodes_.reserve(2 * order_.size() / static_cast<std::size_t>(leaf_size) + 2);
    build(0, points.cols(), leaf_size);
}

std::int32_t PointTree::build(Eigen::Index begin, Eigen::Index end, int leaf_size) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{begin, end});
    lo_.resize(lo_.size() + static_cast<std::size_t>(dim_), std::numeric_limits<double>::infinity());
    hi_.resize(hi_.size() + static_cast<std::size_t>(dim_), -std::numeric_limits<double>::infinity());
    double* lo = &lo_[static_cast<std::size_t>(id) * dim_];
    double* hi = &hi_[static_cast<std::size_t>(id) * dim_];
    for (Eigen::Index k = begin; k < end; ++k) {
        const double* p = points_.data() + order_[static_cast<std::size_t>(k)] * dim_;
        for (int j = 0; j < dim_; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    if (end - begin <= leaf_size) return id;

    int axis = 0;
    for (int j = 1; j < dim_; ++j)
        if (hi[j] - lo[j] > hi[axis] - lo[axis]) axis = j;
    if (!(hi[axis] > lo[axis])) return id;  // all points coincide

    const Eigen::Index mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](Eigen::Index a, Eigen::Index b) {
                         const double pa = points_(axis, a), pb = points_(axis, b);
                         return pa < pb || (pa == pb && a < b);
                     });
    const std::int32_t left = build(begin, mid, leaf_size);
    const std::int32_t right = build(mid, end, leaf_size);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
}

Eigen::Index PointTree::max_dot(const double* u, Eigen::Index hint) const {
    auto dot = [&](Eigen::Index i) {
        const double* p = points_.data() + i * dim_;
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += p[j] * u[j];
        return s;
    };
    auto bound = [&](std::int32_t node) {
        const double* lo = &lo_[static_cast<std::size_t>(node) * dim_];
        const double* hi = &hi_[static_cast<std::size_t>(node) * dim_];
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += std::max(u[j] * lo[j], u[j] * hi[j]);
        return s;
    };

    Eigen::Index best = hint;
    double best_v = dot(hint);
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const std::int32_t id = stack[--top];
        const double b = bound(id);
        if (b < best_v - kSlack * (1.0 + std::abs(best_v))) continue;
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        if (node.left < 0) {
            for (Eigen::Index k = node.begin; k < node.end; ++k) {
                const Eigen::Index i = order_[static_cast<std::size_t>(k)];
                const double v = dot(i);
                if (v > best_v || (v == best_v && i < best)) {
                    best_v = v;
                    best = i;
                }
            }
            continue;
        }
        // push the less promising child first so the better one is explored next
        const double bl = bound(node.left), br = bound(node.right);
        if (bl >= br) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return best;
}

Eigen::Index PointTree::nearest(const double* y, Eigen::Index hint) const {
    auto dist2 = [&](Eigen::Index i) {
        const double* p = points_.data() + i * dim_;
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double t = p[j] - y[j];
            s += t * t;
        }
        return s;
    };
    auto bound = [&](std::int32_t node) {
        const double* lo = &lo_[static_cast<std::size_t>(node) * dim_];
        const double* hi = &hi_[static_cast<std::size_t>(node) * dim_];
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double t = std::max({lo[j] - y[j], 0.0, y[j] - hi[j]});
            s += t * t;
        }
        return s;
    };

    Eigen::Index best = hint;
    double best_v = dist2(hint);
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const std::int32_t id = stack[--top];
        if (bound(id) > best_v * (1.0 + kSlack) + kSlack) continue;
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        if (node.left < 0) {
            for (Eigen::Index k = node.begin; k < node.end; ++k) {
                const Eigen::Index i = order_[static_cast<std::size_t>(k)];
                const double v = dist2(i);
                if (v < best_v || (v == best_v && i < best)) {
                    best_v = v;
                    best = i;
                }
            }
            continue;
        }
        const double bl = bound(node.left), br = bound(node.right);
        if (bl <= br) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return best;
}

}  // namespace polyapprox::detail
