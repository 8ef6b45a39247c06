#include "polyapprox/width_index.hpp"

#include <algorithm>
#include <cmath>

#include "point_tree.hpp"

namespace polyapprox {

struct WidthIndex::Buckets {
    DirectionNet net;
    SquareMat to_fat;  // original direction -> fattened-frame direction
    std::vector<std::vector<Eigen::Index>> candidates;
};

namespace {

bool all_points_coincide(const PointMat& pts) {
    for (Eigen::Index i = 1; i < pts.cols(); ++i)
        if (pts.col(i) != pts.col(0)) return false;
    return true;
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");
}

}  // namespace

WidthIndex WidthIndex::build(const PointPolytope& s, double eps, const WidthIndexOptions& options) {
    check_eps(eps);
    if (!(options.net_constant > 0.0)) throw Error(ErrorCode::InvalidParameter, "net constant must be positive");
    const int d = s.dim();

    WidthIndex idx;
    idx.eps_ = eps;
    if (all_points_coincide(s.points())) {
        // A single point is its own kernel; no fattening is needed or possible.
        idx.body_ = SymmetricBody{s.point(0), Eigen::MatrixXd::Zero(d, 0), 1.0};
        idx.own_map_ = AffineMap::translation(-s.point(0));
        idx.kernel_ = {0};
        idx.kernel_points_ = s.points().leftCols(1);
        return idx;
    }

    idx.body_ = sandwich_box(s);
    idx.own_map_ = fatten_transform(idx.body_);
    const PointMat fat = idx.own_map_.apply(s).points();

    const DirectionNet net(d, options.net_constant * std::sqrt(eps));
    idx.net_size_ = net.size();
    idx.net_angle_ = net.covering_angle();

    const detail::PointTree tree(fat);
    const double far_radius = fat.colwise().norm().maxCoeff() + 1.0;
    std::vector<char> chosen(static_cast<std::size_t>(s.size()), 0);
    Eigen::Index hint_support = 0, hint_nearest = 0;
    Vec y(d);
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Vec& u = net[i];
        hint_support = tree.max_dot(u.data(), hint_support);
        chosen[static_cast<std::size_t>(hint_support)] = 1;
        if (options.nearest_neighbor_witnesses) {
            y = far_radius * u;
            hint_nearest = tree.nearest(y.data(), hint_nearest);
            chosen[static_cast<std::size_t>(hint_nearest)] = 1;
        }
    }
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (chosen[static_cast<std::size_t>(i)]) idx.kernel_.push_back(i);
    idx.kernel_points_.resize(d, static_cast<Eigen::Index>(idx.kernel_.size()));
    for (std::size_t k = 0; k < idx.kernel_.size(); ++k)
        idx.kernel_points_.col(static_cast<Eigen::Index>(k)) = s.points().col(idx.kernel_[k]);
    if (options.buckets) idx.attach_buckets();
    return idx;
}

WidthIndex WidthIndex::from_parts(const PointPolytope& s, double eps, std::vector<Eigen::Index> kernel,
                                  SymmetricBody body, AffineMap own_map) {
    check_eps(eps);
    if (kernel.empty()) throw Error(ErrorCode::EmptyInput, "kernel must be nonempty");
    if (body.dim() != s.dim() || own_map.dim() != s.dim())
        throw Error(ErrorCode::DimensionMismatch, "index parts differ in dimension");
    WidthIndex idx;
    idx.eps_ = eps;
    idx.kernel_points_.resize(s.dim(), static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        if (kernel[k] < 0 || kernel[k] >= s.size())
            throw Error(ErrorCode::Parse, "kernel index " + std::to_string(kernel[k]) + " out of range");
        idx.kernel_points_.col(static_cast<Eigen::Index>(k)) = s.points().col(kernel[k]);
    }
    idx.kernel_ = std::move(kernel);
    idx.body_ = std::move(body);
    idx.own_map_ = std::move(own_map);
    return idx;
}

void WidthIndex::attach_buckets() {
    auto b = std::make_shared<Buckets>(Buckets{DirectionNet(dim(), net_angle_), {}, {}});
    b->net.enable_lookup();
    b->to_fat = own_map_.matrix().inverse().transpose();
    const PointMat fat = own_map_.apply(PointPolytope(kernel_points_)).points();
    const double radius = fat.colwise().norm().maxCoeff();
    const double slack = 2.0 * b->net.covering_angle() * radius * (1.0 + 1e-9) + 1e-12;
    b->candidates.resize(b->net.size());
    for (std::size_t j = 0; j < b->net.size(); ++j) {
        const Eigen::VectorXd vals = fat.transpose() * Eigen::VectorXd(b->net[j]);
        const double top = vals.maxCoeff();
        for (Eigen::Index k = 0; k < vals.size(); ++k)
            if (vals[k] >= top - slack) b->candidates[j].push_back(k);
    }
    buckets_ = std::move(b);
}

void WidthIndex::extremes(const Vec& u, Eigen::Index& max_pos, Eigen::Index& min_pos) const {
    const int d = dim();
    const double* base = kernel_points_.data();
    auto dot = [&](Eigen::Index k) {
        const double* p = base + k * d;
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += p[j] * u[j];
        return s;
    };
    auto scan = [&](const std::vector<Eigen::Index>* list, bool want_max) {
        Eigen::Index best = -1;
        double best_v = 0.0;
        auto consider = [&](Eigen::Index k) {
            const double v = dot(k);
            if (best < 0 || (want_max ? v > best_v : v < best_v)) {
                best = k;
                best_v = v;
            }
        };
        if (list) {
            for (Eigen::Index k : *list) consider(k);
        } else {
            for (Eigen::Index k = 0; k < kernel_points_.cols(); ++k) consider(k);
        }
        return best;
    };
    if (buckets_) {
        const Vec f = buckets_->to_fat * u;
        max_pos = scan(&buckets_->candidates[buckets_->net.nearest(f)], true);
        min_pos = scan(&buckets_->candidates[buckets_->net.nearest(-f)], false);
        return;
    }
    // single pass over the kernel for both ends
    max_pos = min_pos = 0;
    double vmax = dot(0), vmin = vmax;
    for (Eigen::Index k = 1; k < kernel_points_.cols(); ++k) {
        const double v = dot(k);
        if (v > vmax) {
            vmax = v;
            max_pos = k;
        }
        if (v < vmin) {
            vmin = v;
            min_pos = k;
        }
    }
}

SupportAnswer WidthIndex::query_support(const Vec& v) const { return query_support(v, AffineMap::identity(dim())); }

SupportAnswer WidthIndex::query_support(const Vec& v, const AffineMap& map) const {
    check_direction(v);
    if (v.size() != dim() || map.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "query dimension");
    Eigen::Index hi = 0, lo = 0;
    extremes(map.pullback(v), hi, lo);
    Vec w = map.apply(Vec(kernel_points_.col(hi)));
    return SupportAnswer{w.dot(v), std::move(w), kernel_[static_cast<std::size_t>(hi)]};
}

WidthAnswer WidthIndex::query_width(const Vec& v) const { return query_width(v, AffineMap::identity(dim())); }

WidthAnswer WidthIndex::query_width(const Vec& v, const AffineMap& map) const {
    check_direction(v);
    if (v.size() != dim() || map.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "query dimension");
    Eigen::Index hi = 0, lo = 0;
    extremes(map.pullback(v), hi, lo);
    WidthAnswer ans;
    ans.p = map.apply(Vec(kernel_points_.col(hi)));
    ans.q = map.apply(Vec(kernel_points_.col(lo)));
    ans.p_index = kernel_[static_cast<std::size_t>(hi)];
    ans.q_index = kernel_[static_cast<std::size_t>(lo)];
    ans.width = (ans.p.dot(v) - ans.q.dot(v)) / v.norm();
    return ans;
}

SumWidthAnswer sum_width(const WidthIndex& a, const WidthIndex& b, const Vec& v, const AffineMap& map_a,
                         const AffineMap& map_b, bool negate_b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "indexes differ in dimension");
    SumWidthAnswer out;
    out.a = a.query_width(v, map_a);
    if (negate_b) {
        // -B along v is B along -v with witnesses negated
        WidthAnswer raw = b.query_width(-v, map_b);
        out.b.p = -raw.p;
        out.b.q = -raw.q;
        out.b.p_index = raw.p_index;
        out.b.q_index = raw.q_index;
        out.b.width = raw.width;
    } else {
        out.b = b.query_width(v, map_b);
    }
    out.width = out.a.width + out.b.width;
    return out;
}

SumWidthAnswer sum_width(const WidthIndex& a, const WidthIndex& b, const Vec& v, bool negate_b) {
    return sum_width(a, b, v, AffineMap::identity(a.dim()), AffineMap::identity(b.dim()), negate_b);
}

}  // namespace polyapprox
