#include "polyapprox/geometry.hpp"

#include <cmath>
#include <string>

namespace polyapprox {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDirection: return "invalid direction";
        case ErrorCode::InvalidParameter: return "invalid parameter";
        case ErrorCode::SingularMap: return "singular map";
        case ErrorCode::NotFullDimensional: return "not full-dimensional";
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::EmptyInput: return "empty input";
        case ErrorCode::Infeasible: return "infeasible";
        case ErrorCode::Unbounded: return "unbounded";
        case ErrorCode::SizeLimit: return "size limit exceeded";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Internal: return "internal error";
    }
    return "unknown error";
}

void check_dim(int d) {
    if (d < kMinDim || d > kMaxDim)
        throw Error(ErrorCode::InvalidParameter,
                    "dimension " + std::to_string(d) + " outside [2, 8]");
}

void check_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) throw Error(ErrorCode::InvalidParameter, std::string(what) + " is not finite");
}

void check_direction(const Vec& v) {
    if (v.size() == 0 || !v.allFinite() || v.squaredNorm() == 0.0)
        throw Error(ErrorCode::InvalidDirection, "direction must be finite and nonzero");
}

Hyperplane::Hyperplane(Vec n, double b) : normal(std::move(n)), offset(b) {
    if (!normal.allFinite() || normal.squaredNorm() == 0.0 || !std::isfinite(offset))
        throw Error(ErrorCode::InvalidParameter, "hyperplane normal must be finite and nonzero");
}

Slab eps_expand(const Slab& s, double eps) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidParameter, "eps must be >= 0");
    const double c = s.center();
    const double half = 0.5 * (s.hi - s.lo) * (1.0 + eps);
    return Slab{s.direction, c - half, c + half};
}

PointPolytope::PointPolytope(PointMat points) : points_(std::move(points)) {
    if (points_.cols() < 1) throw Error(ErrorCode::EmptyInput, "point polytope needs at least one point");
    check_dim(static_cast<int>(points_.rows()));
    if (!points_.allFinite()) throw Error(ErrorCode::InvalidParameter, "point coordinates must be finite");
}

PointPolytope PointPolytope::from_points(const std::vector<Vec>& pts) {
    if (pts.empty()) throw Error(ErrorCode::EmptyInput, "point polytope needs at least one point");
    const auto d = pts.front().size();
    PointMat m(d, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != d) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
        m.col(static_cast<Eigen::Index>(i)) = pts[i];
    }
    return PointPolytope(std::move(m));
}

HalfspacePolytope::HalfspacePolytope(int dim, std::vector<Hyperplane> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
    check_dim(dim_);
    for (const auto& h : halfspaces_)
        if (h.normal.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "halfspace of wrong dimension");
}

bool HalfspacePolytope::contains(const Vec& x, double tol) const {
    for (const auto& h : halfspaces_)
        if (!h.contains(x, tol * h.normal.norm())) return false;
    return true;
}

AffineMap::AffineMap(SquareMat matrix, Vec translation)
    : matrix_(std::move(matrix)), translation_(std::move(translation)) {
    const int d = static_cast<int>(matrix_.rows());
    check_dim(d);
    if (matrix_.cols() != d || translation_.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "affine map shape mismatch");
    if (!matrix_.allFinite() || !translation_.allFinite())
        throw Error(ErrorCode::InvalidParameter, "affine map entries must be finite");
    const double scale = matrix_.cwiseAbs().maxCoeff();
    const double det = std::abs(matrix_.determinant());
    if (!(scale > 0.0) || !(det > 1e-12 * std::pow(scale, d)))
        throw Error(ErrorCode::SingularMap, "matrix is numerically singular");
}

AffineMap AffineMap::identity(int d) {
    check_dim(d);
    return AffineMap(SquareMat::Identity(d, d), Vec::Zero(d));
}

AffineMap AffineMap::translation(const Vec& t) {
    const auto d = static_cast<int>(t.size());
    check_dim(d);
    return AffineMap(SquareMat::Identity(d, d), t);
}

AffineMap AffineMap::linear(SquareMat matrix) {
    const auto d = matrix.rows();
    return AffineMap(std::move(matrix), Vec::Zero(d));
}

PointPolytope AffineMap::apply(const PointPolytope& s) const {
    if (s.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "map and polytope dimensions differ");
    PointMat out = matrix_ * s.points();
    out.colwise() += Eigen::VectorXd(translation_);
    return PointPolytope(std::move(out));
}

AffineMap AffineMap::inverse() const {
    SquareMat inv = matrix_.inverse();
    Vec t = -(inv * translation_);
    return AffineMap(std::move(inv), std::move(t));
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
    if (inner.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "composed maps differ in dimension");
    return AffineMap(matrix_ * inner.matrix_, matrix_ * inner.translation_ + translation_);
}

Support support(const PointPolytope& s, const Vec& v) {
    check_direction(v);
    if (v.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "direction dimension differs");
    const Eigen::VectorXd values = s.points().transpose() * Eigen::VectorXd(v);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return Support{values[best], best, s.point(best)};
}

double width_exact(const PointPolytope& s, const Vec& v) {
    const double hi = support(s, v).value;
    const double lo = -support(s, -v).value;
    return (hi - lo) / v.norm();
}

Slab slab(const PointPolytope& s, const Vec& v) {
    const double hi = support(s, v).value;
    const double lo = -support(s, -v).value;
    return Slab{v, lo, hi};
}

PointPolytope pairwise_sum(const PointPolytope& a, const PointPolytope& b, bool negate_b,
                           Eigen::Index max_size) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "pairwise sum of mixed dimensions");
    if (a.size() * b.size() > max_size)
        throw Error(ErrorCode::SizeLimit, "pairwise sum would have " + std::to_string(a.size() * b.size()) +
                                              " points");
    PointMat out(a.dim(), a.size() * b.size());
    const double sign = negate_b ? -1.0 : 1.0;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out.col(k++) = a.points().col(i) + sign * b.points().col(j);
    return PointPolytope(std::move(out));
}

Hyperplane DualHyperplane::as_halfspace() const {
    Vec n(dim());
    n.head(dim() - 1) = -slope;
    n[dim() - 1] = 1.0;
    return Hyperplane(std::move(n), intercept);
}

DualHyperplane dual_hyperplane(const Vec& p) {
    check_finite(p, "point");
    check_dim(static_cast<int>(p.size()));
    const auto d = p.size();
    return DualHyperplane{p.head(d - 1), -p[d - 1]};
}

Vec dual_point(const DualHyperplane& h) {
    Vec p(h.dim());
    p.head(h.dim() - 1) = h.slope;
    p[h.dim() - 1] = -h.intercept;
    return p;
}

Vec dual_point(const Hyperplane& h) {
    const auto d = h.normal.size();
    const double ud = h.normal[d - 1];
    if (std::abs(ud) <= kDefaultRelTol * h.normal.norm())
        throw Error(ErrorCode::InvalidParameter, "vertical hyperplane has no dual point");
    // u . x = b  <=>  x_d = -(u'/u_d) . x' + b / u_d
    Vec p(d);
    p.head(d - 1) = -h.normal.head(d - 1) / ud;
    p[d - 1] = -h.offset / ud;
    return p;
}

double thickness(const Vec& p, const Vec& q, const Vec& r) {
    if (p.size() != q.size() || r.size() + 1 != p.size())
        throw Error(ErrorCode::DimensionMismatch, "thickness arguments differ in dimension");
    return std::abs(dual_hyperplane(p).height_at(r) - dual_hyperplane(q).height_at(r));
}

}  // namespace polyapprox
