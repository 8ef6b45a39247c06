#pragma once

// Exact low-level geometry: points, hyperplanes, slabs, affine maps,
// support/width evaluation and the point/hyperplane dual transform.

#include <Eigen/Dense>

#include <vector>

#include "polyapprox/error.hpp"

namespace polyapprox {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

/// d-vector with inline storage; d is a runtime value in [kMinDim, kMaxDim].
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
/// d x d matrix with inline storage.
using SquareMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                kMaxDim, kMaxDim>;
/// Column-per-point storage for point sets of arbitrary size.
using PointMat = Eigen::MatrixXd;

/// Relative comparison tolerance used across the library unless overridden.
inline constexpr double kDefaultRelTol = 1e-9;

void check_dim(int d);
void check_finite(const Vec& v, const char* what);
/// Throws InvalidDirection unless v is finite and nonzero.
void check_direction(const Vec& v);

/// Halfspace {x : normal . x <= offset}.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;

    Hyperplane() = default;
    Hyperplane(Vec n, double b);

    double signed_excess(const Vec& x) const { return normal.dot(x) - offset; }
    bool contains(const Vec& x, double tol = 0.0) const { return signed_excess(x) <= tol; }
};

/// The region lo <= direction . x <= hi.
struct Slab {
    Vec direction;
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return (hi - lo) / direction.norm(); }
    double center() const { return 0.5 * (lo + hi); }
};

/// Scale a slab about its center so its width grows by exactly (1 + eps).
Slab eps_expand(const Slab& slab, double eps);

class PointPolytope {
public:
    PointPolytope() = default;
    /// Columns of `points` are the n >= 1 input points.
    explicit PointPolytope(PointMat points);
    static PointPolytope from_points(const std::vector<Vec>& points);

    int dim() const { return static_cast<int>(points_.rows()); }
    Eigen::Index size() const { return points_.cols(); }
    const PointMat& points() const { return points_; }
    Vec point(Eigen::Index i) const { return points_.col(i); }

    PointPolytope negated() const { return PointPolytope(-points_); }

private:
    PointMat points_;
};

class HalfspacePolytope {
public:
    HalfspacePolytope() = default;
    HalfspacePolytope(int dim, std::vector<Hyperplane> halfspaces);

    int dim() const { return dim_; }
    std::size_t size() const { return halfspaces_.size(); }
    const std::vector<Hyperplane>& halfspaces() const { return halfspaces_; }

    bool contains(const Vec& x, double tol = 0.0) const;

private:
    int dim_ = 0;
    std::vector<Hyperplane> halfspaces_;
};

/// x -> M x + t with M non-singular.
class AffineMap {
public:
    AffineMap() = default;
    AffineMap(SquareMat matrix, Vec translation);

    static AffineMap identity(int d);
    static AffineMap translation(const Vec& t);
    static AffineMap linear(SquareMat matrix);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const SquareMat& matrix() const { return matrix_; }
    const Vec& translation_part() const { return translation_; }

    Vec apply(const Vec& x) const { return matrix_ * x + translation_; }
    PointPolytope apply(const PointPolytope& s) const;
    /// M^T v: support of T(S) along v equals support of S along pullback(v), plus t . v.
    Vec pullback(const Vec& v) const { return matrix_.transpose() * v; }

    AffineMap inverse() const;
    /// (*this) o inner, i.e. x -> this(inner(x)).
    AffineMap compose(const AffineMap& inner) const;

private:
    SquareMat matrix_;
    Vec translation_;
};

struct Support {
    double value = 0.0;
    Eigen::Index index = 0;
    Vec witness;
};

/// max over p in S of p . v; ties go to the lowest point index.
Support support(const PointPolytope& s, const Vec& v);
/// Directional width (h_S(v) + h_S(-v)) / |v|.
double width_exact(const PointPolytope& s, const Vec& v);
Slab slab(const PointPolytope& s, const Vec& v);

/// All pairwise sums a_i + b_j (or a_i - b_j when negate_b).
PointPolytope pairwise_sum(const PointPolytope& a, const PointPolytope& b, bool negate_b = false,
                           Eigen::Index max_size = 1'000'000);

/// Dual hyperplane in graph form x_d = slope . (x_1..x_{d-1}) + intercept.
struct DualHyperplane {
    Vec slope;
    double intercept = 0.0;

    int dim() const { return static_cast<int>(slope.size()) + 1; }
    double height_at(const Vec& r) const { return slope.dot(r) + intercept; }
    /// The same hyperplane as {x : normal . x <= offset} with normal (-slope, 1).
    Hyperplane as_halfspace() const;
};

/// p -> x_d = p_1 x_1 + ... + p_{d-1} x_{d-1} - p_d.
DualHyperplane dual_hyperplane(const Vec& p);
/// Inverse of dual_hyperplane.
Vec dual_point(const DualHyperplane& h);
/// Dual point of a non-vertical hyperplane {x : u . x = b}; vertical ones are rejected.
Vec dual_point(const Hyperplane& h);

/// Vertical gap between the dual hyperplanes of p and q at abscissa r.
double thickness(const Vec& p, const Vec& q, const Vec& r);

}  // namespace polyapprox
