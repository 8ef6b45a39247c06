#pragma once

// Sandwiching bodies and fattening transforms.
//
// A SymmetricBody is a zonotope c + sum_i [-g_i, g_i]. The bodies produced
// here are *outer* bodies: the polytope K they describe satisfies
//
//     c + C / lambda  ⊆  K  ⊆  c + C,
//
// where C = sum_i [-g_i, g_i]. Affine images and Minkowski sums preserve this
// relation with lambda combining by max.

#include <Eigen/Dense>

#include "polyapprox/direction_net.hpp"
#include "polyapprox/geometry.hpp"

namespace polyapprox {

struct SymmetricBody {
    Vec center;
    Eigen::MatrixXd generators;  // d x m
    double lambda = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
    /// h(v) = c . v + sum_i |g_i . v|
    double support(const Vec& v) const { return center.dot(v) + centered_support(v); }
    double centered_support(const Vec& v) const {
        return (generators.transpose() * Eigen::VectorXd(v)).cwiseAbs().sum();
    }
    SymmetricBody apply(const AffineMap& map) const;
};

/// Outer hyperrectangle around S with a sampled sandwich factor.
///
/// Candidate axes are the coordinate axes and the axes of an iterated
/// farthest-point double scan; candidate centers are the box midpoint and the
/// centroid of the extreme points. The candidate with the smallest certified
/// lambda wins (ties keep the earlier candidate).
SymmetricBody sandwich_box(const PointPolytope& s, double rel_tol = kDefaultRelTol);

/// max of h_C(v) / h_{S - c}(v) over the sample taken in the whitened frame of C;
/// infinity when c is not interior.
double certify_lambda(const SymmetricBody& body, const PointPolytope& s, const DirectionNet& sample);
/// The sample used by sandwich_box: at least 10 * 3^d directions.
DirectionNet lambda_sample(int dim);

SymmetricBody minkowski_body(const SymmetricBody& a, const SymmetricBody& b);
SymmetricBody negate_body(const SymmetricBody& c);
/// Cube of half-extent `radius` around `center`; sandwiches the ball with lambda = sqrt(d).
SymmetricBody ball_body(const Vec& center, double radius);

/// Whitening map x -> W (x - c) with W^T W = (G G^T)^{-1}. It sends the unit
/// ball into W(C - c) and W(C - c) into the ball of radius sqrt(m). W is
/// (G G^T)^{-1/2} followed by the rotation that aligns the principal axes of
/// C with the coordinate axes, so a box goes to an axis-aligned cube.
AffineMap fatten_transform(const SymmetricBody& body);

}  // namespace polyapprox
