#pragma once

// Exact and brute-force references used to check the approximate operations.

#include <optional>
#include <string_view>

#include "polyapprox/geometry.hpp"
#include "polyapprox/lp.hpp"

namespace polyapprox {

enum class ExactVerdict { Intersecting, Disjoint, Ambiguous };

std::string_view to_string(ExactVerdict v);

struct ExactIntersection {
    ExactVerdict verdict = ExactVerdict::Ambiguous;
    /// L1 distance between closest combinations, in units of the joint diameter.
    double residual = 0.0;
    /// A common point (Intersecting) or the A-side closest combination.
    Vec witness;
};

/// Feasibility of sum l_i a_i = sum m_j b_j over the two simplices of weights.
/// Residuals in (1e-9, 1e-8) are reported as Ambiguous.
ExactIntersection lp_intersect_exact(const PointPolytope& a, const PointPolytope& b);

/// All pairwise sums a_i + b_j; SizeLimit above 10^6.
PointPolytope pairwise_minkowski_exact(const PointPolytope& a, const PointPolytope& b, bool negate_b = false);

/// Exact Euclidean distance from y to conv(S) with the closest point (Wolfe's method).
struct HullDistance {
    double distance = 0.0;
    Vec closest;
};
HullDistance hull_distance(const PointPolytope& s, const Vec& y);

/// max v . x over {x : u_i . x <= b_i}. Infeasible or Unbounded status otherwise.
struct HalfspaceSupport {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Vec maximizer;
};
HalfspaceSupport halfspace_support(const HalfspacePolytope& h, const Vec& v);

/// Center and radius of the largest inscribed ball.
struct ChebyshevBall {
    LpStatus status = LpStatus::Infeasible;
    Vec center;
    double radius = 0.0;
};
ChebyshevBall chebyshev_ball(const HalfspacePolytope& h);

/// Smallest exact width over a net of covering angle delta, taken in the
/// frame that whitens the sandwich box of S and mapped back to S, then
/// polished by a pattern search. Always an upper bound on the width.
struct DenseWidth {
    double width = 0.0;
    Vec direction;
};
DenseWidth dense_width_oracle(const PointPolytope& s, double delta);

}  // namespace polyapprox
