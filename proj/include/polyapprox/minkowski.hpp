#pragma once

// Outer (Dudley) and inner (Bronshteyn-Ivanov) approximations of a sum body,
// representation conversion through polarity, and approximate width.
//
// Everything runs in the frame F(x) = W (x - c) / sqrt(m) of the sum's
// sandwiching body, where the body lies in the unit ball. Net points sit on
// the sphere of radius 2 around the origin of that frame.

#include <cstdint>
#include <vector>

#include "polyapprox/intersection.hpp"

namespace polyapprox {

struct SphereNet {
    std::vector<Vec> points;
    double radius = 0.0;
    double resolution = 0.0;  // every sphere point is this close to some net point
};

/// Net of spacing c_dud * sqrt(eps) * radius on the sphere of the given radius.
SphereNet sphere_net(int dim, double eps, double c_dud = 0.5, double radius = 2.0);

struct BoundarySample {
    Vec w;        // net point
    Vec w_prime;  // closest point of K met during the search, at distance `upper`
    Vec u;        // unit outward normal, certified: h_K(u) <= u . w - lower
    double rho = 0.0;    // contact radius estimate
    double lower = 0.0;  // certified lower bound on dist(w, K)
    double upper = 0.0;  // distance from w to a point of K
    int probes = 0;
    std::int64_t evaluations = 0;
};

struct MinkowskiOptions {
    double c_dud = 0.5;
    /// Stop the radius search when upper - lower <= probe_tolerance * eps.
    double probe_tolerance = 1.0;
    /// Bronshteyn-Ivanov samples moved outward by outward_shift * eps along u.
    double outward_shift = 0.0;
    MembershipOptions membership;
};

/// Binary search on the radius of a ball around w until its contact with K
/// is pinned down to probe_tolerance * eps.
BoundarySample nearest_boundary_sample(const SumBody& k, const Vec& w, double eps,
                                       const MinkowskiOptions& options = {});

struct Approximation {
    HalfspacePolytope outer;            // Dudley halfspaces, in the caller's coordinates
    PointPolytope inner;                // Bronshteyn-Ivanov samples, in the caller's coordinates
    AffineMap frame;                    // x -> F(x)
    std::vector<BoundarySample> samples;  // in frame coordinates, net order
    std::int64_t probes = 0;
    std::int64_t evaluations = 0;
};

/// Samples K from every net point and records both approximations.
Approximation approximate(const SumBody& k, double eps, const MinkowskiOptions& options = {});

HalfspacePolytope dudley(const SumBody& k, double eps, const MinkowskiOptions& options = {});
HalfspacePolytope dudley(const WidthIndex& a, const WidthIndex& b, double eps, const MinkowskiOptions& options = {});
PointPolytope bronshteyn_ivanov(const SumBody& k, double eps, const MinkowskiOptions& options = {});
PointPolytope bronshteyn_ivanov(const WidthIndex& a, const WidthIndex& b, double eps,
                                const MinkowskiOptions& options = {});

/// Point set -> halfspaces by an outer approximation of its hull.
HalfspacePolytope convert_to_halfspaces(const PointPolytope& p, double eps, const MinkowskiOptions& options = {});
/// Halfspaces -> points: polar of the Dudley approximation of the polar.
/// Empty or unbounded input raises Infeasible / Unbounded.
PointPolytope convert_to_points(const HalfspacePolytope& h, double eps, const MinkowskiOptions& options = {});

struct ApproxWidth {
    double width = 0.0;
    Vec direction;  // unit
    std::size_t halfspaces = 0;
    std::int64_t evaluations = 0;
};

/// Width of conv(S) as the distance from the origin to the boundary of the
/// outer approximation of S ⊕ (-S).
ApproxWidth approx_width(const PointPolytope& s, double eps, const MinkowskiOptions& options = {});
ApproxWidth approx_width(const WidthIndex& index, double eps, const MinkowskiOptions& options = {});

}  // namespace polyapprox
