#pragma once

// Deterministic instance generators. The same (kind, d, n, seed) always
// yields bitwise-identical points.

#include <cstdint>
#include <random>
#include <string_view>

#include "polyapprox/geometry.hpp"

namespace polyapprox {

enum class InstanceKind { SphereShell, RotatedBox, Simplex, RandomHull, NearTouchingPair };

std::string_view to_string(InstanceKind k);
InstanceKind parse_instance_kind(std::string_view s);

using Rng = std::mt19937_64;

/// Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
SquareMat random_rotation(int d, Rng& rng);
Vec random_unit(int d, Rng& rng);

/// n points with directions uniform on the sphere and radii uniform in [inner, 1].
PointPolytope sphere_shell(int d, Eigen::Index n, std::uint64_t seed, double inner = 1.0);

struct AnalyticInstance {
    PointPolytope points;
    double width = 0.0;
};

/// Corners of a randomly rotated box with half extents drawn from [0.2, 1]
/// (or the given ones); translated by a random offset in [-1, 1]^d.
AnalyticInstance rotated_box(int d, std::uint64_t seed);
AnalyticInstance rotated_box(const Vec& half_extents, std::uint64_t seed);

/// Regular simplex with edge sqrt(2) (the image of e_1..e_{d+1}), randomly
/// rotated when seed != 0.
AnalyticInstance regular_simplex(int d, std::uint64_t seed = 0);
/// Width of the regular simplex with the given edge length.
double regular_simplex_width(int d, double edge);

/// Anisotropic Gaussian cloud: axis scales in [0.3, 1], random rotation and offset.
PointPolytope random_hull(int d, Eigen::Index n, std::uint64_t seed);

struct PairCertificate {
    bool intersecting = false;
    Vec witness;     // common point when intersecting
    Vec direction;   // unit separating direction when disjoint
    double gap = 0.0;  // min_B u.x - max_A u.x when disjoint
};

struct PolytopePair {
    PointPolytope a;
    PointPolytope b;
    PairCertificate certificate;
};

/// Two random hulls. margin > 0: B is pushed along a random unit u until the
/// gap is margin * eps * max(width_u(A), width_u(B)). margin <= 0: a point at
/// relative depth (1 + margin * eps) toward each body's extreme vertex is made
/// common, so the pair intersects and the witness is that point.
PolytopePair near_touching_pair(int d, Eigen::Index n, double eps, double margin, std::uint64_t seed);

}  // namespace polyapprox
