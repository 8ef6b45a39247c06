#include "polyapprox/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polyapprox {

std::string_view to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::SphereShell: return "sphere-shell";
        case InstanceKind::RotatedBox: return "rotated-box";
        case InstanceKind::Simplex: return "simplex";
        case InstanceKind::RandomHull: return "random-hull";
        case InstanceKind::NearTouchingPair: return "near-touching-pair";
    }
    return "unknown";
}

InstanceKind parse_instance_kind(std::string_view s) {
    for (auto k : {InstanceKind::SphereShell, InstanceKind::RotatedBox, InstanceKind::Simplex, InstanceKind::RandomHull,
                   InstanceKind::NearTouchingPair})
        if (to_string(k) == s) return k;
    throw Error(ErrorCode::InvalidParameter, "unknown instance kind '" + std::string(s) + "'");
}

namespace {

// Distribution objects are not guaranteed to produce the same stream across
// standard libraries, so the uniforms are taken straight from the engine.
double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double gaussian(Rng& rng) {
    // Box-Muller; u1 in (0, 1]
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec random_offset(int d, Rng& rng) {
    Vec t(d);
    for (int j = 0; j < d; ++j) t[j] = uniform(rng, -1.0, 1.0);
    return t;
}

}  // namespace

Vec random_unit(int d, Rng& rng) {
    check_dim(d);
    Vec v(d);
    do {
        for (int j = 0; j < d; ++j) v[j] = gaussian(rng);
    } while (v.norm() < 1e-12);
    return v.normalized();
}

SquareMat random_rotation(int d, Rng& rng) {
    check_dim(d);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = gaussian(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

PointPolytope sphere_shell(int d, Eigen::Index n, std::uint64_t seed, double inner) {
    check_dim(d);
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
    if (!(inner > 0.0 && inner <= 1.0)) throw Error(ErrorCode::InvalidParameter, "inner radius must lie in (0, 1]");
    Rng rng(seed);
    PointMat pts(d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double radius = inner < 1.0 ? uniform(rng, inner, 1.0) : 1.0;
        pts.col(i) = radius * random_unit(d, rng);
    }
    return PointPolytope(std::move(pts));
}

AnalyticInstance rotated_box(const Vec& half_extents, std::uint64_t seed) {
    const int d = static_cast<int>(half_extents.size());
    check_dim(d);
    if (!(half_extents.minCoeff() > 0.0)) throw Error(ErrorCode::InvalidParameter, "half extents must be positive");
    Rng rng(seed);
    const SquareMat rot = random_rotation(d, rng);
    const Vec offset = random_offset(d, rng);
    const Eigen::Index n = Eigen::Index{1} << d;
    PointMat pts(d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vec corner(d);
        for (int j = 0; j < d; ++j) corner[j] = ((i >> j) & 1) ? half_extents[j] : -half_extents[j];
        pts.col(i) = rot * corner + offset;
    }
    return AnalyticInstance{PointPolytope(std::move(pts)), 2.0 * half_extents.minCoeff()};
}

AnalyticInstance rotated_box(int d, std::uint64_t seed) {
    check_dim(d);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Vec half(d);
    for (int j = 0; j < d; ++j) half[j] = uniform(rng, 0.2, 1.0);
    return rotated_box(half, seed);
}

double regular_simplex_width(int d, double edge) {
    const double dd = d;
    if (d % 2 == 1) return edge * std::sqrt(2.0 / (dd + 1.0));
    return edge * std::sqrt(2.0 * (dd + 1.0)) / (std::sqrt(dd) * std::sqrt(dd + 2.0));
}

AnalyticInstance regular_simplex(int d, std::uint64_t seed) {
    check_dim(d);
    // orthonormal basis of the hyperplane sum x = 0 in R^{d+1}
    Eigen::MatrixXd centered = Eigen::MatrixXd::Identity(d + 1, d + 1);
    centered.array() -= 1.0 / (d + 1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullU);
    const Eigen::MatrixXd basis = svd.matrixU().leftCols(d);
    PointMat pts = basis.transpose() * centered;
    if (seed != 0) {
        Rng rng(seed);
        pts = Eigen::MatrixXd(random_rotation(d, rng)) * pts;
    }
    return AnalyticInstance{PointPolytope(std::move(pts)), regular_simplex_width(d, std::sqrt(2.0))};
}

PointPolytope random_hull(int d, Eigen::Index n, std::uint64_t seed) {
    check_dim(d);
    if (n < d + 1) throw Error(ErrorCode::InvalidParameter, "random hull needs n >= d + 1");
    Rng rng(seed);
    Vec scale(d);
    for (int j = 0; j < d; ++j) scale[j] = uniform(rng, 0.3, 1.0);
    const SquareMat rot = random_rotation(d, rng);
    const Vec offset = random_offset(d, rng);
    PointMat pts(d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vec g(d);
        for (int j = 0; j < d; ++j) g[j] = scale[j] * gaussian(rng);
        pts.col(i) = rot * g + offset;
    }
    return PointPolytope(std::move(pts));
}

PolytopePair near_touching_pair(int d, Eigen::Index n, double eps, double margin, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");
    if (!std::isfinite(margin)) throw Error(ErrorCode::InvalidParameter, "margin must be finite");
    Rng rng(seed);
    const std::uint64_t seed_a = rng(), seed_b = rng();
    PointPolytope a = random_hull(d, n, seed_a);
    PointPolytope b = random_hull(d, n, seed_b);
    const Vec u = random_unit(d, rng);

    PolytopePair out;
    if (margin > 0.0) {
        const double gap = margin * eps * std::max(width_exact(a, u), width_exact(b, u));
        const double shift = support(a, u).value + support(b, -u).value + gap;
        out.b = PointPolytope(b.points().colwise() + Eigen::VectorXd(shift * u));
        out.a = std::move(a);
        out.certificate.direction = u;
        out.certificate.gap = -support(out.b, -u).value - support(out.a, u).value;
        return out;
    }
    const double t = std::clamp(1.0 + margin * eps, 0.0, 1.0);
    const Vec ca = a.points().rowwise().mean();
    const Vec cb = b.points().rowwise().mean();
    const Vec xa = ca + t * (support(a, u).witness - ca);
    const Vec yb = cb + t * (support(b, -u).witness - cb);
    out.b = PointPolytope(b.points().colwise() + Eigen::VectorXd(xa - yb));
    out.a = std::move(a);
    out.certificate.intersecting = true;
    out.certificate.witness = xa;
    out.certificate.direction = u;
    return out;
}

}  // namespace polyapprox
