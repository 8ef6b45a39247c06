#include "polyapprox/minkowski.hpp"

#include <cmath>
#include <set>

#include "polyapprox/direction_net.hpp"
#include "polyapprox/fattening.hpp"
#include "polyapprox/oracles.hpp"

namespace polyapprox {

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");
}

// x -> W (x - c) / sqrt(m) for the sandwiching body of k.
AffineMap unit_frame(const SymmetricBody& body) {
    Eigen::Index live = 0;
    for (Eigen::Index j = 0; j < body.generators.cols(); ++j)
        if (body.generators.col(j).squaredNorm() > 0.0) ++live;
    const AffineMap whiten = fatten_transform(body);
    const double s = 1.0 / std::sqrt(static_cast<double>(live));
    return AffineMap(whiten.matrix() * s, whiten.translation_part() * s);
}

double upper_support(const SumBody& k, const Vec& u, Vec* witness) {
    if (witness) {
        const SumSupport s = k.support(u);
        *witness = s.witness;
        return s.value + s.error;
    }
    double err = 0.0;
    const double v = k.support(u, err);
    return v + err;
}

}  // namespace

SphereNet sphere_net(int dim, double eps, double c_dud, double radius) {
    check_eps(eps);
    if (!(c_dud > 0.0) || !(radius > 0.0)) throw Error(ErrorCode::InvalidParameter, "net constant and radius must be > 0");
    // chord c_dud sqrt(eps) radius <-> angle 2 asin(chord / (2 radius))
    const double chord = c_dud * std::sqrt(eps) * radius;
    const double angle = 2.0 * std::asin(std::min(1.0, chord / (2.0 * radius)));
    const DirectionNet net(dim, angle);
    SphereNet out;
    out.radius = radius;
    out.resolution = 2.0 * radius * std::sin(0.5 * net.covering_angle());
    out.points.reserve(net.size());
    for (const Vec& u : net.directions()) out.points.push_back(radius * u);
    return out;
}

BoundarySample nearest_boundary_sample(const SumBody& k, const Vec& w, double eps, const MinkowskiOptions& options) {
    check_eps(eps);
    if (w.size() != k.dim()) throw Error(ErrorCode::DimensionMismatch, "net point dimension");
    check_direction(w);
    BoundarySample s;
    s.w = w;
    s.u = w.normalized();
    Vec p;
    s.lower = std::max(0.0, w.dot(s.u) - upper_support(k, s.u, &p));
    s.upper = (w - p).norm();
    s.w_prime = p;
    double hi = s.upper;  // may drop below s.upper on uncertified Intersecting answers
    const double tol = options.probe_tolerance * eps;
    while (hi - s.lower > tol) {
        if (s.probes >= 200) throw Error(ErrorCode::Internal, "radius search did not converge");
        const double rho = 0.5 * (s.lower + hi);
        const ApproxAnswer ans = intersect_with_ball(k, w, rho, eps, options.membership);
        ++s.probes;
        s.evaluations += ans.evaluations;
        if (ans.verdict == Verdict::Intersecting) {
            hi = rho;
            continue;
        }
        const Vec y = ans.direction.normalized();
        const double lb = w.dot(y) - upper_support(k, y, &p);
        if ((w - p).norm() < s.upper) {
            s.upper = (w - p).norm();
            s.w_prime = p;
        }
        hi = std::min(hi, s.upper);
        if (lb > s.lower) s.u = y;
        s.lower = std::max({s.lower, lb, rho});
    }
    s.rho = 0.5 * (s.lower + hi);
    return s;
}

Approximation approximate(const SumBody& k, double eps, const MinkowskiOptions& options) {
    check_eps(eps);
    const int d = k.dim();
    Approximation out;
    out.frame = unit_frame(k.body());
    const SumBody kf = k.transformed(out.frame);
    const AffineMap back = out.frame.inverse();
    const SquareMat mt = out.frame.matrix().transpose();
    const Vec& t = out.frame.translation_part();

    const SphereNet net = sphere_net(d, eps, options.c_dud);
    std::vector<Hyperplane> halfspaces;
    std::set<std::vector<double>> seen;
    PointMat inner(d, static_cast<Eigen::Index>(net.points.size()));
    out.samples.reserve(net.points.size());
    for (std::size_t i = 0; i < net.points.size(); ++i) {
        BoundarySample s = nearest_boundary_sample(kf, net.points[i], eps, options);
        out.probes += s.probes;
        out.evaluations += s.evaluations;
        // u . F(x) <= b  <=>  (M^T u) . x <= b - u . t
        const double b = upper_support(kf, s.u, nullptr);
        const Vec n = mt * s.u;
        const double len = n.norm();
        Hyperplane h(n / len, (b - s.u.dot(t)) / len);
        std::vector<double> key(h.normal.data(), h.normal.data() + d);
        key.push_back(h.offset);
        if (seen.insert(key).second) halfspaces.push_back(std::move(h));
        inner.col(static_cast<Eigen::Index>(i)) = back.apply(Vec(s.w_prime + options.outward_shift * eps * s.u));
        out.samples.push_back(std::move(s));
    }
    out.outer = HalfspacePolytope(d, std::move(halfspaces));
    out.inner = PointPolytope(inner);
    return out;
}

HalfspacePolytope dudley(const SumBody& k, double eps, const MinkowskiOptions& options) {
    return approximate(k, eps, options).outer;
}

HalfspacePolytope dudley(const WidthIndex& a, const WidthIndex& b, double eps, const MinkowskiOptions& options) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "indexes differ in dimension");
    SumBody k(a.dim());
    k.add(a).add(b);
    return dudley(k, eps, options);
}

PointPolytope bronshteyn_ivanov(const SumBody& k, double eps, const MinkowskiOptions& options) {
    return approximate(k, eps, options).inner;
}

PointPolytope bronshteyn_ivanov(const WidthIndex& a, const WidthIndex& b, double eps,
                                const MinkowskiOptions& options) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "indexes differ in dimension");
    SumBody k(a.dim());
    k.add(a).add(b);
    return bronshteyn_ivanov(k, eps, options);
}

HalfspacePolytope convert_to_halfspaces(const PointPolytope& p, double eps, const MinkowskiOptions& options) {
    check_eps(eps);
    const WidthIndex idx = WidthIndex::build(p, eps / kCalibration);
    SumBody k(p.dim());
    k.add(idx);
    return dudley(k, eps, options);
}

PointPolytope convert_to_points(const HalfspacePolytope& h, double eps, const MinkowskiOptions& options) {
    check_eps(eps);
    const int d = h.dim();
    if (h.size() == 0) throw Error(ErrorCode::Unbounded, "no halfspaces");
    // boundedness and a few vertices from coordinate and diagonal probes
    const DirectionNet probes = DirectionNet::with_divisions(d, 1);
    std::vector<Vec> vertices;
    for (const Vec& v : probes.directions()) {
        const HalfspaceSupport s = halfspace_support(h, v);
        if (s.status == LpStatus::Infeasible) throw Error(ErrorCode::Infeasible, "halfspaces have empty intersection");
        if (s.status == LpStatus::Unbounded) throw Error(ErrorCode::Unbounded, "halfspaces are unbounded");
        vertices.push_back(s.maximizer);
    }
    const ChebyshevBall ball = chebyshev_ball(h);
    if (ball.status != LpStatus::Optimal) throw Error(ErrorCode::Internal, "chebyshev ball failed");
    double scale = 0.0;
    for (const Vec& v : vertices) scale = std::max(scale, (v - ball.center).norm());
    if (!(ball.radius > 1e-9 * scale)) throw Error(ErrorCode::NotFullDimensional, "halfspaces enclose a flat set");

    // y = W (x - z): the polar origin z is the deepest point, W whitens the probed vertices
    const SquareMat w = fatten_transform(sandwich_box(PointPolytope::from_points(vertices))).matrix();
    const SquareMat w_inv_t = w.inverse().transpose();
    PointMat polar(d, static_cast<Eigen::Index>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Hyperplane& hp = h.halfspaces()[i];
        const double b = hp.offset - hp.normal.dot(ball.center);
        polar.col(static_cast<Eigen::Index>(i)) = w_inv_t * hp.normal / b;
    }
    const WidthIndex idx = WidthIndex::build(PointPolytope(polar), eps / kCalibration);
    SumBody k(d);
    k.add(idx);
    const HalfspacePolytope outer_polar = dudley(k, eps, options);

    const SquareMat w_inv = w.inverse();
    PointMat pts(d, static_cast<Eigen::Index>(outer_polar.size()));
    for (std::size_t j = 0; j < outer_polar.size(); ++j) {
        const Hyperplane& hp = outer_polar.halfspaces()[j];
        if (!(hp.offset > 0.0)) throw Error(ErrorCode::Internal, "polar approximation misses the origin");
        pts.col(static_cast<Eigen::Index>(j)) = w_inv * (hp.normal / hp.offset) + ball.center;
    }
    return PointPolytope(pts);
}

ApproxWidth approx_width(const WidthIndex& index, double eps, const MinkowskiOptions& options) {
    SumBody k(index.dim());
    k.add(index).add(index, true);
    const Approximation a = approximate(k, eps, options);
    ApproxWidth out;
    out.width = INFINITY;
    for (const Hyperplane& h : a.outer.halfspaces())
        if (h.offset < out.width) {
            out.width = h.offset;
            out.direction = h.normal;
        }
    out.halfspaces = a.outer.size();
    out.evaluations = a.evaluations;
    return out;
}

ApproxWidth approx_width(const PointPolytope& s, double eps, const MinkowskiOptions& options) {
    check_eps(eps);
    return approx_width(WidthIndex::build(s, eps / kCalibration), eps, options);
}

}  // namespace polyapprox
