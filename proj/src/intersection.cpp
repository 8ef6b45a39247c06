#include "polyapprox/intersection.hpp"

#include <cmath>

namespace polyapprox {

std::string_view to_string(Verdict v) { return v == Verdict::Intersecting ? "intersecting" : "disjoint"; }

SumBody& SumBody::add(const WidthIndex& index, const AffineMap& map, bool negate) {
    if (index.dim() != dim_ || map.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "term dimension");
    terms_.push_back(IndexTerm{&index, map, negate});
    return *this;
}

SumBody& SumBody::add(const WidthIndex& index, bool negate) { return add(index, AffineMap::identity(dim_), negate); }

SumBody& SumBody::add_ball(const Vec& center, double radius) {
    if (center.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "ball dimension");
    check_finite(center, "ball center");
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidParameter, "ball radius must be >= 0");
    balls_.push_back(BallTerm{center, radius});
    return *this;
}

double SumBody::support(const Vec& y, double& error) const {
    double value = 0.0;
    error = 0.0;
    for (const IndexTerm& t : terms_) {
        const Vec yy = t.negate ? Vec(-y) : y;
        const Vec u = t.map.pullback(yy);
        Eigen::Index hi = 0, lo = 0;
        t.index->extremes(u, hi, lo);
        const PointMat& q = t.index->kernel_points();
        const double hv = q.col(hi).dot(u), lv = q.col(lo).dot(u);
        value += hv + t.map.translation_part().dot(yy);
        const double e = t.index->eps();
        error += e * (hv - lv) / (1.0 - e);
    }
    for (const BallTerm& b : balls_) value += b.center.dot(y) + b.radius * y.norm();
    return value;
}

SumSupport SumBody::support(const Vec& y) const {
    check_direction(y);
    if (y.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
    SumSupport out;
    out.witness = Vec::Zero(dim_);
    for (const IndexTerm& t : terms_) {
        const Vec yy = t.negate ? Vec(-y) : y;
        const Vec u = t.map.pullback(yy);
        Eigen::Index hi = 0, lo = 0;
        t.index->extremes(u, hi, lo);
        const PointMat& q = t.index->kernel_points();
        const double hv = q.col(hi).dot(u), lv = q.col(lo).dot(u);
        const Vec p = t.map.apply(Vec(q.col(hi)));
        out.witness += t.negate ? Vec(-p) : p;
        out.value += hv + t.map.translation_part().dot(yy);
        const double e = t.index->eps();
        out.error += e * (hv - lv) / (1.0 - e);
    }
    const double ny = y.norm();
    for (const BallTerm& b : balls_) {
        out.value += b.center.dot(y) + b.radius * ny;
        out.witness += b.center + (b.radius / ny) * y;
    }
    return out;
}

SymmetricBody SumBody::body() const {
    SymmetricBody acc{Vec::Zero(dim_), Eigen::MatrixXd(dim_, 0), 1.0};
    for (const IndexTerm& t : terms_) {
        SymmetricBody b = t.index->body().apply(t.map);
        acc = minkowski_body(acc, t.negate ? negate_body(b) : b);
    }
    for (const BallTerm& b : balls_) {
        if (b.radius > 0.0)
            acc = minkowski_body(acc, ball_body(b.center, b.radius));
        else
            acc.center += b.center;
    }
    return acc;
}

SumBody SumBody::transformed(const AffineMap& t) const {
    if (t.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "map dimension");
    const AffineMap lin = AffineMap::linear(t.matrix());
    SumBody out(dim_);
    for (const IndexTerm& term : terms_) out.terms_.push_back(IndexTerm{term.index, lin.compose(term.map), term.negate});
    const SquareMat gram = t.matrix().transpose() * t.matrix();
    const double s2 = gram.trace() / dim_;
    const bool similarity = (gram - s2 * SquareMat::Identity(dim_, dim_)).norm() <= 1e-12 * s2;
    for (const BallTerm& b : balls_) {
        if (b.radius > 0.0 && !similarity)
            throw Error(ErrorCode::InvalidParameter, "balls admit only similarity transforms");
        out.balls_.push_back(BallTerm{lin.apply(b.center), b.radius * std::sqrt(s2)});
    }
    out.balls_.push_back(BallTerm{t.translation_part(), 0.0});
    return out;
}

CanonicalFrame canonical_frame(const SymmetricBody& body, double lambda_safety) {
    const int d = body.dim();
    Eigen::Index live = 0;
    for (Eigen::Index j = 0; j < body.generators.cols(); ++j)
        if (body.generators.col(j).squaredNorm() > 0.0) ++live;
    const AffineMap whiten = fatten_transform(body);
    const double root_m = std::sqrt(static_cast<double>(live));

    const SquareMat scaled = whiten.matrix() / root_m;
    const Vec c = scaled * body.center;
    CanonicalFrame f;
    f.beta = c.norm();
    SquareMat h = SquareMat::Identity(d, d);
    if (f.beta > 0.0) {
        Vec v = c / f.beta;
        v[d - 1] -= 1.0;
        const double vv = v.squaredNorm();
        if (vv > 1e-30) h -= (2.0 / vv) * v * v.transpose();
    }
    f.transform = AffineMap::linear(h * scaled);
    const double lambda_cert = lambda_safety * body.lambda;
    f.r = 1.0 / (lambda_cert * root_m);
    f.lambda = lambda_cert * root_m;
    f.delta = 2.0 * f.lambda * f.r;
    f.alpha = f.beta / f.r;
    return f;
}

ApproxAnswer membership_origin(const SumBody& k, double eps, const MembershipOptions& options) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "eps must lie in (0, 1)");
    for (const IndexTerm& t : k.terms())
        if (t.index->eps() > eps / kCalibration * (1.0 + 1e-12))
            throw Error(ErrorCode::InvalidParameter, "index eps exceeds eps / " + std::to_string(kCalibration));
    const int d = k.dim();

    ApproxAnswer ans;
    ans.frame = canonical_frame(k.body(), options.lambda_safety);
    const CanonicalFrame& f = ans.frame;
    ans.argmin = Vec::Zero(d - 1);
    if (f.beta <= options.inner_fraction * f.r) {
        ans.verdict = Verdict::Intersecting;
        ans.trivial = true;
        return ans;
    }
    if (f.beta > 1.0) {
        ans.verdict = Verdict::Disjoint;
        ans.trivial = true;
        // the direction toward the origin from the body center separates
        Vec v = Vec::Zero(d);
        v[d - 1] = -1.0;
        ans.direction = f.transform.pullback(v);
        double err = 0.0;
        ans.certified_upper = k.support(ans.direction, err);
        ans.certified_upper += err;
        return ans;
    }

    const SquareMat ft = f.transform.matrix().transpose();
    auto direction_at = [&](const Vec& r) {
        Vec v(d);
        v.head(d - 1) = r;
        v[d - 1] = -1.0;
        return Vec(ft * v);
    };
    double last_upper = 0.0;
    double tiny = 0.0;
    NoisyObjective obj;
    obj.slope_bound = options.slope_bound;
    obj.eps_eval = eps / kCalibration;
    obj.evaluator = [&](const Vec& r) {
        double err = 0.0;
        const double u = k.support(direction_at(r), err);
        last_upper = u + err;
        tiny = 1e-12 * (1.0 + std::abs(u) + err);
        return u + 0.5 * err;
    };
    obj.stop = [&](const Vec&, double) { return last_upper < -tiny; };

    const double resolution = options.resolution_factor * eps * f.r;
    const MinResult res = minimize_nd(obj, d - 1, -f.alpha, f.alpha, resolution);
    ans.evaluations = res.evaluations;
    ans.envelope_min = res.value;
    ans.argmin = res.argmin;
    ans.direction = direction_at(res.argmin);
    double err = 0.0;
    ans.certified_upper = k.support(ans.direction, err) + err;
    ans.verdict = res.stopped ? Verdict::Disjoint : Verdict::Intersecting;
    return ans;
}

ApproxAnswer approx_intersect(const WidthIndex& a, const WidthIndex& b, const AffineMap& map_a,
                              const AffineMap& map_b, double eps, const MembershipOptions& options) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "indexes differ in dimension");
    SumBody k(a.dim());
    k.add(a, map_a, false).add(b, map_b, true);
    return membership_origin(k, eps, options);
}

ApproxAnswer approx_intersect(const WidthIndex& a, const WidthIndex& b, double eps) {
    return approx_intersect(a, b, AffineMap::identity(a.dim()), AffineMap::identity(b.dim()), eps);
}

ApproxAnswer intersect_with_ball(const SumBody& k, const Vec& center, double radius, double eps,
                                 const MembershipOptions& options) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidParameter, "ball radius must be >= 0");
    SumBody shifted = k;
    shifted.add_ball(-center, radius);
    return membership_origin(shifted, eps, options);
}

ApproxAnswer intersect_with_ball(const WidthIndex& s, const Vec& center, double radius, double eps) {
    SumBody k(s.dim());
    k.add(s);
    return intersect_with_ball(k, center, radius, eps);
}

}  // namespace polyapprox
