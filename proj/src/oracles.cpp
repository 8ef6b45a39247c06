#include "polyapprox/oracles.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "point_tree.hpp"
#include "polyapprox/direction_net.hpp"
#include "polyapprox/fattening.hpp"

namespace polyapprox {

std::string_view to_string(ExactVerdict v) {
    switch (v) {
        case ExactVerdict::Intersecting: return "intersecting";
        case ExactVerdict::Disjoint: return "disjoint";
        case ExactVerdict::Ambiguous: return "ambiguous";
    }
    return "unknown";
}

ExactIntersection lp_intersect_exact(const PointPolytope& a, const PointPolytope& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "polytopes differ in dimension");
    const int d = a.dim();
    const Eigen::Index na = a.size(), nb = b.size();
    if (na > 10'000 || nb > 10'000) throw Error(ErrorCode::SizeLimit, "oracle input above 10^4 points");

    const Eigen::VectorXd lo = a.points().rowwise().minCoeff().cwiseMin(b.points().rowwise().minCoeff());
    const Eigen::VectorXd hi = a.points().rowwise().maxCoeff().cwiseMax(b.points().rowwise().maxCoeff());
    const Eigen::VectorXd center = 0.5 * (lo + hi);
    double scale = (hi - lo).norm();
    if (!(scale > 0.0)) scale = 1.0;

    // columns: lambda (na), mu (nb), s+ (d), s- (d)
    const Eigen::Index cols = na + nb + 2 * d;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d + 2, cols);
    m.block(0, 0, d, na) = (a.points().colwise() - center) / scale;
    m.block(0, na, d, nb) = -(b.points().colwise() - center) / scale;
    m.block(0, na + nb, d, d).setIdentity();
    m.block(0, na + nb + d, d, d) = -Eigen::MatrixXd::Identity(d, d);
    m.block(d, 0, 1, na).setOnes();
    m.block(d + 1, na, 1, nb).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 2);
    rhs[d] = rhs[d + 1] = 1.0;
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
    cost.tail(2 * d).setOnes();

    const LpResult lp = solve_standard_lp(m, rhs, cost);
    if (lp.status != LpStatus::Optimal) throw Error(ErrorCode::Internal, "intersection lp did not converge");
    ExactIntersection out;
    out.residual = std::max(lp.value, 0.0);
    out.witness = a.points() * lp.primal.head(na);
    if (out.residual <= 1e-9)
        out.verdict = ExactVerdict::Intersecting;
    else if (out.residual >= 1e-8)
        out.verdict = ExactVerdict::Disjoint;
    else
        out.verdict = ExactVerdict::Ambiguous;
    return out;
}

PointPolytope pairwise_minkowski_exact(const PointPolytope& a, const PointPolytope& b, bool negate_b) {
    return pairwise_sum(a, b, negate_b, 1'000'000);
}

HullDistance hull_distance(const PointPolytope& s, const Vec& y) {
    if (y.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
    const PointMat p = s.points().colwise() - Eigen::VectorXd(y);
    const double scale2 = std::max(p.colwise().squaredNorm().maxCoeff(), 1e-300);
    const double tol = 1e-14 * scale2;

    std::vector<Eigen::Index> set;
    std::vector<double> w;
    {
        Eigen::Index first = 0;
        p.colwise().squaredNorm().minCoeff(&first);
        set.push_back(first);
        w.push_back(1.0);
    }
    auto combine = [&](const std::vector<double>& weights) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(p.rows());
        for (std::size_t i = 0; i < set.size(); ++i) x += weights[i] * p.col(set[i]);
        return x;
    };
    Eigen::VectorXd x = combine(w);

    for (int outer = 0; outer < 10'000; ++outer) {
        Eigen::Index j = 0;
        (p.transpose() * x).minCoeff(&j);
        if (x.squaredNorm() - p.col(j).dot(x) <= tol) break;
        bool present = false;
        for (Eigen::Index k : set) present = present || k == j;
        if (present) break;
        set.push_back(j);
        w.push_back(0.0);

        while (true) {
            const auto k = static_cast<Eigen::Index>(set.size());
            Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
            for (Eigen::Index r = 0; r < k; ++r) {
                for (Eigen::Index c = 0; c < k; ++c) sys(r, c) = p.col(set[r]).dot(p.col(set[c]));
                sys(r, k) = sys(k, r) = 1.0;
            }
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
            rhs[k] = 1.0;
            const Eigen::VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
            bool interior = true;
            for (Eigen::Index r = 0; r < k; ++r) interior = interior && sol[r] > 1e-15;
            if (interior) {
                for (Eigen::Index r = 0; r < k; ++r) w[static_cast<std::size_t>(r)] = sol[r];
                break;
            }
            double theta = 1.0;
            for (Eigen::Index r = 0; r < k; ++r) {
                const double wr = w[static_cast<std::size_t>(r)];
                if (sol[r] <= 1e-15 && wr - sol[r] > 0.0) theta = std::min(theta, wr / (wr - sol[r]));
            }
            std::vector<Eigen::Index> keep_set;
            std::vector<double> keep_w;
            for (Eigen::Index r = 0; r < k; ++r) {
                const double nw = theta * sol[r] + (1.0 - theta) * w[static_cast<std::size_t>(r)];
                if (nw > 1e-15) {
                    keep_set.push_back(set[static_cast<std::size_t>(r)]);
                    keep_w.push_back(nw);
                }
            }
            if (keep_set.empty()) {
                keep_set.push_back(set.back());
                keep_w.push_back(1.0);
            }
            set = std::move(keep_set);
            w = std::move(keep_w);
        }
        x = combine(w);
    }
    HullDistance out;
    out.distance = x.norm();
    out.closest = Vec(x) + y;
    return out;
}

namespace {

// Is {x : U^T x <= b} non-empty? Solved as [U^T, -U^T, I] y = b, y >= 0.
bool primal_feasible(const Eigen::MatrixXd& ut, const Eigen::VectorXd& b) {
    const Eigen::Index d = ut.rows(), m = ut.cols();
    Eigen::MatrixXd a(m, 2 * d + m);
    a << ut.transpose(), -ut.transpose(), Eigen::MatrixXd::Identity(m, m);
    const LpResult lp = solve_standard_lp(a, b, Eigen::VectorXd::Zero(2 * d + m));
    if (lp.status == LpStatus::IterationLimit) throw Error(ErrorCode::Internal, "feasibility lp did not converge");
    return lp.status == LpStatus::Optimal;
}

}  // namespace

HalfspaceSupport halfspace_support(const HalfspacePolytope& h, const Vec& v) {
    check_direction(v);
    const int d = h.dim();
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
    const auto m = static_cast<Eigen::Index>(h.size());
    Eigen::MatrixXd ut(d, m);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        ut.col(i) = h.halfspaces()[static_cast<std::size_t>(i)].normal;
        b[i] = h.halfspaces()[static_cast<std::size_t>(i)].offset;
    }
    const LpResult lp = solve_standard_lp(ut, Eigen::VectorXd(v), b);
    HalfspaceSupport out;
    switch (lp.status) {
        case LpStatus::Optimal:
            out.status = LpStatus::Optimal;
            out.value = lp.value;
            out.maximizer = lp.dual;
            break;
        case LpStatus::Infeasible: out.status = primal_feasible(ut, b) ? LpStatus::Unbounded : LpStatus::Infeasible; break;
        case LpStatus::Unbounded: out.status = LpStatus::Infeasible; break;
        case LpStatus::IterationLimit: throw Error(ErrorCode::Internal, "support lp did not converge");
    }
    return out;
}

ChebyshevBall chebyshev_ball(const HalfspacePolytope& h) {
    const int d = h.dim();
    const auto m = static_cast<Eigen::Index>(h.size());
    if (m == 0) return ChebyshevBall{LpStatus::Unbounded, Vec::Zero(d), 0.0};
    Eigen::MatrixXd a(d + 1, m);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Hyperplane& hp = h.halfspaces()[static_cast<std::size_t>(i)];
        a.col(i).head(d) = hp.normal;
        a(d, i) = hp.normal.norm();
        b[i] = hp.offset;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    rhs[d] = 1.0;
    const LpResult lp = solve_standard_lp(a, rhs, b);
    ChebyshevBall out;
    switch (lp.status) {
        case LpStatus::Optimal:
            out.status = LpStatus::Optimal;
            out.center = lp.dual.head(d);
            out.radius = lp.dual[d];
            break;
        case LpStatus::Infeasible: out.status = LpStatus::Unbounded; break;
        case LpStatus::Unbounded: out.status = LpStatus::Infeasible; break;
        case LpStatus::IterationLimit: throw Error(ErrorCode::Internal, "chebyshev lp did not converge");
    }
    return out;
}

DenseWidth dense_width_oracle(const PointPolytope& s, double delta) {
    if (!(delta > 0.0 && delta <= 0.1)) throw Error(ErrorCode::InvalidParameter, "delta must lie in (0, 0.1]");
    const AffineMap w = fatten_transform(sandwich_box(s));
    const DirectionNet net(s.dim(), delta);
    const detail::PointTree tree(s.points());
    DenseWidth out;
    out.width = std::numeric_limits<double>::infinity();
    Eigen::Index hint_hi = 0, hint_lo = 0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Vec v = w.pullback(net[i]).normalized();
        const Vec neg = -v;
        hint_hi = tree.max_dot(v.data(), hint_hi);
        hint_lo = tree.max_dot(neg.data(), hint_lo);
        const double width = s.points().col(hint_hi).dot(v) + s.points().col(hint_lo).dot(neg);
        if (width < out.width) {
            out.width = width;
            out.direction = v;
        }
    }

    // pattern search on the sphere from the best net direction
    const int d = s.dim();
    std::vector<Vec> moves;
    for (double step = delta; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(out.direction));
            const Eigen::MatrixXd basis = qr.householderQ();
            moves.clear();
            for (int i = 1; i < d; ++i) {
                moves.push_back(basis.col(i));
                moves.push_back(-basis.col(i));
                for (int j = i + 1; j < d; ++j) {
                    moves.push_back((basis.col(i) + basis.col(j)) / std::sqrt(2.0));
                    moves.push_back((basis.col(i) - basis.col(j)) / std::sqrt(2.0));
                    moves.push_back((-basis.col(i) + basis.col(j)) / std::sqrt(2.0));
                    moves.push_back((-basis.col(i) - basis.col(j)) / std::sqrt(2.0));
                }
            }
            for (const Vec& m : moves) {
                const Vec v = (out.direction + step * m).normalized();
                const Vec neg = -v;
                hint_hi = tree.max_dot(v.data(), hint_hi);
                hint_lo = tree.max_dot(neg.data(), hint_lo);
                const double width = s.points().col(hint_hi).dot(v) + s.points().col(hint_lo).dot(neg);
                if (width < out.width * (1 - 1e-15)) {
                    out.width = width;
                    out.direction = v;
                    improved = true;
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace polyapprox
