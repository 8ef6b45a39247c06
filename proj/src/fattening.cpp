#include "polyapprox/fattening.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace polyapprox {

namespace {

struct Candidate {
    SymmetricBody body;
    bool valid = false;
};

// Orthonormal axes from repeated farthest-point scans on the residual after
// projecting out earlier axes.
SquareMat double_scan_axes(const PointMat& pts, double rel_tol, double diameter) {
    const auto d = pts.rows();
    const auto n = pts.cols();
    PointMat residual = pts;
    SquareMat axes(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        auto farthest_from = [&](Eigen::Index from) {
            Eigen::Index best = 0;
            double best_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double dist = (residual.col(i) - residual.col(from)).squaredNorm();
                if (dist > best_d) {
                    best_d = dist;
                    best = i;
                }
            }
            return best;
        };
        const Eigen::Index a = farthest_from(0);
        const Eigen::Index b = farthest_from(a);
        Eigen::VectorXd e = residual.col(b) - residual.col(a);
        for (Eigen::Index j = 0; j < k; ++j) e -= axes.col(j).dot(e) * Eigen::VectorXd(axes.col(j));
        const double len = e.norm();
        if (!(len > rel_tol * diameter))
            throw Error(ErrorCode::NotFullDimensional, "point set is flat along some direction");
        e /= len;
        axes.col(k) = e;
        const Eigen::RowVectorXd proj = e.transpose() * residual;
        residual -= e * proj;
    }
    return axes;
}

}  // namespace

SymmetricBody SymmetricBody::apply(const AffineMap& map) const {
    if (map.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "body and map dimensions differ");
    return SymmetricBody{map.apply(center), Eigen::MatrixXd(map.matrix()) * generators, lambda};
}

DirectionNet lambda_sample(int dim) {
    std::size_t count = 10;
    for (int i = 0; i < dim; ++i) count *= 3;
    return DirectionNet::with_min_size(dim, count);
}

double certify_lambda(const SymmetricBody& body, const PointPolytope& s, const DirectionNet& sample) {
    const auto d = s.dim();
    // Sample uniformly in the frame where C is round; the ratio along v there
    // equals the ratio along W^T v in the original frame.
    const Eigen::MatrixXd wt = Eigen::MatrixXd(fatten_transform(body).matrix()).transpose();
    Eigen::MatrixXd dirs(d, static_cast<Eigen::Index>(sample.size()));
    for (std::size_t i = 0; i < sample.size(); ++i)
        dirs.col(static_cast<Eigen::Index>(i)) = wt * Eigen::VectorXd(sample[i]);
    const Eigen::RowVectorXd h_s = (s.points().transpose() * dirs).colwise().maxCoeff();
    const Eigen::RowVectorXd c_dot = Eigen::VectorXd(body.center).transpose() * dirs;
    const Eigen::MatrixXd gv = body.generators.transpose() * dirs;
    const Eigen::RowVectorXd h_c = gv.cwiseAbs().colwise().sum();
    const double scale = h_c.maxCoeff();
    double lambda = 1.0;
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
        const double inner = h_s[i] - c_dot[i];
        if (!(inner > kDefaultRelTol * scale)) return std::numeric_limits<double>::infinity();
        lambda = std::max(lambda, h_c[i] / inner);
    }
    return lambda;
}

SymmetricBody sandwich_box(const PointPolytope& s, double rel_tol) {
    const PointMat& pts = s.points();
    const auto d = pts.rows();
    const Eigen::VectorXd lo_aabb = pts.rowwise().minCoeff();
    const Eigen::VectorXd hi_aabb = pts.rowwise().maxCoeff();
    const double diameter = (hi_aabb - lo_aabb).norm();
    if (!(diameter > 0.0)) throw Error(ErrorCode::NotFullDimensional, "all points coincide");

    const SquareMat scan_axes = double_scan_axes(pts, rel_tol, diameter);
    const SquareMat axis_sets[2] = {SquareMat::Identity(d, d), scan_axes};
    const DirectionNet sample = lambda_sample(static_cast<int>(d));

    SymmetricBody best;
    double best_lambda = std::numeric_limits<double>::infinity();
    for (const SquareMat& axes : axis_sets) {
        const Eigen::MatrixXd proj = axes.transpose() * pts;
        Eigen::VectorXd lo(d), hi(d), extreme_centroid = Eigen::VectorXd::Zero(d);
        for (Eigen::Index j = 0; j < d; ++j) {
            Eigen::Index imin = 0, imax = 0;
            lo[j] = proj.row(j).minCoeff(&imin);
            hi[j] = proj.row(j).maxCoeff(&imax);
            extreme_centroid += proj.col(imin) + proj.col(imax);
        }
        extreme_centroid /= static_cast<double>(2 * d);
        const Eigen::VectorXd extent = hi - lo;
        if (!(extent.minCoeff() > rel_tol * diameter)) continue;

        const Eigen::VectorXd centers[2] = {0.5 * (lo + hi), extreme_centroid};
        for (const auto& cp : centers) {
            const Eigen::VectorXd half = (hi - cp).cwiseMax(cp - lo);
            SymmetricBody body{Vec(axes * cp), Eigen::MatrixXd(axes) * half.asDiagonal(), 1.0};
            const double lambda = certify_lambda(body, s, sample);
            if (lambda < best_lambda) {
                best_lambda = lambda;
                body.lambda = lambda;
                best = std::move(body);
            }
        }
    }
    if (!std::isfinite(best_lambda))
        throw Error(ErrorCode::NotFullDimensional, "no candidate box has an interior center");
    return best;
}

SymmetricBody minkowski_body(const SymmetricBody& a, const SymmetricBody& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "bodies differ in dimension");
    Eigen::MatrixXd g(a.dim(), a.generators.cols() + b.generators.cols());
    g << a.generators, b.generators;
    return SymmetricBody{a.center + b.center, std::move(g), std::max(a.lambda, b.lambda)};
}

SymmetricBody negate_body(const SymmetricBody& c) { return SymmetricBody{-c.center, c.generators, c.lambda}; }

SymmetricBody ball_body(const Vec& center, double radius) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidParameter, "ball radius must be >= 0");
    const auto d = center.size();
    const double lambda = radius > 0.0 ? std::sqrt(static_cast<double>(d)) : 1.0;
    return SymmetricBody{center, radius * Eigen::MatrixXd::Identity(d, d), lambda};
}

AffineMap fatten_transform(const SymmetricBody& body) {
    const auto d = body.dim();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(body.generators, Eigen::ComputeFullU);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() < d || !(sv[0] > 0.0) || !(sv[d - 1] > 1e-12 * sv[0]))
        throw Error(ErrorCode::NotFullDimensional, "generators do not span the space");
    const Eigen::MatrixXd& u = svd.matrixU();

    // Signed permutation sending each principal axis to the coordinate axis it
    // is closest to, so a box is mapped onto an axis-aligned cube.
    SquareMat w = SquareMat::Zero(d, d);
    std::vector<char> used(static_cast<std::size_t>(d), 0);
    for (Eigen::Index k = 0; k < d; ++k) {
        Eigen::Index axis = -1;
        for (Eigen::Index j = 0; j < d; ++j)
            if (!used[static_cast<std::size_t>(j)] && (axis < 0 || std::abs(u(j, k)) > std::abs(u(axis, k))))
                axis = j;
        used[static_cast<std::size_t>(axis)] = 1;
        const double sign = u(axis, k) < 0.0 ? -1.0 : 1.0;
        w.row(axis) = (sign / sv[k]) * u.col(k).transpose();
    }
    Vec t = -(w * body.center);
    return AffineMap(std::move(w), std::move(t));
}

}  // namespace polyapprox
