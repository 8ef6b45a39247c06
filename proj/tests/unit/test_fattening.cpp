#include <doctest.h>

#include <cmath>
#include <random>

#include "polyapprox/direction_net.hpp"
#include "polyapprox/fattening.hpp"
#include "polyapprox/generators.hpp"
#include "scan.hpp"

using namespace polyapprox;
using scan::vec;

namespace {

// Largest angle from a random probe to its nearest net direction, by brute force.
double probe_covering(const DirectionNet& net, int probes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const Vec u = scan::unit(net.dim(), rng);
        double best = -1.0;
        for (const Vec& w : net.directions()) best = std::max(best, u.dot(w));
        worst = std::max(worst, std::acos(std::min(1.0, best)));
    }
    return worst;
}

double width_ratio(const PointPolytope& s, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double w = scan::width(s.points(), scan::unit(s.dim(), rng));
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    return lo / hi;
}

}  // namespace

TEST_CASE("direction net covers the sphere") {
    for (int d = 2; d <= 4; ++d) {
        const DirectionNet net(d, 0.2);
        CHECK(net.covering_angle() <= 0.2);
        CHECK(probe_covering(net, 2000, d) <= net.covering_angle() + 1e-12);
        for (const Vec& w : net.directions()) CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("direction net lookup returns a covering direction") {
    DirectionNet net(3, 0.15);
    net.enable_lookup();
    std::mt19937_64 rng(2);
    for (int k = 0; k < 500; ++k) {
        const Vec u = scan::unit(3, rng);
        const double angle = std::acos(std::min(1.0, u.dot(net[net.nearest(u)])));
        CHECK(angle <= net.covering_angle() + 1e-12);
    }
}

TEST_CASE("direction net has no duplicate nodes") {
    const DirectionNet net = DirectionNet::with_divisions(3, 4);
    const std::size_t expected = 5 * 5 * 5 - 3 * 3 * 3;
    CHECK(net.size() == expected);
    for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = i + 1; j < net.size(); ++j) CHECK((net[i] - net[j]).norm() > 1e-9);
}

TEST_CASE("oversized nets raise a size error") {
    CHECK_THROWS_AS(DirectionNet(8, 0.01), Error);
}

TEST_CASE("axis box sandwiches itself") {
    const PointPolytope s(scan::box_corners(vec({0, 0}), vec({2, 4})));
    const SymmetricBody b = sandwich_box(s);
    CHECK(b.center.isApprox(vec({1, 2})));
    CHECK(b.lambda == doctest::Approx(1.0));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const Vec v = scan::unit(2, rng);
        CHECK(b.support(v) == doctest::Approx(scan::max_dot(s.points(), v)));
    }
}

TEST_CASE("segments are not full-dimensional") {
    PointMat seg(2, 2);
    seg << 0, 1, 0, 1;
    try {
        sandwich_box(PointPolytope(seg));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFullDimensional);
    }
}

TEST_CASE("box around points on the circle") {
    const PointPolytope s = sphere_shell(2, 10000, 17);
    const SymmetricBody b = sandwich_box(s);
    for (Eigen::Index j = 0; j < 2; ++j) {
        const double h = b.generators.col(j).norm();
        CHECK(h >= 0.7);
        CHECK(h <= 1.0 + 1e-12);
    }
    // the outer side is exact; lambda is certified on its own sample and the
    // downstream safety factor 2 covers the directions in between
    for (int k = 0; k < 360; ++k) {
        const double t = 2 * M_PI * k / 360;
        const Vec v = vec({std::cos(t), std::sin(t)});
        const double hs = scan::max_dot(s.points(), v) - b.center.dot(v);
        const double hc = b.centered_support(v);
        CHECK(hs <= hc * (1 + 1e-12));
        CHECK(hc <= 2 * b.lambda * hs);
    }
    for (const Vec& v : lambda_sample(2).directions()) {
        const double hs = scan::max_dot(s.points(), v) - b.center.dot(v);
        CHECK(b.centered_support(v) <= b.lambda * hs * (1 + 1e-12));
    }
}

TEST_CASE("sandwich containment on random hulls") {
    std::mt19937_64 rng(31);
    for (int d = 2; d <= 5; ++d) {
        const PointPolytope s = random_hull(d, 300, 40 + d);
        const SymmetricBody b = sandwich_box(s);
        CHECK(b.lambda >= 1.0);
        CHECK(b.lambda <= std::pow(d, 1.5));
        for (int k = 0; k < 500; ++k) {
            const Vec v = scan::unit(d, rng);
            const double hs = scan::max_dot(s.points(), v) - b.center.dot(v);
            CHECK(hs <= b.centered_support(v) * (1 + 1e-12));
        }
    }
}

TEST_CASE("minkowski body adds supports") {
    const SymmetricBody a{vec({0, 0}), Eigen::MatrixXd::Identity(2, 2), 1.0};
    const SymmetricBody b{vec({0, 0}), 2 * Eigen::MatrixXd::Identity(2, 2), 1.5};
    const SymmetricBody s = minkowski_body(a, b);
    CHECK(s.generators.cols() == 4);
    CHECK(s.lambda == 1.5);
    CHECK(s.support(vec({1, 0})) == 3.0);
    CHECK(s.support(vec({1, 1})) == 6.0);

    const SymmetricBody pt{vec({3, -1}), Eigen::MatrixXd(2, 0), 1.0};
    const SymmetricBody moved = minkowski_body(a, pt);
    CHECK(moved.center == vec({3, -1}));

    Eigen::MatrixXd g(2, 2);
    g << 1, -1, 1, 1;
    const SymmetricBody rot{vec({1, 2}), g / std::sqrt(2.0), 1.0};
    const SymmetricBody sum = minkowski_body(a, rot);
    for (int k = 0; k < 360; ++k) {
        const double t = 2 * M_PI * k / 360;
        const Vec v = vec({std::cos(t), std::sin(t)});
        CHECK(sum.support(v) == doctest::Approx(a.support(v) + rot.support(v)).epsilon(1e-12));
    }
}

TEST_CASE("negated body") {
    const SymmetricBody a{vec({1, 2}), Eigen::MatrixXd::Identity(2, 2), 1.0};
    const SymmetricBody n = negate_body(negate_body(a));
    CHECK(n.center == a.center);
    std::mt19937_64 rng(6);
    for (int k = 0; k < 50; ++k) {
        const Vec v = scan::unit(2, rng);
        CHECK(negate_body(a).support(v) == doctest::Approx(a.support(-v)));
    }
    const SymmetricBody o{vec({0, 0}), Eigen::MatrixXd::Identity(2, 2), 1.0};
    CHECK(negate_body(o).support(vec({0.3, 0.9})) == o.support(vec({0.3, 0.9})));
}

TEST_CASE("whitening an axis box gives the unit square") {
    SymmetricBody b{vec({0, 0}), Eigen::MatrixXd::Zero(2, 2), 1.0};
    b.generators(0, 0) = 1.0;
    b.generators(1, 1) = 10.0;
    const AffineMap t = fatten_transform(b);
    CHECK(t.matrix()(0, 0) == doctest::Approx(1.0));
    CHECK(t.matrix()(1, 1) == doctest::Approx(0.1));
    const PointPolytope img = t.apply(PointPolytope(scan::box_corners(vec({-1, -10}), vec({1, 10}))));
    for (Eigen::Index i = 0; i < img.size(); ++i)
        CHECK(img.point(i).cwiseAbs().isApprox(vec({1, 1})));
}

TEST_CASE("whitening a cube is a similarity") {
    Rng rng(12);
    const SquareMat q = random_rotation(3, rng);
    const SymmetricBody b{vec({1, 1, 1}), Eigen::MatrixXd(q) * 3.0, 1.0};
    const SquareMat m = fatten_transform(b).matrix();
    const SquareMat gram = m.transpose() * m;
    CHECK((gram - gram(0, 0) * SquareMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fattened thin simplex is fat") {
    PointMat p(3, 4);
    p << 0, 1, 0, 0,
         0, 0, 0.05, 0,
         0, 0, 0, 0.002;
    const PointPolytope s(p);
    const AffineMap t = fatten_transform(sandwich_box(s));
    CHECK(width_ratio(t.apply(s), 1000, 1) >= 1.0 / 9.0);
    CHECK(width_ratio(s, 1000, 1) < 0.01);

    // fattening again changes little
    const PointPolytope once = t.apply(s);
    const PointPolytope twice = fatten_transform(sandwich_box(once)).apply(once);
    const double r1 = width_ratio(once, 1000, 2), r2 = width_ratio(twice, 1000, 2);
    CHECK(std::abs(r2 - r1) <= 0.1 * r1 + 1e-12);
}

TEST_CASE("flat generators cannot be whitened") {
    Eigen::MatrixXd g(2, 2);
    g << 1, 2, 1, 2;
    CHECK_THROWS_AS(fatten_transform(SymmetricBody{vec({0, 0}), g, 1.0}), Error);
}
