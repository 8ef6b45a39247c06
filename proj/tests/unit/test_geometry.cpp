#include <doctest.h>

#include <cmath>
#include <random>

#include "polyapprox/generators.hpp"
#include "polyapprox/geometry.hpp"
#include "scan.hpp"

using namespace polyapprox;
using scan::vec;

namespace {

const PointPolytope& unit_square() {
    static const PointPolytope sq(scan::box_corners(vec({-1, -1}), vec({1, 1})));
    return sq;
}

}  // namespace

TEST_CASE("support on the square breaks ties by lowest index") {
    const Support s = support(unit_square(), vec({1, 0}));
    CHECK(s.value == 1.0);
    CHECK(s.index == 1);
    CHECK(s.witness == vec({1, -1}));
}

TEST_CASE("support of a single point") {
    const PointPolytope p(PointMat(vec({5, 5})));
    const Vec v = vec({0.3, -2});
    CHECK(support(p, v).value == doctest::Approx(5 * 0.3 - 10));
    CHECK(width_exact(p, v) == 0.0);
}

TEST_CASE("support matches an independent scan on random points") {
    std::mt19937_64 rng(11);
    const PointPolytope s = random_hull(4, 1000, 3);
    for (int k = 0; k < 50; ++k) {
        const Vec v = scan::unit(4, rng) * 3.0;
        CHECK(support(s, v).value == doctest::Approx(scan::max_dot(s.points(), v)).epsilon(1e-14));
    }
}

TEST_CASE("invalid directions are rejected") {
    CHECK_THROWS_AS(support(unit_square(), vec({0, 0})), Error);
    CHECK_THROWS_AS(support(unit_square(), vec({NAN, 1})), Error);
    try {
        width_exact(unit_square(), vec({0, 0}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidDirection);
    }
}

TEST_CASE("empty point sets are an error") {
    CHECK_THROWS_AS(PointPolytope(PointMat(2, 0)), Error);
}

TEST_CASE("exact widths of the square") {
    CHECK(width_exact(unit_square(), vec({1, 0})) == 2.0);
    CHECK(width_exact(unit_square(), vec({1, 1})) == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("width is symmetric and scale invariant") {
    std::mt19937_64 rng(5);
    for (int d = 2; d <= 5; ++d) {
        const PointPolytope s = random_hull(d, 40, 100 + d);
        for (int k = 0; k < 20; ++k) {
            const Vec v = scan::unit(d, rng);
            const double w = width_exact(s, v);
            CHECK(width_exact(s, -v) == doctest::Approx(w).epsilon(1e-12));
            CHECK(width_exact(s, 7.5 * v) == doctest::Approx(w).epsilon(1e-12));
        }
    }
}

TEST_CASE("slab expansion") {
    const Slab s = slab(PointPolytope(scan::box_corners(vec({0, 0}), vec({2, 1}))), vec({1, 0}));
    CHECK(s.lo == 0.0);
    CHECK(s.hi == 2.0);
    const Slab e = eps_expand(s, 0.5);
    CHECK(e.lo == -0.5);
    CHECK(e.hi == 2.5);
    const Slab same = eps_expand(s, 0.0);
    CHECK(same.lo == s.lo);
    CHECK(same.hi == s.hi);
    CHECK_THROWS_AS(eps_expand(s, -0.1), Error);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5), pos(0, 3);
    for (int k = 0; k < 100; ++k) {
        const double lo = u(rng), eps = pos(rng);
        const Slab r{scan::unit(3, rng) * 2.0, lo, lo + pos(rng)};
        const Slab x = eps_expand(r, eps);
        CHECK(x.width() == doctest::Approx((1 + eps) * r.width()).epsilon(1e-12));
        CHECK(x.center() == doctest::Approx(r.center()).epsilon(1e-12));
    }
}

TEST_CASE("dual transform") {
    const DualHyperplane h = dual_hyperplane(vec({2, 3}));
    CHECK(h.slope == vec({2}));
    CHECK(h.intercept == -3.0);
    const DualHyperplane o = dual_hyperplane(vec({0, 0, 0}));
    CHECK(o.slope.isZero());
    CHECK(o.intercept == 0.0);
    CHECK(dual_point(h) == vec({2, 3}));

    // the dual of a non-vertical hyperplane reads off slope and intercept
    const Hyperplane g = h.as_halfspace();
    CHECK(dual_point(g).isApprox(vec({2, 3})));
    CHECK_THROWS_AS(dual_point(Hyperplane(vec({1, 0}), 2.0)), Error);
}

TEST_CASE("thickness equals |v| times the pair width") {
    CHECK(thickness(vec({1, 2}), vec({0, 0}), vec({1})) == doctest::Approx(1.0));
    CHECK(thickness(vec({1, 2}), vec({1, 2}), vec({4})) == 0.0);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3, 3);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const int d = 2 + k % 5;
        Vec p(d), q(d), r(d - 1);
        for (int j = 0; j < d; ++j) p[j] = u(rng), q[j] = u(rng);
        for (int j = 0; j < d - 1; ++j) r[j] = u(rng);
        Vec v(d);
        v << r, -1.0;
        PointMat pq(d, 2);
        pq << p, q;
        const double rhs = v.norm() * scan::width(pq, v);
        const double lhs = thickness(p, q, r);
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("affine maps") {
    const AffineMap id = AffineMap::identity(3);
    const Vec v = vec({1, -2, 0.5});
    CHECK(id.pullback(v) == v);

    const AffineMap scale = AffineMap::linear(2.0 * SquareMat::Identity(2, 2));
    const PointPolytope big = scale.apply(unit_square());
    CHECK(width_exact(big, vec({1, 0})) == 4.0);
    CHECK(support(unit_square(), scale.pullback(vec({1, 0}))).value == 2.0);

    SquareMat singular(2, 2);
    singular << 1, 2, 2, 4;
    CHECK_THROWS_AS(AffineMap::linear(singular), Error);

    Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const int d = 2 + k % 7;
        SquareMat m = random_rotation(d, rng);
        for (int j = 0; j < d; ++j) m.col(j) *= 0.5 + (j + 1) * 0.3;
        const AffineMap t(m, random_unit(d, rng));
        const AffineMap err = t.compose(t.inverse());
        CHECK((err.matrix() - SquareMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(err.translation_part().cwiseAbs().maxCoeff() < 1e-10);

        const PointPolytope s = random_hull(d, 30, 50 + k);
        const Vec dir = random_unit(d, rng);
        const double lhs = scan::max_dot(t.apply(s).points(), dir);
        const double rhs = scan::max_dot(s.points(), t.pullback(dir)) + t.translation_part().dot(dir);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("width of a pairwise sum is additive") {
    std::mt19937_64 rng(8);
    int violations = 0;
    for (int k = 0; k < 200; ++k) {
        const int d = 2 + k % 4;
        const PointPolytope a = random_hull(d, 12, 2 * k + 1);
        const PointPolytope b = random_hull(d, 9, 2 * k + 2);
        const PointPolytope ab = pairwise_sum(a, b);
        const Vec v = scan::unit(d, rng);
        const double lhs = scan::width(ab.points(), v);
        const double rhs = scan::width(a.points(), v) + scan::width(b.points(), v);
        if (std::abs(lhs - rhs) > 1e-9 * rhs) ++violations;
    }
    CHECK(violations == 0);
    CHECK_THROWS_AS(pairwise_sum(random_hull(2, 2000, 1), random_hull(2, 2000, 2)), Error);
}
