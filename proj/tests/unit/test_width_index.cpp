#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "polyapprox/generators.hpp"
#include "polyapprox/width_index.hpp"
#include "scan.hpp"

using namespace polyapprox;
using scan::vec;

namespace {

int violations(const WidthIndex& idx, const PointPolytope& s, int probes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int k = 0; k < probes; ++k) {
        const Vec v = scan::unit(s.dim(), rng);
        const double w = idx.query_width(v).width;
        if (w < (1 - idx.eps()) * scan::width(s.points(), v)) ++bad;
    }
    return bad;
}

}  // namespace

TEST_CASE("square kernel is its corners") {
    const PointPolytope sq(scan::box_corners(vec({-1, -1}), vec({1, 1})));
    for (double eps : {0.5, 0.1, 0.01}) {
        const WidthIndex idx = WidthIndex::build(sq, eps);
        CHECK(idx.kernel_size() == 4);
        CHECK(idx.query_width(vec({1, 0})).width == 2.0);
        CHECK(idx.query_width(vec({0, 1})).width == 2.0);
        CHECK(idx.query_support(vec({1, 0})).value == 1.0);
    }
}

TEST_CASE("eps and degeneracy are checked") {
    const PointPolytope sq(scan::box_corners(vec({-1, -1}), vec({1, 1})));
    CHECK_THROWS_AS(WidthIndex::build(sq, 0.0), Error);
    CHECK_THROWS_AS(WidthIndex::build(sq, 1.0), Error);
    PointMat seg(2, 3);
    seg << 0, 1, 2, 0, 1, 2;
    CHECK_THROWS_AS(WidthIndex::build(PointPolytope(seg), 0.1), Error);
}

TEST_CASE("single point index is exact") {
    const PointPolytope p(PointMat(vec({5, 5})));
    const WidthIndex idx = WidthIndex::build(p, 0.1);
    const Vec v = vec({0.6, -0.8});
    CHECK(idx.query_support(v).value == doctest::Approx(5 * 0.6 - 5 * 0.8));
    CHECK(idx.query_width(v).width == 0.0);
}

TEST_CASE("circle kernel size and guarantee") {
    const PointPolytope s = sphere_shell(2, 10000, 1);
    const WidthIndex idx = WidthIndex::build(s, 0.01);
    CHECK(idx.kernel_size() >= 10);
    CHECK(idx.kernel_size() <= 200);
    CHECK(violations(idx, s, 1000, 2) == 0);

    const WidthIndex coarse = WidthIndex::build(s, 0.04);
    const double ratio = double(idx.kernel_size()) / double(coarse.kernel_size());
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 2.8);
}

TEST_CASE("kernel size grows like eps^(-1/2) in the plane") {
    const PointPolytope s = sphere_shell(2, 20000, 3);
    std::vector<double> xs, ys;
    for (double eps : {0.04, 0.01, 0.0025}) {
        xs.push_back(std::log(1.0 / eps));
        ys.push_back(std::log(double(WidthIndex::build(s, eps).kernel_size())));
    }
    const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    const double slope = sxy / sxx;
    CHECK(slope >= 0.3);
    CHECK(slope <= 0.7);
}

TEST_CASE("kernel is a subset of the input") {
    const PointPolytope s = random_hull(3, 2000, 5);
    const WidthIndex idx = WidthIndex::build(s, 0.05);
    std::set<Eigen::Index> seen;
    for (std::size_t k = 0; k < idx.kernel_size(); ++k) {
        const Eigen::Index i = idx.kernel_indices()[k];
        CHECK(seen.insert(i).second);
        CHECK((idx.kernel_points().col(static_cast<Eigen::Index>(k)).array() == s.points().col(i).array()).all());
    }
}

TEST_CASE("width guarantee on random inputs") {
    for (int d = 2; d <= 4; ++d)
        for (double eps : {0.2, 0.05}) {
            const PointPolytope s = random_hull(d, 3000, 10 * d);
            const WidthIndex idx = WidthIndex::build(s, eps);
            CHECK(violations(idx, s, 1000, d) == 0);
            const PointPolytope shell = sphere_shell(d, 3000, 20 * d, 0.8);
            CHECK(violations(WidthIndex::build(shell, eps), shell, 1000, d + 7) == 0);
        }
}

TEST_CASE("queries never exceed the exact width and are symmetric") {
    const PointPolytope s = random_hull(3, 500, 77);
    const WidthIndex idx = WidthIndex::build(s, 0.1);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        const Vec v = scan::unit(3, rng);
        const WidthAnswer a = idx.query_width(v), b = idx.query_width(-v);
        CHECK(a.width <= scan::width(s.points(), v) * (1 + 1e-12));
        CHECK(a.width == doctest::Approx(b.width).epsilon(1e-12));
        CHECK(a.p_index == b.q_index);
        CHECK(a.q_index == b.p_index);
    }
}

TEST_CASE("support error is bounded by eps times width") {
    const PointPolytope s = random_hull(3, 4000, 9);
    const WidthIndex idx = WidthIndex::build(s, 0.05);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 500; ++k) {
        const Vec v = scan::unit(3, rng);
        const double h = scan::max_dot(s.points(), v);
        const double ht = idx.query_support(v).value;
        CHECK(ht <= h);
        CHECK(h - ht <= 0.05 * scan::width(s.points(), v));
    }
}

TEST_CASE("queries through affine maps") {
    const PointPolytope s = random_hull(3, 3000, 13);
    const WidthIndex idx = WidthIndex::build(s, 0.05);
    Rng rng(8);
    std::mt19937_64 dirs(9);
    int bad = 0;
    for (int m = 0; m < 10; ++m) {
        SquareMat a = random_rotation(3, rng);
        a.col(0) *= 1.0 + m;
        const AffineMap t(a, random_unit(3, rng));
        const PointMat img = t.apply(s).points();
        for (int k = 0; k < 100; ++k) {
            const Vec v = scan::unit(3, dirs);
            const WidthAnswer ans = idx.query_width(v, t);
            if (ans.width < 0.95 * scan::width(img, v)) ++bad;
            CHECK(ans.width <= scan::width(img, v) * (1 + 1e-9));
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("buckets give the same answers as a full scan") {
    const PointPolytope s = random_hull(3, 3000, 21);
    const WidthIndex plain = WidthIndex::build(s, 0.05);
    WidthIndexOptions opt;
    opt.buckets = true;
    const WidthIndex fast = WidthIndex::build(s, 0.05, opt);
    CHECK(fast.has_buckets());
    std::mt19937_64 rng(5);
    for (int k = 0; k < 1000; ++k) {
        const Vec v = scan::unit(3, rng);
        CHECK(fast.query_width(v).width == plain.query_width(v).width);
    }
}

TEST_CASE("sum width") {
    const PointPolytope sq(scan::box_corners(vec({-1, -1}), vec({1, 1})));
    const WidthIndex a = WidthIndex::build(sq, 0.1);
    CHECK(sum_width(a, a, vec({1, 0})).width == 4.0);
    CHECK(sum_width(a, a, vec({1, 0}), true).width == 4.0);

    const WidthIndex pt = WidthIndex::build(PointPolytope(PointMat(vec({3, 4}))), 0.1);
    CHECK(sum_width(a, pt, vec({0.6, 0.8})).width == doctest::Approx(a.query_width(vec({0.6, 0.8})).width));

    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        const PointPolytope x = random_hull(2, 40, 100 + k), y = random_hull(2, 30, 200 + k);
        const WidthIndex ix = WidthIndex::build(x, 0.05), iy = WidthIndex::build(y, 0.05);
        const PointMat both = pairwise_sum(x, y, true).points();
        for (int j = 0; j < 20; ++j) {
            const Vec v = scan::unit(2, rng);
            const SumWidthAnswer ans = sum_width(ix, iy, v, true);
            CHECK(ans.width >= 0.95 * scan::width(both, v));
            CHECK(ans.width <= scan::width(both, v) * (1 + 1e-12));
        }
    }
}
