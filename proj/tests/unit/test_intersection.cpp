#include <doctest.h>

#include <cmath>
#include <random>

#include "polyapprox/generators.hpp"
#include "polyapprox/intersection.hpp"
#include "polyapprox/oracles.hpp"
#include "scan.hpp"

using namespace polyapprox;
using scan::vec;

namespace {

PointPolytope box(const Vec& lo, const Vec& hi) { return PointPolytope(scan::box_corners(lo, hi)); }

}  // namespace

TEST_CASE("separated squares are disjoint") {
    const double eps = 0.1;
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), eps / kCalibration);
    const WidthIndex b = WidthIndex::build(box(vec({2, 2}), vec({3, 3})), eps / kCalibration);
    const ApproxAnswer ans = approx_intersect(a, b, eps);
    CHECK(ans.verdict == Verdict::Disjoint);
}

TEST_CASE("a square meets itself") {
    const double eps = 0.1;
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), eps / kCalibration);
    const ApproxAnswer ans = approx_intersect(a, a, eps);
    CHECK(ans.verdict == Verdict::Intersecting);
    CHECK(ans.trivial);
    CHECK(ans.evaluations == 0);
}

TEST_CASE("far apart bodies are decided without envelope evaluations") {
    const double eps = 0.1;
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), eps / kCalibration);
    const WidthIndex b = WidthIndex::build(box(vec({40, 0}), vec({41, 1})), eps / kCalibration);
    const ApproxAnswer ans = approx_intersect(a, b, eps);
    CHECK(ans.verdict == Verdict::Disjoint);
    CHECK(ans.trivial);
    CHECK(ans.evaluations == 0);
}

TEST_CASE("index accuracy must match the calibration") {
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), 0.1);
    CHECK_THROWS_AS(approx_intersect(a, a, 0.1), Error);
}

TEST_CASE("boxes touching at a corner and a gap of half eps") {
    const double eps = 0.1;
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), eps / kCalibration);
    const WidthIndex touch = WidthIndex::build(box(vec({1, 1}), vec({2, 2})), eps / kCalibration);
    CHECK(approx_intersect(a, touch, eps).verdict == Verdict::Intersecting);

    const double gap = 0.5 * eps * std::sqrt(2.0);
    const WidthIndex near = WidthIndex::build(box(vec({1 + gap, 0}), vec({2 + gap, 1})), eps / kCalibration);
    const ApproxAnswer first = approx_intersect(a, near, eps);
    const ApproxAnswer second = approx_intersect(a, near, eps);
    CHECK(first.verdict == second.verdict);
    CHECK(first.envelope_min == second.envelope_min);
    CHECK(first.evaluations == second.evaluations);
}

TEST_CASE("affine maps on the indexes") {
    const double eps = 0.1;
    const WidthIndex a = WidthIndex::build(box(vec({0, 0}), vec({1, 1})), eps / kCalibration);
    const AffineMap shift = AffineMap::translation(vec({3, 0}));
    CHECK(approx_intersect(a, a, AffineMap::identity(2), shift, eps).verdict == Verdict::Disjoint);
    SquareMat stretch = SquareMat::Identity(2, 2);
    stretch(0, 0) = 4.0;
    CHECK(approx_intersect(a, a, AffineMap::linear(stretch), shift, eps).verdict == Verdict::Intersecting);
}

TEST_CASE("certified pairs match their certificates") {
    const double eps = 0.05;
    int violations = 0, disjoint_seen = 0;
    for (int d = 2; d <= 3; ++d) {
        for (int k = 0; k < 40; ++k) {
            const double margin = (k % 2) ? 1.5 : -1.5;
            const PolytopePair pair = near_touching_pair(d, 30, eps, margin, 1000 * d + k);
            const WidthIndex ia = WidthIndex::build(pair.a, eps / kCalibration);
            const WidthIndex ib = WidthIndex::build(pair.b, eps / kCalibration);
            const ApproxAnswer ab = approx_intersect(ia, ib, eps);
            const ApproxAnswer ba = approx_intersect(ib, ia, eps);
            const ExactIntersection exact = lp_intersect_exact(pair.a, pair.b);
            const Verdict want = pair.certificate.intersecting ? Verdict::Intersecting : Verdict::Disjoint;
            CHECK((exact.verdict == ExactVerdict::Intersecting) == pair.certificate.intersecting);
            if (ab.verdict != want) ++violations;
            if (ba.verdict != want) ++violations;
            if (want == Verdict::Disjoint) ++disjoint_seen;
        }
    }
    CHECK(violations == 0);
    CHECK(disjoint_seen == 40);
}

TEST_CASE("translation leaves verdicts unchanged") {
    const double eps = 0.05;
    std::mt19937_64 rng(4);
    for (int k = 0; k < 10; ++k) {
        const PolytopePair pair = near_touching_pair(2, 20, eps, (k % 2) ? 2.0 : -2.0, 77 + k);
        const Vec t = 5.0 * scan::unit(2, rng);
        const WidthIndex ia = WidthIndex::build(pair.a, eps / kCalibration);
        const WidthIndex ib = WidthIndex::build(pair.b, eps / kCalibration);
        const AffineMap shift = AffineMap::translation(t);
        CHECK(approx_intersect(ia, ib, eps).verdict == approx_intersect(ia, ib, shift, shift, eps).verdict);
    }
}

TEST_CASE("disjoint answers carry a certified separating direction") {
    const double eps = 0.05;
    for (int k = 0; k < 10; ++k) {
        const PolytopePair pair = near_touching_pair(3, 25, eps, 1.5, 300 + k);
        const WidthIndex ia = WidthIndex::build(pair.a, eps / kCalibration);
        const WidthIndex ib = WidthIndex::build(pair.b, eps / kCalibration);
        const ApproxAnswer ans = approx_intersect(ia, ib, eps);
        REQUIRE(ans.verdict == Verdict::Disjoint);
        const PointMat diff = pairwise_sum(pair.a, pair.b, true).points();
        CHECK(scan::max_dot(diff, ans.direction) < 0.0);
    }
}

TEST_CASE("envelope values bracket the exact envelope") {
    const double eps = 0.05;
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const PointPolytope a = random_hull(2, 25, 500 + k), b = random_hull(2, 25, 600 + k);
        const WidthIndex ia = WidthIndex::build(a, eps / kCalibration), ib = WidthIndex::build(b, eps / kCalibration);
        SumBody sum(2);
        sum.add(ia).add(ib, true);
        const PointMat diff = pairwise_sum(a, b, true).points();
        for (int j = 0; j < 50; ++j) {
            const Vec y = random_unit(2, rng);
            const SumSupport s = sum.support(y);
            const double exact = scan::max_dot(diff, y);
            CHECK(s.value <= exact + 1e-12);
            CHECK(exact <= s.value + s.error + 1e-12);
            CHECK(s.witness.dot(y) == doctest::Approx(s.value));
        }
    }
}

TEST_CASE("ball queries") {
    const double eps = 0.05;
    const PointPolytope sq = box(vec({-1, -1}), vec({1, 1}));
    const WidthIndex idx = WidthIndex::build(sq, eps / kCalibration);
    CHECK(intersect_with_ball(idx, vec({0.2, 0.1}), 5.0, eps).verdict == Verdict::Intersecting);
    CHECK(intersect_with_ball(idx, vec({0.5, 0.5}), 0.0, eps).verdict == Verdict::Intersecting);
    CHECK(intersect_with_ball(idx, vec({3, 0}), 0.0, eps).verdict == Verdict::Disjoint);
    CHECK(intersect_with_ball(idx, vec({3, 0}), 1.9, eps).verdict == Verdict::Disjoint);
    CHECK(intersect_with_ball(idx, vec({3, 0}), 2.1, eps).verdict == Verdict::Intersecting);
    CHECK_THROWS_AS(intersect_with_ball(idx, vec({3, 0}), -1.0, eps), Error);

    std::mt19937_64 rng(12);
    int bad = 0;
    for (int k = 0; k < 40; ++k) {
        const int d = 2 + k % 2;
        const PointPolytope s = random_hull(d, 30, 900 + k);
        const WidthIndex ix = WidthIndex::build(s, eps / kCalibration);
        const Vec w = 3.0 * scan::unit(d, rng);
        const double dist = hull_distance(s, w).distance;
        const double spread = width_exact(s, w);
        const ApproxAnswer in = intersect_with_ball(ix, w, dist * 1.0001 + 1e-9, eps);
        const ApproxAnswer out = intersect_with_ball(ix, w, std::max(0.0, dist - eps * (spread + 2 * dist)), eps);
        if (in.verdict != Verdict::Intersecting) ++bad;
        if (out.verdict != Verdict::Disjoint) ++bad;
    }
    CHECK(bad == 0);
}
