#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <random>

#include "polyapprox/convex_min.hpp"
#include "scan.hpp"

using namespace polyapprox;
using scan::vec;

namespace {

// Deterministic +-noise from a hash of the bit pattern of x.
double sign_noise(const Vec& x) {
    std::uint64_t h = 1469598103934665603ULL;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        std::uint64_t bits;
        const double v = x[j];
        std::memcpy(&bits, &v, sizeof bits);
        h = (h ^ bits) * 1099511628211ULL;
    }
    return (h >> 63) ? 1.0 : -1.0;
}

double grid_min_1d(const std::function<double(double)>& f, double a, double b, double step) {
    double best = INFINITY;
    for (double x = a; x <= b + 1e-15; x += step) best = std::min(best, f(x));
    return std::min(best, f(b));
}

}  // namespace

TEST_CASE("exact quadratic in one dimension") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return (x[0] - 0.3) * (x[0] - 0.3); };
    const MinResult r = minimize_1d(obj, 0.0, 1.0, 1e-3);
    CHECK(r.argmin.size() == 1);
    CHECK(r.value <= 8e-3);
    CHECK(r.evaluations <= evaluation_bound_1d(0.0, 1.0, 1e-3));
}

TEST_CASE("constant objective") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec&) { return 4.0; };
    const MinResult r = minimize_1d(obj, -2.0, 5.0, 1e-2);
    CHECK(r.value == 4.0);
    CHECK(r.argmin[0] >= -2.0);
    CHECK(r.argmin[0] <= 5.0);
}

TEST_CASE("absolute value with adversarial noise") {
    const double eps = 1e-3;
    NoisyObjective obj;
    obj.eps_eval = eps;
    obj.evaluator = [&](const Vec& x) { return std::abs(x[0] - 0.613) + eps * sign_noise(x); };
    const MinResult r = minimize_1d(obj, 0.0, 1.0, eps);
    const double f = std::abs(r.argmin[0] - 0.613);
    const double grid = grid_min_1d([](double x) { return std::abs(x - 0.613); }, 0.0, 1.0, eps / 10);
    CHECK(f - grid <= 8 * eps);
}

TEST_CASE("interval arguments are validated") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return x[0]; };
    CHECK_THROWS_AS(minimize_1d(obj, 1.0, 0.0, 0.1), Error);
    CHECK_THROWS_AS(minimize_1d(obj, 0.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(minimize_nd(obj, 0, 0.0, 1.0, 0.1), Error);
}

TEST_CASE("evaluation count per level") {
    for (double eps : {0.5, 0.1, 1e-3, 1e-6}) {
        int calls = 0;
        NoisyObjective obj;
        obj.evaluator = [&](const Vec& x) {
            ++calls;
            return x[0] * x[0];
        };
        const MinResult r = minimize_1d(obj, -1.0, 1.0, eps);
        CHECK(r.evaluations == calls);
        CHECK(calls <= evaluation_bound_1d(-1.0, 1.0, eps));
        CHECK((calls - 1) % 4 == 0);
    }
}

TEST_CASE("intervals shrink by a third per level") {
    // record the probe spans: the four probes of a level are its endpoints and trisection points
    std::vector<double> xs;
    NoisyObjective obj;
    obj.evaluator = [&](const Vec& x) {
        xs.push_back(x[0]);
        return std::abs(x[0] - 0.77);
    };
    minimize_1d(obj, 0.0, 1.0, 1e-4);
    double prev = 1.0;
    for (std::size_t i = 0; i + 4 <= xs.size(); i += 4) {
        const double len = xs[i + 3] - xs[i];
        CHECK(len <= prev * (1 + 1e-12));
        prev = len * 2.0 / 3.0;
    }
}

TEST_CASE("two dimensional quadratic") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return x.squaredNorm(); };
    const MinResult r = minimize_nd(obj, 2, -1.0, 1.0, 1e-3);
    CHECK(r.value <= 2e-2);
    CHECK(r.evaluations <= evaluation_bound_1d(-1.0, 1.0, 1e-3) * evaluation_bound_1d(-1.0, 1.0, 1e-3));
}

TEST_CASE("linear objective reaches the corner") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return x[0] + 2 * x[1]; };
    const MinResult r = minimize_nd(obj, 2, 0.0, 1.0, 1e-3);
    CHECK(r.value <= 3 * 8e-3);
}

TEST_CASE("search stops when asked") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return x.sum(); };
    obj.stop = [](const Vec&, double v) { return v < -1.5; };
    const MinResult r = minimize_nd(obj, 2, -1.0, 1.0, 1e-4);
    CHECK(r.stopped);
    CHECK(r.value < -1.5);
}

TEST_CASE("identical inputs give identical results") {
    NoisyObjective obj;
    obj.evaluator = [](const Vec& x) { return (x - vec({0.1, -0.2, 0.3})).squaredNorm() + 1e-3 * sign_noise(x); };
    const MinResult a = minimize_nd(obj, 3, -1.0, 1.0, 1e-2);
    const MinResult b = minimize_nd(obj, 3, -1.0, 1.0, 1e-2);
    CHECK(a.argmin == b.argmin);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("random convex quadratics with noise stay within 8k eps of the minimum") {
    // the center lies inside the box, so the exact minimum is 0; a grid scan confirms it
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    const double eps = 1e-2;
    for (int k = 1; k <= 3; ++k) {
        int bad = 0;
        for (int t = 0; t < 200; ++t) {
            Eigen::MatrixXd l(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) l(i, j) = g(rng);
            const Eigen::MatrixXd q = l * l.transpose() + 0.1 * Eigen::MatrixXd::Identity(k, k);
            Vec c(k);
            for (int j = 0; j < k; ++j) c[j] = 0.8 * std::tanh(g(rng));
            auto f = [&](const Vec& x) {
                const Eigen::VectorXd e = Eigen::VectorXd(x - c);
                return e.dot(q * e);
            };
            NoisyObjective obj;
            obj.eps_eval = eps;
            obj.evaluator = [&](const Vec& x) { return f(x) + eps * sign_noise(x); };
            const MinResult r = minimize_nd(obj, k, -1.0, 1.0, eps);
            if (t < 5) {
                const int steps = k == 1 ? 2000 : (k == 2 ? 200 : 40);
                double grid = INFINITY;
                Vec x(k);
                const long total = static_cast<long>(std::pow(steps + 1, k));
                for (long n = 0; n < total; ++n) {
                    long rest = n;
                    for (int j = 0; j < k; ++j, rest /= steps + 1) x[j] = -1.0 + 2.0 * double(rest % (steps + 1)) / steps;
                    grid = std::min(grid, f(x));
                }
                CHECK(grid >= 0.0);
                CHECK(grid <= 0.05);
            }
            if (f(r.argmin) > 8 * k * eps + 1e-9) ++bad;
        }
        CHECK(bad == 0);
    }
}
