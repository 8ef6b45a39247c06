#include "polyapprox/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "polyapprox/cli.hpp"
#include "polyapprox/convex_min.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/generators.hpp"
#include "polyapprox/intersection.hpp"
#include "polyapprox/minkowski.hpp"
#include "polyapprox/oracles.hpp"

namespace polyapprox {

namespace {

using Clock = std::chrono::steady_clock;

double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform(rng); }

Vec gaussian_unit(int d, Rng& rng) {
    // Box-Muller from raw engine output
    Vec v(d);
    for (int j = 0; j < d; ++j) {
        const double u1 = 1.0 - uniform(rng);
        const double u2 = uniform(rng);
        v[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    const double len = v.norm();
    if (!(len > 1e-12)) return gaussian_unit(d, rng);
    return v / len;
}

std::vector<Vec> directions(int d, std::size_t count, Rng& rng) {
    std::vector<Vec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(gaussian_unit(d, rng));
    return out;
}

// Plain loop over the columns; kept apart from the library's support code.
double scan_width(const PointMat& pts, const Vec& v) {
    double hi = -INFINITY, lo = INFINITY;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < pts.rows(); ++j) s += pts(j, i) * v[j];
        hi = std::max(hi, s);
        lo = std::min(lo, s);
    }
    return (hi - lo) / v.norm();
}

Eigen::Index scaled(Eigen::Index full, double scale, Eigen::Index floor = 1) {
    return std::max(floor, static_cast<Eigen::Index>(std::llround(static_cast<double>(full) * scale)));
}

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

CriterionReport finish(CriterionReport r, const Timer& t) {
    r.seconds = t.seconds();
    r.passed = r.violations == 0 && r.checks > 0 && (r.time_limit <= 0.0 || r.seconds <= r.time_limit);
    return r;
}

PointPolytope width_instance(int d, int i, std::uint64_t seed, Eigen::Index& n) {
    static constexpr Eigen::Index sizes[] = {20000, 10000, 2000, 500};
    n = sizes[i % 4];
    switch ((i / 4) % 5) {
        case 0: return sphere_shell(d, n, seed, 0.8);
        case 1: return random_hull(d, n, seed);
        case 2: return sphere_shell(d, n, seed, 1.0);
        case 3: {
            // a box cloud: corners plus interior points
            Rng rng(seed);
            Vec half(d);
            for (int j = 0; j < d; ++j) half[j] = uniform(rng, 0.05, 2.0);
            const PointMat corners = rotated_box(half, seed).points.points();
            const PointMat fill = random_hull(d, n, seed ^ 0x5bd1e995).points() * 0.02;
            PointMat all(d, corners.cols() + fill.cols());
            all << corners, fill;
            n = all.cols();
            return PointPolytope(all);
        }
        default: return regular_simplex(d, seed).points;
    }
}

}  // namespace

CriterionReport check_width_queries(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 1;
    r.name = "width-queries";
    r.time_limit = 300.0;
    const Eigen::Index instances = scaled(20, o.scale, 5);
    const auto dir_count = static_cast<std::size_t>(scaled(1000, o.scale, 100));
    double worst_ratio = INFINITY;
    Json constants = Json::object();
    for (int d = 2; d <= 4; ++d) {
        double cmax = 0.0;
        for (int i = 0; i < instances; ++i) {
            Eigen::Index n = 0;
            const std::uint64_t seed = o.seed * 1000003 + static_cast<std::uint64_t>(d * 100 + i);
            const PointPolytope s = width_instance(d, i, seed, n);
            Rng rng(seed + 17);
            const std::vector<Vec> dirs = directions(d, dir_count, rng);
            for (double eps : {0.2, 0.05, 0.01}) {
                const WidthIndex idx = WidthIndex::build(s, eps);
                cmax = std::max(cmax, static_cast<double>(idx.kernel_size()) * std::pow(eps, 0.5 * (d - 1)));
                for (const Vec& v : dirs) {
                    const double truth = scan_width(s.points(), v);
                    const double got = idx.query_width(v).width;
                    ++r.checks;
                    if (!(got >= (1.0 - eps) * truth) || got > truth * (1.0 + 1e-12) + 1e-15) ++r.violations;
                    if (truth > 0.0) worst_ratio = std::min(worst_ratio, got / truth / (1.0 - eps));
                }
            }
        }
        constants["d" + std::to_string(d)] = cmax;
    }
    r.measured = {{"instances_per_dim", instances},
                  {"directions", dir_count},
                  {"min_ratio_over_bound", worst_ratio},
                  {"max_kernel_constant", constants}};
    return finish(r, timer);
}

CriterionReport check_kernel_scaling(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 2;
    r.name = "kernel-scaling";
    const double epss[] = {0.04, 0.01, 0.0025};
    Json slopes = Json::array();
    const Eigen::Index shells = scaled(3, o.scale, 2);
    for (Eigen::Index t = 0; t < shells; ++t) {
        static constexpr Eigen::Index sizes[] = {20000, 12000, 7000};
        const PointPolytope s = sphere_shell(2, sizes[t % 3], o.seed * 31 + static_cast<std::uint64_t>(t), 1.0);
        // least squares slope of log|Q| against log(1/eps)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        Json kernel_sizes = Json::array();
        for (double eps : epss) {
            const double x = std::log(1.0 / eps);
            const double size = static_cast<double>(WidthIndex::build(s, eps).kernel_size());
            const double y = std::log(size);
            kernel_sizes.push_back(size);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        ++r.checks;
        if (!(slope >= 0.3 && slope <= 0.7)) ++r.violations;
        slopes.push_back({{"n", s.size()}, {"kernel_sizes", kernel_sizes}, {"slope", slope}});
    }
    r.measured = {{"eps", epss}, {"shells", slopes}};
    return finish(r, timer);
}

CriterionReport check_identities(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 3;
    r.name = "identities";
    const Eigen::Index count = scaled(1000, o.scale, 50);
    Rng rng(o.seed * 7919 + 3);
    double worst_add = 0.0, worst_thick = 0.0;
    std::int64_t add_bad = 0, thick_bad = 0;
    for (Eigen::Index i = 0; i < count; ++i) {
        const int d = 2 + static_cast<int>(rng() % 4);
        const auto na = static_cast<Eigen::Index>(d + 1 + rng() % 20);
        const auto nb = static_cast<Eigen::Index>(d + 1 + rng() % 20);
        const PointPolytope a = random_hull(d, na, rng());
        const PointPolytope b = random_hull(d, nb, rng());
        const Vec v = gaussian_unit(d, rng) * uniform(rng, 0.1, 10.0);
        const double sum = width_exact(pairwise_minkowski_exact(a, b), v);
        const double parts = width_exact(a, v) + width_exact(b, v);
        const double rel = std::abs(sum - parts) / std::max(parts, 1e-300);
        worst_add = std::max(worst_add, rel);
        if (!(rel <= 1e-9)) ++add_bad;

        // thickness at r equals |(r, -1)| times the width of {p, q} along (r, -1)
        Vec p(d), q(d), x(d - 1);
        for (int j = 0; j < d; ++j) p[j] = uniform(rng, -5, 5), q[j] = uniform(rng, -5, 5);
        for (int j = 0; j + 1 < d; ++j) x[j] = uniform(rng, -3, 3);
        Vec dir(d);
        dir << x, -1.0;
        PointMat pq(d, 2);
        pq << p, q;
        const double expect = dir.norm() * scan_width(pq, dir);
        const double got = thickness(p, q, x);
        const double trel = std::abs(got - expect) / std::max(expect, 1e-300);
        worst_thick = std::max(worst_thick, trel);
        if (!(trel <= 1e-9)) ++thick_bad;
        r.checks += 2;
    }
    r.violations = add_bad + thick_bad;
    r.measured = {{"instances", count},
                  {"additivity_violations", add_bad},
                  {"thickness_violations", thick_bad},
                  {"max_rel_error_additivity", worst_add},
                  {"max_rel_error_thickness", worst_thick}};
    return finish(r, timer);
}

namespace {

struct ConvexCase {
    int type = 0;
    SquareMat a;               // quadratic form
    Vec c;                     // center
    std::vector<Vec> slopes;   // piecewise linear pieces
    std::vector<double> shifts;
    Vec weights;

    double operator()(const Vec& x) const {
        switch (type) {
            case 0: {
                const Vec e = x - c;
                return e.dot(a * e);
            }
            case 1: {
                double m = -INFINITY;
                for (std::size_t i = 0; i < slopes.size(); ++i) m = std::max(m, slopes[i].dot(x) + shifts[i]);
                return m;
            }
            default: return weights.dot((x - c).cwiseAbs());
        }
    }
};

ConvexCase make_case(int k, int i, Rng& rng) {
    ConvexCase f;
    f.type = i % 3;
    f.c = Vec(k);
    for (int j = 0; j < k; ++j) f.c[j] = uniform(rng, -1.5, 1.5);
    if (f.type == 0) {
        SquareMat b(k, k);
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) b(r, s) = uniform(rng, -1, 1);
        f.a = b.transpose() * b + 0.05 * SquareMat::Identity(k, k);
        f.a /= f.a.norm();  // Frobenius >= spectral, so the slope stays below 2 * 2.5 * sqrt(3)
    } else if (f.type == 1) {
        for (int p = 0; p < 2 + k; ++p) {
            f.slopes.push_back(gaussian_unit(k, rng) * uniform(rng, 0.2, 3.0));
            f.shifts.push_back(uniform(rng, -1, 1));
        }
    } else {
        f.weights = Vec(k);
        for (int j = 0; j < k; ++j) f.weights[j] = uniform(rng, 0.2, 3.0);
    }
    return f;
}

// +-eps: a hash of the bits of x, or a push away from the true minimizer region
double adversarial_noise(const Vec& x, const Vec& c, double eps, int mode) {
    if (mode == 0) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            h ^= std::bit_cast<std::uint64_t>(x[j]);
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 33;
        }
        return (h & 1) ? eps : -eps;
    }
    return (x - c).norm() < 0.3 ? eps : -eps;
}

double grid_min(const ConvexCase& f, int k, double a, double b) {
    const int per_axis = k == 1 ? 4001 : (k == 2 ? 401 : 61);
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    Vec x(k);
    double best = INFINITY;
    while (true) {
        for (int j = 0; j < k; ++j) x[j] = a + (b - a) * idx[static_cast<std::size_t>(j)] / (per_axis - 1);
        best = std::min(best, f(x));
        int j = 0;
        while (j < k && ++idx[static_cast<std::size_t>(j)] == per_axis) idx[static_cast<std::size_t>(j++)] = 0;
        if (j == k) break;
    }
    return best;
}

}  // namespace

CriterionReport check_convex_min(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 4;
    r.name = "convex-min";
    const Eigen::Index count = scaled(200, o.scale, 20);
    const double a = -1.0, b = 1.0;
    Json per_k = Json::object();
    for (int k = 1; k <= 3; ++k) {
        Rng rng(o.seed * 104729 + static_cast<std::uint64_t>(k));
        double worst_gap = -INFINITY;
        std::int64_t max_evals = 0, bound = 0, gap_bad = 0, eval_bad = 0;
        for (Eigen::Index i = 0; i < count; ++i) {
            const ConvexCase f = make_case(k, static_cast<int>(i), rng);
            const double eps = (i % 2) ? 0.01 : 0.05;
            const int mode = static_cast<int>((i / 3) % 2);
            NoisyObjective obj;
            obj.eps_eval = eps;
            obj.slope_bound = 10.0;
            obj.evaluator = [&f, eps, mode](const Vec& x) { return f(x) + adversarial_noise(x, f.c, eps, mode); };
            const MinResult m = minimize_nd(obj, k, a, b, eps);
            const double gap = f(m.argmin) - grid_min(f, k, a, b);
            const auto per_level = static_cast<std::int64_t>(4 * std::ceil(std::log((b - a) / eps) / std::log(1.5)) + 8);
            std::int64_t limit = 1;
            for (int j = 0; j < k; ++j) limit *= per_level;
            worst_gap = std::max(worst_gap, gap / (8.0 * k * eps));
            max_evals = std::max(max_evals, m.evaluations);
            bound = std::max(bound, limit);
            r.checks += 2;
            if (!(gap <= 8.0 * k * eps)) ++gap_bad;
            if (m.evaluations > limit) ++eval_bad;
        }
        r.violations += gap_bad + eval_bad;
        per_k["k" + std::to_string(k)] = {{"max_gap_over_bound", worst_gap},
                                          {"max_evaluations", max_evals},
                                          {"evaluation_bound", bound},
                                          {"gap_violations", gap_bad},
                                          {"evaluation_violations", eval_bad}};
    }
    r.measured = {{"objectives_per_k", count}, {"per_k", per_k}};
    return finish(r, timer);
}

CriterionReport check_intersection(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 5;
    r.name = "intersection";
    r.time_limit = 600.0;
    const Eigen::Index certified = scaled(500, o.scale, 10);
    const Eigen::Index near = scaled(100, o.scale, 10);
    static constexpr Eigen::Index sizes[] = {20, 50, 200};
    std::int64_t verdict_bad = 0, oracle_bad = 0, ambiguous = 0, near_bad = 0, disjoint = 0;
    double smallest_disjoint_margin = INFINITY;
    for (int d = 2; d <= 3; ++d) {
        Rng rng(o.seed * 2654435761ULL + static_cast<std::uint64_t>(d));
        for (Eigen::Index i = 0; i < certified + near; ++i) {
            const bool is_near = i >= certified;
            const double eps = (i % 2) ? 0.05 : 0.1;
            double margin;
            if (is_near) margin = uniform(rng, -1.0, 1.0);
            else if (i % 4 < 2) margin = uniform(rng, 1.05, 3.0);
            else margin = uniform(rng, -3.0, -1.0);
            const Eigen::Index n = sizes[(i / 4) % 3];
            const std::uint64_t seed = rng();
            try {
                const PolytopePair pair = near_touching_pair(d, n, eps, margin, seed);
                const WidthIndex ia = WidthIndex::build(pair.a, eps / kCalibration);
                const WidthIndex ib = WidthIndex::build(pair.b, eps / kCalibration);
                const ApproxAnswer ab = approx_intersect(ia, ib, eps);
                const ApproxAnswer ba = approx_intersect(ib, ia, eps);
                if (is_near) {
                    const ApproxAnswer again = approx_intersect(ia, ib, eps);
                    r.checks += 1;
                    if (again.verdict != ab.verdict || again.evaluations != ab.evaluations ||
                        std::bit_cast<std::uint64_t>(again.envelope_min) != std::bit_cast<std::uint64_t>(ab.envelope_min))
                        ++near_bad;
                    continue;
                }
                const Verdict want = pair.certificate.intersecting ? Verdict::Intersecting : Verdict::Disjoint;
                const ExactIntersection exact = lp_intersect_exact(pair.a, pair.b);
                r.checks += 3;
                if (ab.verdict != want) ++verdict_bad;
                if (ba.verdict != want) ++verdict_bad;
                if (exact.verdict == ExactVerdict::Ambiguous) {
                    ++ambiguous;
                } else if ((exact.verdict == ExactVerdict::Intersecting) != pair.certificate.intersecting ||
                           (exact.verdict == ExactVerdict::Intersecting) != (ab.verdict == Verdict::Intersecting)) {
                    ++oracle_bad;
                }
                if (want == Verdict::Disjoint) {
                    ++disjoint;
                    smallest_disjoint_margin = std::min(smallest_disjoint_margin, margin);
                }
            } catch (const std::exception&) {
                ++r.checks;
                if (is_near) ++near_bad;
                else ++verdict_bad;
            }
        }
    }
    r.violations = verdict_bad + oracle_bad + near_bad;
    r.measured = {{"certified_pairs_per_dim", certified},
                  {"near_pairs_per_dim", near},
                  {"disjoint_pairs", disjoint},
                  {"smallest_disjoint_margin", smallest_disjoint_margin},
                  {"verdict_violations", verdict_bad},
                  {"oracle_disagreements", oracle_bad},
                  {"oracle_ambiguous", ambiguous},
                  {"near_pair_failures", near_bad}};
    return finish(r, timer);
}

namespace {

double halfspace_width(const HalfspacePolytope& h, const Vec& v) {
    const HalfspaceSupport hi = halfspace_support(h, v);
    const HalfspaceSupport lo = halfspace_support(h, -v);
    if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal) return INFINITY;
    return (hi.value + lo.value) / v.norm();
}

}  // namespace

CriterionReport check_minkowski(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 6;
    r.name = "minkowski";
    const double eps = 0.05;
    const Eigen::Index pairs = scaled(50, o.scale, 4);
    const auto dir_count = static_cast<std::size_t>(scaled(1000, o.scale, 100));
    std::int64_t outside = 0, too_wide = 0;
    Json per_dim = Json::object();
    for (int d = 2; d <= 3; ++d) {
        Rng rng(o.seed * 6364136223846793005ULL + static_cast<std::uint64_t>(d));
        double c_max = 0.0, worst_ratio = 0.0;
        std::size_t max_size = 0;
        for (Eigen::Index i = 0; i < pairs; ++i) {
            const PointPolytope a = random_hull(d, static_cast<Eigen::Index>(5 + rng() % 46), rng());
            const PointPolytope b = random_hull(d, static_cast<Eigen::Index>(5 + rng() % 46), rng());
            const WidthIndex ia = WidthIndex::build(a, eps / kCalibration);
            const WidthIndex ib = WidthIndex::build(b, eps / kCalibration);
            const HalfspacePolytope out = dudley(ia, ib, eps);
            const PointMat sums = pairwise_sum(a, b).points();
            const double tol = 1e-9 * (1.0 + sums.cwiseAbs().maxCoeff());
            for (Eigen::Index j = 0; j < sums.cols(); ++j) {
                ++r.checks;
                if (!out.contains(sums.col(j), tol)) ++outside;
            }
            for (const Vec& v : directions(d, dir_count, rng)) {
                const double ratio = halfspace_width(out, v) / scan_width(sums, v);
                worst_ratio = std::max(worst_ratio, ratio);
                ++r.checks;
                if (!(ratio <= 1.0 + 4.0 * eps)) ++too_wide;
            }
            max_size = std::max(max_size, out.size());
            c_max = std::max(c_max, static_cast<double>(out.size()) * std::pow(eps, 0.5 * (d - 1)));
        }
        per_dim["d" + std::to_string(d)] = {{"max_halfspaces", max_size},
                                            {"C", c_max},
                                            {"max_width_ratio", worst_ratio}};
    }
    r.violations = outside + too_wide;
    r.measured = {{"eps", eps},
                  {"pairs_per_dim", pairs},
                  {"directions", dir_count},
                  {"containment_violations", outside},
                  {"width_violations", too_wide},
                  {"per_dim", per_dim}};
    return finish(r, timer);
}

namespace {

// Width of a regular simplex with edge length `edge`: the closest split of the
// vertices into two halves of sizes floor and ceil of (d + 1) / 2.
double simplex_width_formula(int d, double edge) {
    const double m = d + 1;
    const double a = std::floor(m / 2), b = m - a;
    // distance between the centroids of the two faces, in a simplex of edge sqrt(2)
    return edge / std::sqrt(2.0) * std::sqrt(1.0 / a + 1.0 / b);
}

}  // namespace

CriterionReport check_width(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 7;
    r.name = "width";
    r.time_limit = 300.0;
    const double eps = 0.05;
    const Eigen::Index count = scaled(10, o.scale, 2);
    double worst_analytic = 0.0, worst_hull = 0.0;
    for (int d = 2; d <= 3; ++d) {
        Rng rng(o.seed * 40503 + static_cast<std::uint64_t>(d));
        for (Eigen::Index i = 0; i < count; ++i) {
            Vec half(d);
            for (int j = 0; j < d; ++j) half[j] = uniform(rng, 0.1, 2.0);
            const double box_truth = 2.0 * half.minCoeff();
            const double box_got = approx_width(rotated_box(half, rng()).points, eps).width;

            const AnalyticInstance simplex = regular_simplex(d, rng());
            const PointMat& sp = simplex.points.points();
            const double edge = (sp.col(0) - sp.col(1)).norm();
            const double simplex_truth = simplex_width_formula(d, edge);
            const double simplex_got = approx_width(simplex.points, eps).width;

            for (const auto& [got, truth] : {std::pair{box_got, box_truth}, std::pair{simplex_got, simplex_truth}}) {
                const double rel = std::abs(got - truth) / truth;
                worst_analytic = std::max(worst_analytic, rel);
                ++r.checks;
                if (!(rel <= 4.0 * eps)) ++r.violations;
            }

            const PointPolytope hull = random_hull(d, static_cast<Eigen::Index>(10 + rng() % 90), rng());
            const DenseWidth dense = dense_width_oracle(hull, std::sqrt(eps) / 10.0);
            const double rel = std::abs(approx_width(hull, eps).width - dense.width) / dense.width;
            worst_hull = std::max(worst_hull, rel);
            ++r.checks;
            if (!(rel <= 4.0 * eps)) ++r.violations;
        }
    }
    r.measured = {{"eps", eps},
                  {"instances_per_kind_per_dim", count},
                  {"max_rel_error_analytic", worst_analytic},
                  {"max_rel_error_vs_dense_oracle", worst_hull}};
    return finish(r, timer);
}

CriterionReport check_conversion(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 8;
    r.name = "conversion";
    const double eps = 0.05;
    const double band = (1.0 + 4.0 * eps) * (1.0 + 4.0 * eps);
    const Eigen::Index count = scaled(6, o.scale, 2);
    const auto dir_count = static_cast<std::size_t>(scaled(1000, o.scale, 100));
    double lo = INFINITY, hi = 0.0;
    for (int d = 2; d <= 3; ++d) {
        Rng rng(o.seed * 9176 + static_cast<std::uint64_t>(d));
        for (Eigen::Index i = 0; i < count; ++i) {
            const PointPolytope p = i == 0 ? rotated_box(d, rng()).points
                                           : random_hull(d, static_cast<Eigen::Index>(10 + rng() % 40), rng());
            const PointPolytope back = convert_to_points(convert_to_halfspaces(p, eps), eps);
            for (const Vec& v : directions(d, dir_count, rng)) {
                const double ratio = scan_width(back.points(), v) / scan_width(p.points(), v);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
                ++r.checks;
                if (!(ratio <= band && ratio >= 1.0 / band)) ++r.violations;
            }
        }
    }
    r.measured = {{"eps", eps}, {"band", band}, {"min_ratio", lo}, {"max_ratio", hi}};
    return finish(r, timer);
}

namespace {

std::string in_process(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    if (run_cli(args, out, err) != 0) throw Error(ErrorCode::Internal, "command failed: " + err.str());
    return out.str();
}

}  // namespace

CriterionReport check_determinism(const SuiteOptions& o) {
    const Timer timer;
    CriterionReport r;
    r.id = 9;
    r.name = "determinism";
    const CommandRunner run = o.runner ? o.runner : CommandRunner(in_process);
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / ("polyapprox-determinism-" + std::to_string(o.seed));
    std::filesystem::create_directories(dir);
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    const std::string pair = (dir / "pair.json").string(), idx = (dir / "index.json").string();
    const std::string hs = (dir / "hs.json").string();
    const std::string seed = std::to_string(o.seed);

    std::vector<std::vector<std::string>> cmds = {
        {"gen", "--kind", "random-hull", "--dim", "2", "--n", "40", "--seed", seed, "--out", a},
        {"gen", "--kind", "sphere-shell", "--dim", "2", "--n", "300", "--seed", seed, "--out", b},
        {"gen", "--kind", "near-touching-pair", "--dim", "3", "--n", "30", "--eps", "0.1", "--margin", "2",
         "--seed", seed, "--out", pair},
        {"gen", "--kind", "rotated-box", "--dim", "3", "--seed", seed},
        {"gen", "--kind", "simplex", "--dim", "4", "--seed", seed},
        {"build", "--in", a, "--eps", "0.01", "--out", idx},
        {"build", "--in", b, "--eps", "0.05"},
        {"kernel", "--in", b, "--eps", "0.05"},
        {"intersect", "--in", a, "--in", b, "--eps", "0.1"},
        {"intersect", "--in", pair, "--eps", "0.1"},
        {"intersect", "--in", idx, "--in", b, "--eps", "0.1"},
        {"minksum", "--in", a, "--in", b, "--eps", "0.1", "--algo", "dudley"},
        {"minksum", "--in", a, "--in", b, "--eps", "0.1", "--algo", "bi"},
        {"minksum", "--in", a, "--in", b, "--eps", "0.1", "--format", "svg"},
        {"minksum", "--in", a, "--eps", "0.1", "--out", hs},
        {"minksum", "--in", hs, "--eps", "0.1"},
        {"width", "--in", a, "--eps", "0.1"},
        {"width", "--in", idx, "--eps", "0.1"},
        {"bench", "--dim", "2", "--seed", seed},
    };
    if (o.include_selftest) cmds.push_back({"selftest", "--scale", "0.01", "--seed", seed});

    std::vector<std::string> first;
    Json failures = Json::array();
    for (int round = 0; round < 2; ++round) {
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            std::string text;
            try {
                text = run(cmds[i]);
            } catch (const std::exception& e) {
                text = std::string("error: ") + e.what();
                if (round == 0) failures.push_back({{"command", cmds[i][0]}, {"index", i}, {"error", e.what()}});
            }
            if (round == 0) {
                first.push_back(text);
            } else {
                ++r.checks;
                if (text != first[i]) ++r.violations;
            }
        }
    }
    r.violations += static_cast<std::int64_t>(failures.size());
    r.measured = {{"commands", cmds.size()}, {"runs", 2}, {"failed_commands", failures}};
    return finish(r, timer);
}

std::vector<CriterionReport> run_acceptance(const SuiteOptions& o,
                                            const std::function<void(const CriterionReport&)>& done) {
    using Check = CriterionReport (*)(const SuiteOptions&);
    static constexpr Check checks[] = {check_width_queries, check_kernel_scaling, check_identities,
                                       check_convex_min,    check_intersection,   check_minkowski,
                                       check_width,         check_conversion,     check_determinism};
    std::vector<CriterionReport> out;
    int id = 0;
    for (Check c : checks) {
        ++id;
        try {
            out.push_back(c(o));
        } catch (const std::exception& e) {
            CriterionReport r;
            r.id = id;
            r.name = "error";
            r.violations = 1;
            r.measured = {{"error", e.what()}};
            out.push_back(r);
        }
        if (done) done(out.back());
    }
    return out;
}

std::string summary_line(const CriterionReport& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << ": checks=" << r.checks
      << " violations=" << r.violations;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << " time=" << r.seconds << "s";
    if (r.time_limit > 0.0) s << " (limit " << r.time_limit << "s)";
    s << " measured=" << r.measured.dump();
    return s.str();
}

Json to_json(const CriterionReport& r, bool timings) {
    Json j = {{"id", r.id},
              {"name", r.name},
              {"passed", r.passed},
              {"checks", r.checks},
              {"violations", r.violations},
              {"measured", r.measured}};
    if (timings) {
        j["seconds"] = r.seconds;
        j["time_limit"] = r.time_limit;
    }
    return j;
}

}  // namespace polyapprox
