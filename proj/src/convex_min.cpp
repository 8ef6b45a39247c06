#include "polyapprox/convex_min.hpp"

#include <cmath>
#include <vector>

namespace polyapprox {

namespace {

void check_interval(double a, double b, double eps) {
    if (!std::isfinite(a) || !std::isfinite(b) || b < a)
        throw Error(ErrorCode::InvalidParameter, "search interval must satisfy a <= b");
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidParameter, "eps must be positive");
}

class Search {
public:
    Search(const NoisyObjective& obj, int k, double a, double b, double eps)
        : obj_(obj), k_(k), a_(a), b_(b), eps_(eps), x_(Vec::Constant(k, a)) {}

    MinResult run() {
        MinResult r;
        r.value = level(0, r.argmin);
        r.evaluations = evaluations_;
        r.stopped = stopped_;
        return r;
    }

private:
    struct Probe {
        Vec x;
        double value;
    };

    // g_j(x_0..x_{j-1}) = min over coordinate j and deeper, given the prefix in x_.
    double value_at(int j, double t, Vec& best) {
        x_[j] = t;
        if (j + 1 == k_) {
            const double v = obj_.evaluator(x_);
            ++evaluations_;
            if (obj_.stop && obj_.stop(x_, v)) stopped_ = true;
            best = x_;
            return v;
        }
        return level(j + 1, best);
    }

    double level(int j, Vec& best) {
        double lo = a_, hi = b_;
        std::vector<Probe> picks;
        while (!(hi - lo < eps_)) {
            const double len = hi - lo;
            const double pts[6] = {lo, lo, lo + len / 3.0, lo + 2.0 * len / 3.0, hi, hi};
            int m = 0;
            Probe chosen{Vec(), 0.0};
            for (int i = 1; i <= 4; ++i) {
                Vec arg;
                const double v = value_at(j, pts[i], arg);
                if (stopped_) {
                    best = std::move(arg);
                    return v;
                }
                if (m == 0 || v < chosen.value) {
                    m = i;
                    chosen = Probe{std::move(arg), v};
                }
            }
            picks.push_back(std::move(chosen));
            lo = pts[m - 1];
            hi = pts[m + 1];
        }
        Vec arg;
        double value = value_at(j, lo, arg);
        if (stopped_) {
            best = std::move(arg);
            return value;
        }
        // unwind: each level keeps its own x_m unless the deeper result is strictly better
        for (auto it = picks.rbegin(); it != picks.rend(); ++it) {
            if (it->value <= value) {
                value = it->value;
                arg = it->x;
            }
        }
        best = std::move(arg);
        return value;
    }

    const NoisyObjective& obj_;
    int k_;
    double a_, b_, eps_;
    Vec x_;
    std::int64_t evaluations_ = 0;
    bool stopped_ = false;
};

}  // namespace

MinResult minimize_1d(const NoisyObjective& obj, double a, double b, double eps) {
    return minimize_nd(obj, 1, a, b, eps);
}

MinResult minimize_nd(const NoisyObjective& obj, int k, double a, double b, double eps) {
    check_interval(a, b, eps);
    if (k < 1 || k > kMaxDim) throw Error(ErrorCode::InvalidParameter, "search dimension out of range");
    if (!obj.evaluator) throw Error(ErrorCode::InvalidParameter, "objective has no evaluator");
    return Search(obj, k, a, b, eps).run();
}

std::int64_t evaluation_bound_1d(double a, double b, double eps) {
    check_interval(a, b, eps);
    const double ratio = (b - a) / eps;
    const double levels = ratio > 1.0 ? std::ceil(std::log(ratio) / std::log(1.5)) : 0.0;
    return 4 * static_cast<std::int64_t>(levels) + 8;
}

}  // namespace polyapprox
