#pragma once

// Minimization of a convex function known only through an evaluator with a
// bounded additive error. One-dimensional trisection, and a nested version
// over boxes [a, b]^k.

#include <cstdint>
#include <functional>

#include "polyapprox/geometry.hpp"

namespace polyapprox {

struct NoisyObjective {
    /// Evaluated at points of the search box; must be re-entrant.
    std::function<double(const Vec&)> evaluator;
    double eps_eval = 0.0;
    double slope_bound = 10.0;
    /// Optional: return true to abandon the search. Checked after each evaluation.
    std::function<bool(const Vec&, double)> stop;
};

struct MinResult {
    Vec argmin;
    double value = 0.0;
    std::int64_t evaluations = 0;
    bool stopped = false;
};

/// Trisection search on [a, b]; the evaluator receives 1-vectors.
MinResult minimize_1d(const NoisyObjective& obj, double a, double b, double eps);
/// Nested search over [a, b]^k.
MinResult minimize_nd(const NoisyObjective& obj, int k, double a, double b, double eps);

/// Upper bound on evaluations of minimize_1d: 4 ceil(log_{3/2}((b - a)/eps)) + 8.
std::int64_t evaluation_bound_1d(double a, double b, double eps);

}  // namespace polyapprox
