#pragma once

// Dense revised simplex for small-row standard-form programs
//
//     min c^T y   s.t.  A y = rhs,  y >= 0,
//
// with few rows (at most a dozen here) and arbitrarily many columns.
// Two phases, Dantzig pricing, Bland's rule after a run of degenerate pivots.

#include <Eigen/Dense>

#include <string_view>

namespace polyapprox {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Eigen::VectorXd primal;  // y
    Eigen::VectorXd dual;    // pi with c_j - pi . A_j >= 0 at optimality
    double phase1_residual = 0.0;
    int iterations = 0;
};

struct LpOptions {
    double tolerance = 1e-11;
    int max_iterations = 50'000;
};

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, const Eigen::VectorXd& c,
                           const LpOptions& options = {});

}  // namespace polyapprox
