#pragma once

// Approximate intersection and membership through the dual upper envelope.
//
// A SumBody is a Minkowski sum of affine images of indexed polytopes
// (optionally negated) and of Euclidean balls. Membership of the origin is
// decided by minimizing the envelope U(r) = h_K((r, -1)) in a canonical frame
// where K sits between two balls centered on the positive x_d axis.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "polyapprox/convex_min.hpp"
#include "polyapprox/fattening.hpp"
#include "polyapprox/width_index.hpp"

namespace polyapprox {

struct IndexTerm {
    const WidthIndex* index = nullptr;  // not owned; must outlive the SumBody
    AffineMap map;
    bool negate = false;
};

struct BallTerm {
    Vec center;
    double radius = 0.0;
};

struct SumSupport {
    double value = 0.0;  // approximate support, never above the true one
    double error = 0.0;  // true support lies in [value, value + error]
    Vec witness;         // a point of the sum attaining `value`
};

class SumBody {
public:
    explicit SumBody(int dim) : dim_(dim) {}

    SumBody& add(const WidthIndex& index, const AffineMap& map, bool negate = false);
    SumBody& add(const WidthIndex& index, bool negate = false);
    SumBody& add_ball(const Vec& center, double radius);

    int dim() const { return dim_; }
    const std::vector<IndexTerm>& terms() const { return terms_; }
    const std::vector<BallTerm>& balls() const { return balls_; }

    /// Support along y with the one-sided error bound eps_i * w_i / (1 - eps_i) per term.
    SumSupport support(const Vec& y) const;
    /// Same, without building the witness.
    double support(const Vec& y, double& error) const;
    /// Outer sandwiching body of the whole sum.
    SymmetricBody body() const;
    /// Image under an affine map. Balls of positive radius only admit similarities.
    SumBody transformed(const AffineMap& t) const;

private:
    int dim_;
    std::vector<IndexTerm> terms_;
    std::vector<BallTerm> balls_;
};

enum class Verdict { Intersecting, Disjoint };

std::string_view to_string(Verdict v);

struct CanonicalFrame {
    AffineMap transform;  // linear; sends the query point (origin) to itself
    double r = 0.0;       // inner ball radius
    double lambda = 0.0;  // outer / inner radius
    double delta = 0.0;   // outer diameter, 2 lambda r
    double beta = 0.0;    // distance of the ball center from the origin
    double alpha = 0.0;   // half side of the search box in r-space
};

struct ApproxAnswer {
    Verdict verdict = Verdict::Intersecting;
    bool trivial = false;        // decided from the sandwich balls alone
    double envelope_min = 0.0;   // smallest evaluated U in frame units
    std::int64_t evaluations = 0;
    CanonicalFrame frame;
    Vec argmin;                  // best abscissa r (d - 1 coordinates)
    /// Direction in the caller's coordinates at argmin; for Disjoint answers
    /// it is certified: h_K(direction) <= certified_upper < 0.
    Vec direction;
    double certified_upper = 0.0;
};

struct MembershipOptions {
    /// Safety factor on the sampled sandwich factor.
    double lambda_safety = 2.0;
    /// Trivial Intersecting when beta <= inner_fraction * r.
    double inner_fraction = 0.9;
    /// Abscissa resolution is resolution_factor * eps * r.
    double resolution_factor = 1.0;
    /// Slope bound passed to the minimizer.
    double slope_bound = 10.0;
};

/// Index accuracy needed by approx_intersect: eps' <= eps / kCalibration.
inline constexpr double kCalibration = 8.0;

CanonicalFrame canonical_frame(const SymmetricBody& body, double lambda_safety = 2.0);

/// Approximate membership of the origin in the sum body.
ApproxAnswer membership_origin(const SumBody& k, double eps, const MembershipOptions& options = {});

/// Approximate test for map_a(A) ∩ map_b(B) ≠ ∅.
ApproxAnswer approx_intersect(const WidthIndex& a, const WidthIndex& b, const AffineMap& map_a,
                              const AffineMap& map_b, double eps, const MembershipOptions& options = {});
ApproxAnswer approx_intersect(const WidthIndex& a, const WidthIndex& b, double eps);

/// Approximate test for K ∩ ball(center, radius) ≠ ∅.
ApproxAnswer intersect_with_ball(const SumBody& k, const Vec& center, double radius, double eps,
                                 const MembershipOptions& options = {});
ApproxAnswer intersect_with_ball(const WidthIndex& s, const Vec& center, double radius, double eps);

}  // namespace polyapprox
