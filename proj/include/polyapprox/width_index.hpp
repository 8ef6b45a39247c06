#pragma once

// Augmented approximate directional-width index.
//
// The index keeps an eps-kernel Q of the input S (a subset of its points),
// the outer sandwiching box of S, and the whitening map used during the
// build. For every direction v,
//
//     width_v(Q) >= (1 - eps) width_v(S),
//
// and since Q ⊆ S the one-sided support bound h_S(v) - h_Q(v) <= eps width_v(S)
// follows. Queries for an affine image T(S) scan Q along M^T v.

#include <cstddef>
#include <memory>
#include <vector>

#include "polyapprox/direction_net.hpp"
#include "polyapprox/fattening.hpp"
#include "polyapprox/geometry.hpp"

namespace polyapprox {

struct WidthIndexOptions {
    /// Direction net covering angle is net_constant * sqrt(eps).
    double net_constant = 0.5;
    /// Add nearest neighbours of far sphere points to the support witnesses.
    bool nearest_neighbor_witnesses = true;
    /// Precompute per-net-direction candidate lists for queries.
    bool buckets = false;
};

struct SupportAnswer {
    double value = 0.0;
    Vec witness;
    Eigen::Index index = 0;  // index into the original point set
};

struct WidthAnswer {
    Vec p;  // maximizer of v . x
    Vec q;  // minimizer of v . x
    Eigen::Index p_index = 0;
    Eigen::Index q_index = 0;
    double width = 0.0;  // (p - q) . v / |v|
};

class WidthIndex {
public:
    static WidthIndex build(const PointPolytope& s, double eps, const WidthIndexOptions& options = {});
    /// Rebuild from stored parts (kernel indices refer into s).
    static WidthIndex from_parts(const PointPolytope& s, double eps, std::vector<Eigen::Index> kernel,
                                 SymmetricBody body, AffineMap own_map);

    double eps() const { return eps_; }
    int dim() const { return static_cast<int>(kernel_points_.rows()); }
    std::size_t kernel_size() const { return kernel_.size(); }
    const std::vector<Eigen::Index>& kernel_indices() const { return kernel_; }
    const PointMat& kernel_points() const { return kernel_points_; }
    const SymmetricBody& body() const { return body_; }
    const AffineMap& own_map() const { return own_map_; }
    bool has_buckets() const { return buckets_ != nullptr; }
    /// Size of the direction net used during the build (0 for restored indexes).
    std::size_t net_size() const { return net_size_; }

    SupportAnswer query_support(const Vec& v) const;
    SupportAnswer query_support(const Vec& v, const AffineMap& map) const;
    WidthAnswer query_width(const Vec& v) const;
    WidthAnswer query_width(const Vec& v, const AffineMap& map) const;

    /// Kernel positions (not original indices) of the max and min of u . q;
    /// u is a direction in the original frame. Hot path for the sum queries.
    void extremes(const Vec& u, Eigen::Index& max_pos, Eigen::Index& min_pos) const;

private:
    struct Buckets;

    WidthIndex() = default;
    void attach_buckets();

    double eps_ = 0.0;
    std::vector<Eigen::Index> kernel_;
    PointMat kernel_points_;
    SymmetricBody body_;
    AffineMap own_map_;
    std::size_t net_size_ = 0;
    double net_angle_ = 0.0;
    std::shared_ptr<const Buckets> buckets_;
};

struct SumWidthAnswer {
    double width = 0.0;
    WidthAnswer a;
    WidthAnswer b;  // for negate_b, the witnesses are already negated
};

/// Width of map_a(A) ⊕ (±map_b(B)) along v as the sum of the two index widths.
SumWidthAnswer sum_width(const WidthIndex& a, const WidthIndex& b, const Vec& v, const AffineMap& map_a,
                         const AffineMap& map_b, bool negate_b);
SumWidthAnswer sum_width(const WidthIndex& a, const WidthIndex& b, const Vec& v, bool negate_b = false);

}  // namespace polyapprox
