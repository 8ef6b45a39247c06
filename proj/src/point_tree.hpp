#pragma once

// Bounding-box kd-tree over a fixed point set. Answers exact max-dot and
// exact nearest-neighbor queries with lowest-index tie breaking, so results
// equal those of a linear scan.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace polyapprox::detail {

class PointTree {
public:
    explicit PointTree(const Eigen::MatrixXd& points, int leaf_size = 8);

    /// argmax_i p_i . u; `hint` (an index) seeds the pruning bound.
    Eigen::Index max_dot(const double* u, Eigen::Index hint = 0) const;
    /// argmin_i |p_i - y|.
    Eigen::Index nearest(const double* y, Eigen::Index hint = 0) const;

private:
    struct Node {
        Eigen::Index begin, end;
        std::int32_t left = -1, right = -1;
    };

    std::int32_t build(Eigen::Index begin, Eigen::Index end, int leaf_size);

    int dim_;
    const Eigen::MatrixXd& points_;
    std::vector<Eigen::Index> order_;
    std::vector<Node> nodes_;
    std::vector<double> lo_, hi_;  // node boxes, dim_ entries per node
};

}  // namespace polyapprox::detail
