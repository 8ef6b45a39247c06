#include "polyapprox/direction_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace polyapprox {

namespace {

// Angle bound for a facet cell whose half-diagonal (in facet coordinates) is h.
// Central projection from outside the unit ball is 1-Lipschitz, so the unit
// chord is at most h.
double angle_for_half_diagonal(double h) { return 2.0 * std::asin(std::min(1.0, 0.5 * h)); }

std::size_t ipow(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        r *= base;
    }
    return r;
}

}  // namespace

DirectionNet::DirectionNet(int dim, double covering_angle, std::size_t max_directions) {
    check_dim(dim);
    if (!(covering_angle > 0.0)) throw Error(ErrorCode::InvalidParameter, "covering angle must be positive");
    int m = std::max(1, static_cast<int>(std::ceil(std::sqrt(dim - 1.0) / covering_angle)));
    while (m > 1 && angle_for_half_diagonal(std::sqrt(dim - 1.0) / (m - 1)) <= covering_angle) --m;
    while (angle_for_half_diagonal(std::sqrt(dim - 1.0) / m) > covering_angle) ++m;
    build(dim, m, max_directions);
}

DirectionNet DirectionNet::with_divisions(int dim, int divisions, std::size_t max_directions) {
    check_dim(dim);
    if (divisions < 1) throw Error(ErrorCode::InvalidParameter, "divisions must be >= 1");
    DirectionNet net;
    net.build(dim, divisions, max_directions);
    return net;
}

DirectionNet DirectionNet::with_min_size(int dim, std::size_t count) {
    check_dim(dim);
    for (int m = 1;; ++m) {
        // (m+1)^d - (m-1)^d grid nodes on the cube surface
        const std::size_t nodes = ipow(m + 1, dim) - ipow(m - 1, dim);
        if (nodes >= count) return with_divisions(dim, m);
    }
}

void DirectionNet::build(int dim, int divisions, std::size_t max_directions) {
    dim_ = dim;
    divisions_ = divisions;
    covering_angle_ = angle_for_half_diagonal(std::sqrt(dim - 1.0) / divisions);
    const double approx_total = std::pow(divisions + 1.0, dim) - std::pow(divisions - 1.0, dim);
    if (approx_total > 2.0 * static_cast<double>(max_directions))
        throw Error(ErrorCode::SizeLimit, "direction net would hold about " + std::to_string(approx_total) +
                                              " directions; increase eps or lower the dimension");
    const std::size_t total = ipow(divisions + 1, dim) - ipow(divisions - 1, dim);
    if (total > max_directions)
        throw Error(ErrorCode::SizeLimit, "direction net would hold " + std::to_string(total) +
                                              " directions; increase eps or lower the dimension");
    directions_.reserve(total);

    const int m = divisions;
    std::vector<int> k(static_cast<std::size_t>(dim), 0);
    for (int axis = 0; axis < dim; ++axis) {
        for (int sign : {-1, 1}) {
            std::fill(k.begin(), k.end(), 0);
            while (true) {
                bool owned = true;
                for (int j = 0; j < axis; ++j)
                    if (k[j] == 0 || k[j] == m) owned = false;
                if (owned) {
                    Vec y(dim);
                    for (int j = 0; j < dim; ++j) y[j] = (j == axis) ? sign : -1.0 + 2.0 * k[j] / m;
                    directions_.push_back(y.normalized());
                }
                // odometer over coordinates other than `axis`
                int j = 0;
                for (; j < dim; ++j) {
                    if (j == axis) continue;
                    if (++k[j] <= m) break;
                    k[j] = 0;
                }
                if (j == dim) break;
            }
        }
    }
}

std::size_t DirectionNet::slot(int axis, int sign, const int* coords) const {
    std::size_t lin = 0;
    for (int j = dim_ - 1; j >= 0; --j) {
        if (j == axis) continue;
        lin = lin * static_cast<std::size_t>(divisions_ + 1) + static_cast<std::size_t>(coords[j]);
    }
    const std::size_t per_facet = ipow(divisions_ + 1, dim_ - 1);
    return (static_cast<std::size_t>(axis) * 2 + (sign > 0 ? 1 : 0)) * per_facet + lin;
}

void DirectionNet::enable_lookup() {
    if (!lookup_.empty()) return;
    const int m = divisions_;
    const std::size_t per_facet = ipow(m + 1, dim_ - 1);
    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    lookup_.assign(per_facet * 2 * static_cast<std::size_t>(dim_), kUnset);

    std::vector<int> k(static_cast<std::size_t>(dim_), 0);
    // Pass 1 assigns owned nodes in enumeration order; pass 2 redirects shared nodes.
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t next = 0;
        for (int axis = 0; axis < dim_; ++axis) {
            for (int sign : {-1, 1}) {
                std::fill(k.begin(), k.end(), 0);
                while (true) {
                    int owner = axis;
                    for (int j = 0; j < axis; ++j)
                        if (k[j] == 0 || k[j] == m) {
                            owner = j;
                            break;
                        }
                    if (pass == 0 && owner == axis) {
                        k[axis] = sign > 0 ? m : 0;
                        lookup_[slot(axis, sign, k.data())] = next++;
                    } else if (pass == 1 && owner != axis) {
                        std::vector<int> kk = k;
                        kk[axis] = sign > 0 ? m : 0;
                        const int owner_sign = kk[owner] == m ? 1 : -1;
                        lookup_[slot(axis, sign, k.data())] = lookup_[slot(owner, owner_sign, kk.data())];
                    }
                    int j = 0;
                    for (; j < dim_; ++j) {
                        if (j == axis) continue;
                        if (++k[j] <= m) break;
                        k[j] = 0;
                    }
                    if (j == dim_) break;
                }
            }
        }
    }
}

std::size_t DirectionNet::nearest(const Vec& u) const {
    if (lookup_.empty()) throw Error(ErrorCode::Internal, "direction lookup not enabled");
    if (u.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "lookup direction dimension");
    int axis = 0;
    for (int j = 1; j < dim_; ++j)
        if (std::abs(u[j]) > std::abs(u[axis])) axis = j;
    const double top = std::abs(u[axis]);
    if (!(top > 0.0)) throw Error(ErrorCode::InvalidDirection, "zero lookup direction");
    const int sign = u[axis] > 0 ? 1 : -1;
    int k[kMaxDim];
    for (int j = 0; j < dim_; ++j) {
        if (j == axis) {
            k[j] = sign > 0 ? divisions_ : 0;
            continue;
        }
        const double y = u[j] / top;
        const long r = std::lround((y + 1.0) * 0.5 * divisions_);
        k[j] = static_cast<int>(std::clamp<long>(r, 0, divisions_));
    }
    return lookup_[slot(axis, sign, k)];
}

}  // namespace polyapprox
