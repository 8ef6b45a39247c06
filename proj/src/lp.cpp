#include "polyapprox/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "polyapprox/error.hpp"

namespace polyapprox {

std::string_view to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

namespace {

constexpr int kRefactorEvery = 40;
constexpr int kDegenerateRunForBland = 30;
constexpr double kPivotTol = 1e-9;

class Simplex {
public:
    Simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, const LpOptions& opt)
        : a_(a), m_(a.rows()), n_(a.cols()), opt_(opt) {
        sign_ = Eigen::VectorXd::Ones(m_);
        for (Eigen::Index i = 0; i < m_; ++i)
            if (rhs[i] < 0.0) sign_[i] = -1.0;
        rhs_ = sign_.cwiseProduct(rhs);
        basis_.resize(static_cast<std::size_t>(m_));
        is_basic_.assign(static_cast<std::size_t>(n_ + m_), 0);
        for (Eigen::Index i = 0; i < m_; ++i) {
            basis_[static_cast<std::size_t>(i)] = n_ + i;
            is_basic_[static_cast<std::size_t>(n_ + i)] = 1;
        }
        binv_ = Eigen::MatrixXd::Identity(m_, m_);
    }

    // Column j of the row-flipped system with artificials appended.
    Eigen::VectorXd column(Eigen::Index j) const {
        if (j >= n_) return Eigen::VectorXd::Unit(m_, j - n_);
        return sign_.cwiseProduct(a_.col(j));
    }

    LpStatus optimize(const Eigen::VectorXd& cost, bool allow_artificial) {
        const double cmax = cost.size() ? cost.cwiseAbs().maxCoeff() : 0.0;
        const double dtol = opt_.tolerance * (1.0 + cmax);
        int degenerate = 0;
        while (true) {
            if (iterations_ >= opt_.max_iterations) return LpStatus::IterationLimit;
            if (since_refactor_ >= kRefactorEvery) refactor();
            Eigen::VectorXd cb(m_);
            for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
            const Eigen::RowVectorXd pi = cb.transpose() * binv_;
            const Eigen::RowVectorXd pi_a = pi.cwiseProduct(sign_.transpose()) * a_;

            const bool bland = degenerate >= kDegenerateRunForBland;
            Eigen::Index enter = -1;
            double best = -dtol;
            const Eigen::Index limit = allow_artificial ? n_ + m_ : n_;
            for (Eigen::Index j = 0; j < limit; ++j) {
                if (is_basic_[static_cast<std::size_t>(j)]) continue;
                const double dj = cost[j] - (j < n_ ? pi_a[j] : pi[j - n_]);
                if (dj < best) {
                    enter = j;
                    if (bland) break;
                    best = dj;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            const Eigen::VectorXd alpha = binv_ * column(enter);
            const Eigen::VectorXd xb = binv_ * rhs_;
            Eigen::Index leave = -1;
            double ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (alpha[i] <= kPivotTol) continue;
                const double r = std::max(xb[i], 0.0) / alpha[i];
                if (r < ratio || (r == ratio && basis_[static_cast<std::size_t>(i)] <
                                                    basis_[static_cast<std::size_t>(leave)])) {
                    ratio = r;
                    leave = i;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            degenerate = ratio <= opt_.tolerance ? degenerate + 1 : 0;
            pivot(leave, enter, alpha);
        }
    }

    void pivot(Eigen::Index row, Eigen::Index enter, const Eigen::VectorXd& alpha) {
        const double p = alpha[row];
        binv_.row(row) /= p;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (i != row && alpha[i] != 0.0) binv_.row(i) -= alpha[i] * binv_.row(row);
        is_basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(row)])] = 0;
        basis_[static_cast<std::size_t>(row)] = enter;
        is_basic_[static_cast<std::size_t>(enter)] = 1;
        ++iterations_;
        ++since_refactor_;
    }

    void refactor() {
        Eigen::MatrixXd b(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i) b.col(i) = column(basis_[static_cast<std::size_t>(i)]);
        binv_ = b.partialPivLu().inverse();
        since_refactor_ = 0;
    }

    // Swap basic artificials for structural columns where possible.
    void drive_out_artificials() {
        for (Eigen::Index r = 0; r < m_; ++r) {
            if (basis_[static_cast<std::size_t>(r)] < n_) continue;
            const Eigen::RowVectorXd row = binv_.row(r).cwiseProduct(sign_.transpose()) * a_;
            Eigen::Index pick = -1;
            double mag = 1e-7;
            for (Eigen::Index j = 0; j < n_; ++j) {
                if (is_basic_[static_cast<std::size_t>(j)]) continue;
                if (std::abs(row[j]) > mag) {
                    mag = std::abs(row[j]);
                    pick = j;
                }
            }
            if (pick >= 0) pivot(r, pick, binv_ * column(pick));
        }
    }

    Eigen::VectorXd primal() const {
        const Eigen::VectorXd xb = binv_ * rhs_;
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n_ + m_);
        for (Eigen::Index i = 0; i < m_; ++i) y[basis_[static_cast<std::size_t>(i)]] = std::max(xb[i], 0.0);
        return y;
    }

    Eigen::VectorXd dual(const Eigen::VectorXd& cost) const {
        Eigen::VectorXd cb(m_);
        for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
        return (cb.transpose() * binv_).transpose().cwiseProduct(sign_);
    }

    int iterations() const { return iterations_; }

private:
    const Eigen::MatrixXd& a_;
    Eigen::Index m_, n_;
    LpOptions opt_;
    Eigen::VectorXd sign_, rhs_;
    std::vector<Eigen::Index> basis_;
    std::vector<char> is_basic_;
    Eigen::MatrixXd binv_;
    int iterations_ = 0;
    int since_refactor_ = 0;
};

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, const Eigen::VectorXd& c,
                           const LpOptions& options) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (rhs.size() != m || c.size() != n) throw Error(ErrorCode::DimensionMismatch, "lp shapes disagree");
    if (!a.allFinite() || !rhs.allFinite() || !c.allFinite())
        throw Error(ErrorCode::InvalidParameter, "lp data must be finite");

    Simplex sx(a, rhs, options);
    LpResult out;
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n + m);
    cost1.tail(m).setOnes();
    LpStatus st = sx.optimize(cost1, true);
    Eigen::VectorXd y = sx.primal();
    out.phase1_residual = y.tail(m).sum();
    out.iterations = sx.iterations();
    if (st == LpStatus::IterationLimit) {
        out.status = st;
        return out;
    }
    const double feas_tol = 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff());
    if (out.phase1_residual > feas_tol) {
        out.status = LpStatus::Infeasible;
        out.primal = y.head(n);
        return out;
    }

    sx.drive_out_artificials();
    Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(n + m);
    cost2.head(n) = c;
    st = sx.optimize(cost2, false);
    y = sx.primal();
    out.status = st;
    out.primal = y.head(n);
    out.value = c.dot(out.primal);
    out.dual = sx.dual(cost2);
    out.iterations = sx.iterations();
    return out;
}

}  // namespace polyapprox
