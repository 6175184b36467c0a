#include "vecwp/lp.hpp"

#include <cmath>
#include <limits>

#include "vecwp/errors.hpp"

namespace vecwp {
namespace {

constexpr double kEps = 1e-11;

struct Tableau {
    Matrix t;  // rows 0..m-1 constraints, row m objective; last column rhs
    std::vector<Eigen::Index> basis;

    Eigen::Index rows() const { return t.rows() - 1; }
    Eigen::Index cols() const { return t.cols() - 1; }

    void pivot(Eigen::Index r, Eigen::Index c) {
        t.row(r) /= t(r, c);
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            if (i == r) continue;
            const double f = t(i, c);
            if (f != 0.0) t.row(i) -= f * t.row(r);
        }
        basis[static_cast<std::size_t>(r)] = c;
    }

    // Objective row holds reduced costs; returns false when unbounded.
    bool run(Eigen::Index allowed_cols) {
        const Eigen::Index m = rows();
        while (true) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < allowed_cols; ++j) {
                if (t(m, j) < -kEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                const double a = t(i, enter);
                if (a <= kEps) continue;
                const double ratio = t(i, cols()) / a;
                if (ratio < best - kEps ||
                    (std::abs(ratio - best) <= kEps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult minimize(const Vector& c, const std::vector<LpRow>& rows) {
    const Eigen::Index n = c.size();
    const auto m = static_cast<Eigen::Index>(rows.size());
    for (const auto& r : rows)
        if (r.a.size() != n) fail(ErrorKind::input, "lp row dimension mismatch");

    // Columns: x (n), one slack or surplus per inequality, one artificial per row.
    Eigen::Index n_slack = 0;
    for (const auto& r : rows)
        if (r.sense != Sense::eq) ++n_slack;
    const Eigen::Index n_cols = n + n_slack + m;

    Tableau tab;
    tab.t = Matrix::Zero(m + 1, n_cols + 1);
    tab.basis.assign(static_cast<std::size_t>(m), 0);
    Eigen::Index slack = n;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        const double sign = r.b < 0 ? -1.0 : 1.0;
        tab.t.row(i).head(n) = sign * r.a.transpose();
        tab.t(i, n_cols) = sign * r.b;
        if (r.sense != Sense::eq) {
            tab.t(i, slack) = (r.sense == Sense::le ? 1.0 : -1.0) * sign;
            ++slack;
        }
        tab.t(i, n + n_slack + i) = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = n + n_slack + i;
    }

    // Phase 1: minimize the sum of artificials.
    for (Eigen::Index i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
    for (Eigen::Index i = 0; i < m; ++i) tab.t(m, n + n_slack + i) = 0.0;
    tab.run(n_cols);

    LpResult res;
    const double scale = 1.0 + tab.t.col(n_cols).head(m).cwiseAbs().maxCoeff();
    if (-tab.t(m, n_cols) > 1e-9 * scale) {
        res.status = LpResult::Status::infeasible;
        return res;
    }
    // Drive artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tab.basis[static_cast<std::size_t>(i)] < n + n_slack) continue;
        for (Eigen::Index j = 0; j < n + n_slack; ++j) {
            if (std::abs(tab.t(i, j)) > 1e-9) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2 with artificial columns barred from entering.
    tab.t.row(m).setZero();
    tab.t.row(m).head(n) = c.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
        const double cb = b < n ? c[b] : 0.0;
        if (cb != 0.0) tab.t.row(m) -= cb * tab.t.row(i);
    }
    if (!tab.run(n + n_slack)) {
        res.status = LpResult::Status::unbounded;
        return res;
    }

    res.status = LpResult::Status::optimal;
    res.x = Vector::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
        if (b < n) res.x[b] = tab.t(i, n_cols);
    }
    res.value = c.dot(res.x);
    return res;
}

}  // namespace vecwp
