#include "vecwp/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vecwp/errors.hpp"

namespace vecwp {
namespace {

Vector solve_passive(const Matrix& a, const Vector& b, const std::vector<bool>& passive) {
    std::vector<Eigen::Index> cols;
    for (std::size_t j = 0; j < passive.size(); ++j)
        if (passive[j]) cols.push_back(static_cast<Eigen::Index>(j));
    Matrix sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
    const Vector s = sub.colPivHouseholderQr().solve(b);
    Vector z = Vector::Zero(a.cols());
    for (std::size_t c = 0; c < cols.size(); ++c) z[cols[c]] = s[static_cast<Eigen::Index>(c)];
    return z;
}

}  // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, std::size_t max_iterations) {
    if (a.rows() != b.size()) fail(ErrorKind::input, "nnls: dimension mismatch");
    const auto n = static_cast<std::size_t>(a.cols());
    if (max_iterations == 0) max_iterations = 3 * n + 30;

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * std::max(1.0, b.cwiseAbs().maxCoeff()));
    const double grad_tol = 1e-13 * scale;

    NnlsResult res;
    res.x = Vector::Zero(a.cols());
    std::vector<bool> passive(n, false);
    Vector w = a.transpose() * (b - a * res.x);

    while (true) {
        std::ptrdiff_t enter = -1;
        double best = grad_tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (!passive[j] && w[static_cast<Eigen::Index>(j)] > best) {
                best = w[static_cast<Eigen::Index>(j)];
                enter = static_cast<std::ptrdiff_t>(j);
            }
        }
        if (enter < 0) break;
        if (++res.iterations > max_iterations) fail(ErrorKind::numerical_failure, "nnls did not converge");
        passive[static_cast<std::size_t>(enter)] = true;

        while (true) {
            Vector z = solve_passive(a, b, passive);
            bool feasible = true;
            for (std::size_t j = 0; j < n; ++j)
                if (passive[j] && z[static_cast<Eigen::Index>(j)] <= 0.0) feasible = false;
            if (feasible) {
                res.x = z;
                break;
            }
            double alpha = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                const auto i = static_cast<Eigen::Index>(j);
                if (passive[j] && z[i] <= 0.0) alpha = std::min(alpha, res.x[i] / (res.x[i] - z[i]));
            }
            res.x += alpha * (z - res.x);
            for (std::size_t j = 0; j < n; ++j) {
                const auto i = static_cast<Eigen::Index>(j);
                if (passive[j] && res.x[i] <= 1e-15) {
                    passive[j] = false;
                    res.x[i] = 0.0;
                }
            }
            if (++res.iterations > max_iterations) fail(ErrorKind::numerical_failure, "nnls did not converge");
        }
        w = a.transpose() * (b - a * res.x);
    }
    return res;
}

}  // namespace vecwp
