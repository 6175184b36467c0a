#pragma once

// Reference computations used as test oracles. They share no code with the
// library beyond the Eigen types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline void for_each_subset(std::size_t n, std::size_t max_size, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        fn(cur);
        if (cur.size() == max_size) return;
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Projection onto cone{dirs} by enumerating linearly independent subsets of
// directions and keeping the nearest nonnegative least-squares fit.
inline Vector project_onto_cone(const std::vector<Vector>& dirs, const Vector& y) {
    const auto m = static_cast<std::size_t>(y.size());
    Vector best = Vector::Zero(y.size());
    double best_dist = y.norm();
    for_each_subset(dirs.size(), m, [&](const std::vector<std::size_t>& s) {
        if (s.empty()) return;
        Matrix a(y.size(), static_cast<Eigen::Index>(s.size()));
        for (std::size_t j = 0; j < s.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = dirs[s[j]];
        Eigen::ColPivHouseholderQR<Matrix> qr(a);
        if (qr.rank() < static_cast<Eigen::Index>(s.size())) return;
        const Vector lambda = qr.solve(y);
        if (lambda.minCoeff() < -1e-12) return;
        const Vector p = a * lambda;
        const double dist = (y - p).norm();
        if (dist < best_dist) {
            best_dist = dist;
            best = p;
        }
    });
    return best;
}

// Unit inward facet normals of cone{gens} (full-dimensional, pointed) found by
// testing every (m-1)-subset of generators.
inline std::vector<Vector> facet_normals(const std::vector<Vector>& gens) {
    const auto m = gens.front().size();
    std::vector<Vector> out;
    for_each_subset(gens.size(), static_cast<std::size_t>(m - 1), [&](const std::vector<std::size_t>& s) {
        if (s.size() != static_cast<std::size_t>(m - 1)) return;
        Matrix a(m - 1, m);
        for (std::size_t j = 0; j < s.size(); ++j) a.row(static_cast<Eigen::Index>(j)) = gens[s[j]].transpose();
        Eigen::FullPivLU<Matrix> lu(a);
        if (lu.rank() != m - 1) return;
        Vector n = lu.kernel().col(0).normalized();
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& c : gens) {
            const double v = n.dot(c.normalized());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo < -1e-9 && hi > 1e-9) return;
        if (hi <= 1e-9) n = -n;
        for (const auto& e : out)
            if ((e - n).norm() < 1e-9) return;
        out.push_back(n);
    });
    return out;
}

// Oriented distance to -cone{gens}: projection distance outside, minus the
// distance to the nearest facet hyperplane inside.
inline double oriented_distance(const std::vector<Vector>& gens, const Vector& y) {
    std::vector<Vector> neg;
    for (const auto& c : gens) neg.push_back(-c);
    const Vector p = project_onto_cone(neg, y);
    const double out = (y - p).norm();
    if (out > 1e-12) return out;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& n : facet_normals(gens)) worst = std::max(worst, n.dot(y));
    return std::min(worst, 0.0);
}

// Closed form for the nonnegative orthant.
inline double oriented_distance_orthant(const Vector& y) {
    if (y.maxCoeff() <= 0.0) return y.maxCoeff();
    return y.cwiseMax(0.0).norm();
}

inline double brute_diameter(const std::vector<Vector>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm());
    return best;
}

// Value of the matrix game max_z min_w z^T A w over two probability simplices,
// by enumerating square subgames (equalizing strategies).
inline double matrix_game_value(const Matrix& a) {
    const auto r = static_cast<std::size_t>(a.rows()), c = static_cast<std::size_t>(a.cols());
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const Vector& z) {
        if (z.minCoeff() < -1e-12 || std::abs(z.sum() - 1.0) > 1e-9) return;
        const double v = (z.transpose() * a).minCoeff();
        best = std::max(best, v);
    };
    for_each_subset(r, r, [&](const std::vector<std::size_t>& rows) {
        if (rows.empty()) return;
        for_each_subset(c, rows.size(), [&](const std::vector<std::size_t>& cols) {
            if (cols.size() != rows.size()) return;
            // z on rows equalizes the chosen columns: z^T A_col = v for each col, sum z = 1.
            const auto k = static_cast<Eigen::Index>(rows.size());
            Matrix sys = Matrix::Zero(k + 1, k + 1);
            Vector rhs = Vector::Zero(k + 1);
            for (Eigen::Index j = 0; j < k; ++j) {
                for (Eigen::Index i = 0; i < k; ++i) sys(j, i) = a(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]),
                                                                  static_cast<Eigen::Index>(cols[static_cast<std::size_t>(j)]));
                sys(j, k) = -1.0;
            }
            for (Eigen::Index i = 0; i < k; ++i) sys(k, i) = 1.0;
            rhs[k] = 1.0;
            Eigen::FullPivLU<Matrix> lu(sys);
            if (lu.rank() < k + 1) return;
            const Vector sol = lu.solve(rhs);
            Vector z = Vector::Zero(static_cast<Eigen::Index>(r));
            for (Eigen::Index i = 0; i < k; ++i) z[static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)])] = sol[i];
            consider(z);
        });
    });
    return best;
}

}  // namespace oracle
