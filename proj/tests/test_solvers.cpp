#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vecwp/lp.hpp"
#include "vecwp/nnls.hpp"

using namespace vecwp;

TEST_CASE("nnls matches subset enumeration") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int t = 0; t < 300; ++t) {
        const int rows = 2 + t % 3, cols = 1 + t % 5;
        Matrix a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a(i, j) = g(rng);
        Vector b(rows);
        for (int i = 0; i < rows; ++i) b[i] = g(rng);
        const auto r = nnls(a, b);
        CHECK(r.x.minCoeff() >= 0.0);
        std::vector<oracle::Vector> dirs;
        for (int j = 0; j < cols; ++j) dirs.push_back(a.col(j));
        const auto p = oracle::project_onto_cone(dirs, b);
        CHECK((a * r.x - b).norm() == doctest::Approx((p - b).norm()).epsilon(1e-9));
    }
}

TEST_CASE("lp small problems") {
    // min -x - y s.t. x + 2y <= 4, 3x + y <= 6: optimum at (8/5, 6/5).
    auto r = minimize(vec({-1.0, -1.0}), {{vec({1.0, 2.0}), Sense::le, 4.0}, {vec({3.0, 1.0}), Sense::le, 6.0}});
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.value == doctest::Approx(-14.0 / 5.0));
    CHECK((r.x - vec({1.6, 1.2})).norm() < 1e-9);

    r = minimize(vec({1.0, 1.0}), {{vec({1.0, 1.0}), Sense::ge, 2.0}, {vec({1.0, -1.0}), Sense::eq, 0.0}});
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.value == doctest::Approx(2.0));

    r = minimize(vec({1.0}), {{vec({1.0}), Sense::le, -1.0}});
    CHECK(r.status == LpResult::Status::infeasible);

    r = minimize(vec({-1.0, 0.0}), {{vec({1.0, -1.0}), Sense::le, 1.0}});
    CHECK(r.status == LpResult::Status::unbounded);
}

TEST_CASE("lp game values match the kernel enumeration") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        const int r = 2 + t % 3, c = 2 + (t / 3) % 3;
        Matrix a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a(i, j) = u(rng);
        // max v s.t. sum_i z_i a_ij >= v, sum z = 1, with v = v+ - v-.
        std::vector<LpRow> rows;
        for (int j = 0; j < c; ++j) {
            Vector row(r + 2);
            for (int i = 0; i < r; ++i) row[i] = a(i, j);
            row[r] = -1.0;
            row[r + 1] = 1.0;
            rows.push_back({row, Sense::ge, 0.0});
        }
        Vector ones = Vector::Zero(r + 2);
        ones.head(r).setOnes();
        rows.push_back({ones, Sense::eq, 1.0});
        Vector cost = Vector::Zero(r + 2);
        cost[r] = -1.0;
        cost[r + 1] = 1.0;
        const auto res = minimize(cost, rows);
        REQUIRE(res.status == LpResult::Status::optimal);
        CHECK(-res.value == doctest::Approx(oracle::matrix_game_value(a)).epsilon(1e-9));
    }
}
