#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "vecwp/config.hpp"
#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"
#include "vecwp/expression.hpp"
#include "vecwp/problem.hpp"

using namespace vecwp;

namespace {

std::shared_ptr<const OrderingCone> orthant(std::size_t m) {
    return std::make_shared<const OrderingCone>(OrderingCone::orthant(m));
}

VectorProblem square_1d() {
    return VectorProblem("sq", Box(vec({-2.0}), vec({2.0})), orthant(1), 1, [](const Vector& x) { return vec({x[0] * x[0]}); });
}

}  // namespace

TEST_CASE("lattice indexing") {
    const Lattice l(Box(vec({-1.0, 0.0}), vec({1.0, 4.0})), 5);
    CHECK(l.size() == 25);
    CHECK(l.spacing() == doctest::Approx(1.0));
    CHECK((l.point(0) - vec({-1.0, 0.0})).norm() == 0.0);
    CHECK((l.point(1) - vec({-1.0, 1.0})).norm() == doctest::Approx(0.0));
    CHECK((l.point(24) - vec({1.0, 4.0})).norm() == doctest::Approx(0.0));
    std::size_t count = 0;
    l.for_each([&](std::size_t i, const Vector& x) {
        CHECK((x - l.point(i)).norm() < 1e-12);
        CHECK(l.nearest_index(x) == i);
        ++count;
    });
    CHECK(count == 25);
    CHECK(l.is_node(vec({0.0, 2.0})));
    CHECK_FALSE(l.is_node(vec({0.25, 2.0})));
    CHECK_THROWS_AS(Lattice(Box::cube(1, 1.0), 1), Error);
    CHECK_THROWS_AS(Box(vec({1.0}), vec({0.0})), Error);
}

TEST_CASE("level sets") {
    const auto p = square_1d();
    const auto s = level_set(p, vec({1.0}), 401);
    for (const auto& x : s.points) CHECK(std::abs(x[0]) <= 1.0 + 1e-12);
    CHECK(s.size() == 201);
    const VectorProblem zero("zero", Box::cube(2, 1.0), orthant(2), 2, [](const Vector&) { return vec({0.0, 0.0}); });
    CHECK(level_set(zero, vec({0.0, 0.0}), 11).size() == 121);
}

TEST_CASE("diameter matches brute force") {
    CHECK(diameter(std::vector<Vector>{vec({0.0, 0.0}), vec({3.0, 4.0})}) == doctest::Approx(5.0));
    CHECK(diameter(std::vector<Vector>{vec({1.0, 1.0})}) == 0.0);
    CHECK(diameter(std::vector<Vector>{}) == 0.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int d : {2, 3, 5}) {
        for (std::size_t n : {50, 3000}) {
            std::vector<Vector> pts;
            for (std::size_t i = 0; i < n; ++i) {
                Vector x(d);
                for (int k = 0; k < d; ++k) x[k] = g(rng) * (k + 1);
                pts.push_back(x);
            }
            CHECK(diameter(pts) == doctest::Approx(oracle::brute_diameter(pts)).epsilon(1e-12));
        }
    }
    const Lattice l(Box::cube(2, 1.0), 21);
    std::vector<Vector> all;
    l.for_each([&](std::size_t, const Vector& x) { all.push_back(x); });
    CHECK(diameter(all) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("scalarizations") {
    const VectorProblem p("x-x2", Box(vec({-3.0}), vec({3.0})), orthant(2), 2,
                          [](const Vector& x) { return vec({x[0], x[0] * x[0]}); });
    const auto h = scalarize_linear(p, vec({0.0, 1.0}));
    CHECK(h(vec({1.5})) == doctest::Approx(2.25));
    CHECK_THROWS_AS(scalarize_linear(p, vec({1.0, -1.0})), Error);

    const VectorProblem q("xex", Box(vec({-4.0}), vec({4.0})), orthant(2), 2,
                          [](const Vector& x) { return vec({x[0], -x[0] * std::exp(x[0])}); });
    const auto hq = scalarize_linear(q, vec({1.0, 1.0}));
    for (double x : {-2.0, 0.3, 1.7}) CHECK(hq(vec({x})) == doctest::Approx(x - x * std::exp(x)));

    const VectorProblem sq("sq2", Box(vec({-2.0}), vec({2.0})), orthant(2), 2,
                           [](const Vector& x) { return vec({x[0] * x[0], x[0] * x[0]}); });
    const auto so = scalarize_oriented(sq, vec({0.0}));
    CHECK(so(vec({0.0})) == 0.0);
    for (double x : {-1.5, 0.5, 2.0}) CHECK(so(vec({x})) == doctest::Approx(std::sqrt(2.0) * x * x));
}

TEST_CASE("perturbation term") {
    const VectorProblem zero("zero", Box::cube(2, 5.0), orthant(2), 2, [](const Vector&) { return vec({0.0, 0.0}); });
    const auto f = perturb(zero, {vec({0.0, 0.0}), 1.0, 1.0, vec({1.0, 1.0})});
    CHECK((f(vec({3.0, 4.0})) - vec({5.0, 5.0})).norm() < 1e-12);
    CHECK_THROWS_AS(perturb(zero, {vec({0.0, 0.0}), 1.0, 1.0, vec({1.0, 0.0})}), Error);
}

TEST_CASE("function distance") {
    const auto p = square_1d();
    CHECK(function_distance(p, p).value == 0.0);

    const VectorProblem shifted("sh", p.domain(), orthant(1), 1, [](const Vector& x) { return vec({x[0] * x[0] + 0.5}); });
    MetricParams mp;
    mp.truncation = 20;
    const double v = 0.5;
    CHECK(function_distance(p, shifted, mp).value ==
          doctest::Approx(v / (1 + v) * (1 - std::ldexp(1.0, -20))).epsilon(1e-12));

    // g = f + (1/j) ||x - theta|| k0 on [-2, 2]^1: ||f - g||_i = min(i, 2) ||k0|| / j.
    const auto two = std::make_shared<const OrderingCone>(OrderingCone::orthant(2).with_k0(vec({1.0, 2.0})));
    const VectorProblem f("f", Box(vec({-2.0}), vec({2.0})), two, 2, [](const Vector& x) { return vec({x[0], x[0] * x[0]}); });
    const double j = 3.0;
    const auto g = perturb(f, {vec({0.0}), 1.0 / j, 1.0, two->k0()});
    double series = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double a = std::min(i, 2) * std::sqrt(5.0) / j;
        series += std::ldexp(1.0, -i) * a / (1 + a);
    }
    CHECK(function_distance(f, g, mp).value == doctest::Approx(series).epsilon(1e-12));
}

TEST_CASE("expressions") {
    const auto e = Expression::parse("x1^2 + 2*x2 - exp(0) / 4", 2);
    CHECK(e(vec({3.0, 1.0})) == doctest::Approx(9.0 + 2.0 - 0.25));
    CHECK(Expression::parse("-x^2", 1)(vec({3.0})) == doctest::Approx(-9.0));
    CHECK(Expression::parse("2^3^2", 1)(vec({0.0})) == doctest::Approx(512.0));
    CHECK(Expression::parse("-x*exp(x)", 1)(vec({1.0})) == doctest::Approx(-std::exp(1.0)));
    CHECK(Expression::parse("norm(x1, x2) + max(x1, x2, 7) + abs(-pi)", 2)(vec({3.0, 4.0})) ==
          doctest::Approx(5.0 + 7.0 + 3.14159265358979));
    for (const char* bad : {"", "x +", "x3", "foo(x)", "(x", "x x", "1..2"}) {
        try {
            Expression::parse(bad, 2);
            FAIL("accepted: " << bad);
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::parse);
        }
    }
}

TEST_CASE("problem files") {
    const auto p = problem_from_json_text(R"({
        "label": "cfg", "decision_dim": 1, "objective_dim": 2,
        "domain": {"lower": [-3], "upper": [3]},
        "cone": {"generators": [[1, 0], [1, 1]], "k0": [2, 1]},
        "objectives": ["x", "x^2"]
    })");
    CHECK(p.label() == "cfg");
    CHECK((p(vec({2.0})) - vec({2.0, 4.0})).norm() < 1e-12);
    CHECK(p.cone().k0() == vec({2.0, 1.0}));
    CHECK(p.continuous());

    const auto q = problem_from_json_text(R"({"label": "o", "decision_dim": 2, "objective_dim": 2,
        "domain": {"lower": [0, 0], "upper": [1, 1]}, "objectives": ["x1 + x2", "x1 * x2"], "c_lsc": false})");
    CHECK(q.cone().dual_generators().size() == 2);
    CHECK_FALSE(q.c_lsc());

    auto kind_of = [](const std::string& text) {
        try {
            problem_from_json_text(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::certificate_failure;
    };
    CHECK(kind_of("{not json") == ErrorKind::parse);
    CHECK(kind_of(R"({"label": "a", "decision_dim": 1, "objective_dim": 2, "domain": {"lower": [0], "upper": [1]},
                     "objectives": ["x"]})") == ErrorKind::input);
    CHECK(kind_of(R"({"label": "a", "decision_dim": 1, "objective_dim": 1, "domain": {"lower": [0], "upper": [1]},
                     "objectives": ["y"]})") == ErrorKind::parse);

    const std::string path = "vecwp_test_problem.json";
    {
        std::ofstream out(path);
        out << R"({"label": "file", "decision_dim": 1, "objective_dim": 1, "domain": {"lower": [0], "upper": [1]},
                  "objectives": ["x"]})";
    }
    CHECK(load_problem_file(path).label() == "file");
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_problem_file("does-not-exist.json"), Error);
}
