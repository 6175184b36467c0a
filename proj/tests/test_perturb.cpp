#include <doctest.h>

#include <random>

#include "vecwp/errors.hpp"
#include "vecwp/perturb.hpp"
#include "vecwp/registry.hpp"

using namespace vecwp;

namespace {

std::shared_ptr<const OrderingCone> orthant(std::size_t m) {
    return std::make_shared<const OrderingCone>(OrderingCone::orthant(m));
}

VectorProblem one_dim(double lo, double hi, std::function<Vector(double)> f) {
    return VectorProblem("t", Box(vec({lo}), vec({hi})), orthant(2), 2, [f](const Vector& x) { return f(x[0]); });
}

// Checks the three conclusions directly on every lattice point.
void check_ekeland_exhaustively(const Lattice& lattice, const ScalarProblem& sp, const EkelandResult& e, double eps) {
    const double fc = sp(e.center);
    const double fs = sp(e.start);
    CHECK((e.center - e.start).norm() < e.radius);
    CHECK(fc + eps * (e.center - e.start).norm() <= fs + 1e-12);
    std::size_t bad = 0;
    lattice.for_each([&](std::size_t, const Vector& x) {
        if ((x - e.center).norm() == 0.0) return;
        if (!(sp(x) + eps * (x - e.center).norm() > fc)) ++bad;
    });
    CHECK(bad == 0);
    CHECK(e.violations == 0);
    CHECK(e.iterations <= lattice.size());
}

}  // namespace

TEST_CASE("Tikhonov regularization of the zero function") {
    const auto zero = one_dim(-1, 1, [](double) { return vec({0.0, 0.0}); });
    double previous = 2.0;
    for (std::size_t n : {1, 2, 4, 8}) {
        const auto r = tikhonov_regularize(zero, vec({0.0}), n);
        const auto& c = r.certificate;
        CHECK(c.valid);
        CHECK(c.efficient == Tri::yes);
        CHECK(c.dh_report.verdict == WellPosedness::well_posed);
        // ||k0|| = 1 and the box reaches distance 1 from 0, so every term is 2^-i (1/n)/(1 + 1/n).
        const double a = 1.0 / static_cast<double>(n);
        const double expected = a / (1 + a) * (1 - std::ldexp(1.0, -20));
        CHECK(c.closed_form_distance == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(c.distance.value - expected) <= 1e-6);
        CHECK(c.distance.value < previous);
        previous = c.distance.value;
        const Vector fx = r.problem(vec({0.5}));
        CHECK((fx - 0.5 / static_cast<double>(n) * zero.cone().k0()).norm() < 1e-12);
    }
}

TEST_CASE("Tikhonov regularization needs an efficient point") {
    const auto xx2 = one_dim(-3, 3, [](double x) { return vec({x, x * x}); });
    try {
        tikhonov_regularize(xx2, vec({1.0}), 1);
        FAIL("accepted a dominated point");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
}

TEST_CASE("closed-form distance") {
    const Box box(vec({-1.0, -1.0}), vec({3.0, 1.0}));
    const Vector xbar = vec({0.0, 0.0});
    const double r = std::sqrt(10.0);
    double expected = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double a = std::min<double>(i, r) * 2.0 / 3.0;
        expected += std::ldexp(1.0, -i) * a / (1 + a);
    }
    CHECK(tikhonov_distance_closed_form(box, xbar, 2.0, 3, 10) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Ekeland point on a parabola") {
    const ScalarProblem sp("sq", Box::cube(1, 2.0), [](const Vector& x) { return x[0] * x[0]; });
    const auto e = ekeland_point(sp, vec({1.0}), 0.1, 10.1, 401);
    CHECK(std::abs(e.center[0]) < 0.06);
    CHECK(e.item1);
    CHECK(e.item2);
    CHECK(e.item3);
    CHECK(e.margin > 0.0);
    check_ekeland_exhaustively(Lattice(sp.domain(), 401), sp, e, 0.1);

    const auto fixed = ekeland_point(sp, vec({0.0}), 0.1, 1.0, 401);
    CHECK(fixed.iterations == 0);
    CHECK(fixed.center[0] == 0.0);

    try {
        ekeland_point(sp, vec({2.0}), 0.1, 1.0, 401);
        FAIL("hypothesis not checked");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::hypothesis_not_met);
    }
}

TEST_CASE("Ekeland point on random lattices") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 8; ++t) {
        const Box box = Box::cube(2, 1.0);
        const Lattice lattice(box, 31);
        std::vector<double> values(lattice.size());
        for (auto& v : values) v = u(rng);
        const auto table = std::make_shared<std::vector<double>>(values);
        const ScalarProblem sp("table", box, [lattice, table](const Vector& x) { return (*table)[lattice.nearest_index(x)]; });
        const Vector start = lattice.point(static_cast<std::size_t>(t * 97) % lattice.size());
        const double inf = *std::min_element(values.begin(), values.end());
        const double eps = 0.05 + 0.1 * t;
        const double r = (sp(start) - inf) / eps + 0.5;
        const auto e = ekeland_point(lattice, values, sp, start, eps, r);
        check_ekeland_exhaustively(lattice, sp, e, eps);
    }
}

TEST_CASE("density pipeline") {
    const auto p = make_problem("x-x2");
    MetricParams mp;
    const auto res = density_pipeline(p, 0.1, mp, 201);
    const auto& c = res.certificate;
    CHECK(c.valid);
    CHECK(c.d_f_h < 0.1);
    CHECK(c.d_f_g < 0.05);
    CHECK(c.d_g_h <= 0.05 + c.metric_tail + 1e-12);
    CHECK(c.bounding_functional.dot(c.k0) == doctest::Approx(1.0));
    CHECK(c.dh_report.verdict == WellPosedness::well_posed);
    CHECK(c.xhat_efficient == Tri::yes);
    for (const auto& clause : c.clauses) CHECK_MESSAGE(clause.holds, clause.name);
    // h = f + (1/j)||x - theta|| k0 + eps ||x - xhat|| k0, re-evaluated here.
    const Vector x = vec({0.7});
    const Vector expected = p(x) + (1.0 / static_cast<double>(c.j)) * (x - c.theta).norm() * c.k0 +
                            c.epsilon * (x - c.xhat).norm() * c.k0;
    CHECK((res.problem(x) - expected).norm() < 1e-12);

    try {
        density_pipeline(make_problem("x-minus-xex"), 0.1, mp, 201);
        FAIL("pipeline accepted an unbounded problem");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_bounding_functional);
    }
}

TEST_CASE("pipeline keeps a unique strict minimizer") {
    // Both components have a sharp minimum at x* = 0.5, steeper than the
    // perturbation slopes, so the minimizer does not move.
    const auto p = one_dim(-2, 2, [](double x) { return vec({std::abs(x - 0.5), 2 * std::abs(x - 0.5)}); });
    const auto res = density_pipeline(p, 0.5, MetricParams{}, 401);
    CHECK(res.certificate.valid);
    CHECK(std::abs(res.certificate.xhat[0] - 0.5) <= 0.01 + 1e-12);
}

TEST_CASE("genericity probe") {
    std::vector<VectorProblem> family;
    for (std::uint64_t s = 0; s < 4; ++s) family.push_back(make_convex_quadratic_pair(1, s));
    family.push_back(make_problem("zero-function"));
    const auto rep = genericity_probe(family, 0.1, MetricParams{}, 101);
    CHECK(rep.attempted == 5);
    CHECK(rep.successes == 5);
    REQUIRE(rep.success_fraction.has_value());
    CHECK(*rep.success_fraction == 1.0);

    const auto empty = genericity_probe({}, 0.1, MetricParams{}, 101);
    CHECK_FALSE(empty.success_fraction.has_value());

    const auto skipped = genericity_probe({make_problem("double-well")}, 0.1, MetricParams{}, 101);
    REQUIRE(skipped.members.size() == 1);
    CHECK(skipped.members[0].skipped);
    CHECK_FALSE(skipped.success_fraction.has_value());
}
