#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vecwp/diagnostics.hpp"
#include "vecwp/errors.hpp"

using namespace vecwp;

namespace {

std::shared_ptr<const OrderingCone> orthant(std::size_t m) {
    return std::make_shared<const OrderingCone>(OrderingCone::orthant(m));
}

VectorProblem one_dim(double lo, double hi, std::function<Vector(double)> f) {
    return VectorProblem("t", Box(vec({lo}), vec({hi})), orthant(2), 2, [f](const Vector& x) { return f(x[0]); });
}

VectorProblem xex() {
    return one_dim(-4, 4, [](double x) { return vec({x, -x * std::exp(x)}); });
}

// Weak efficiency straight from the definition: no lattice x with
// f(x) - f(xbar) in -int C.
bool weakly_efficient_by_definition(const VectorProblem& p, const Vector& xbar, std::size_t grid) {
    const Vector fb = p(xbar);
    bool ok = true;
    Lattice(p.domain(), grid).for_each([&](std::size_t, const Vector& x) {
        const Vector diff = p(x) - fb;
        bool strictly_below = true;
        for (const auto& g : p.cone().dual_generators()) strictly_below = strictly_below && g.dot(diff) < -1e-9;
        if (strictly_below) ok = false;
    });
    return ok;
}

}  // namespace

TEST_CASE("classification on the exponential example") {
    const auto p = xex();
    auto v = classify_point(p, vec({1.0}), 801);
    CHECK(v.efficient == Tri::yes);
    CHECK(v.weakly_efficient == Tri::yes);

    v = classify_point(p, vec({-1.0}), 801);
    CHECK(v.efficient == Tri::no);
    REQUIRE(v.dominating_witness.has_value());
    CHECK((*v.dominating_witness)[0] < -1.0);
    const Vector diff = p(*v.dominating_witness) - p(vec({-1.0}));
    CHECK(diff.maxCoeff() <= 0.0);
    CHECK(diff.norm() > 0.0);

    CHECK_THROWS_AS(classify_point(p, vec({5.0}), 801), Error);
}

TEST_CASE("strict efficiency") {
    const auto sq = one_dim(-2, 2, [](double x) { return vec({x * x, x * x}); });
    CHECK(classify_point(sq, vec({0.0}), 201).strictly_efficient == Tri::yes);
    const auto zero = one_dim(-1, 1, [](double) { return vec({0.0, 0.0}); });
    const auto v = classify_point(zero, vec({0.0}), 201);
    CHECK(v.efficient == Tri::yes);
    CHECK(v.strictly_efficient == Tri::no);
}

TEST_CASE("weak efficiency through the oriented distance") {
    const auto sq = one_dim(-2, 2, [](double x) { return vec({x * x, x * x}); });
    CHECK(weff_via_distance(sq, vec({0.0}), 201));
    CHECK_FALSE(weff_via_distance(xex(), vec({-1.0}), 801));

    const VectorProblem two("two", Box::cube(2, 2.0), orthant(2), 2, [](const Vector& x) {
        return vec({(x - vec({1.0, 0.5})).squaredNorm(), (x + vec({1.0, 0.5})).squaredNorm()});
    });
    const auto image = evaluate_on_lattice(two, 21);
    image.lattice.for_each([&](std::size_t, const Vector& x) {
        CHECK(weff_via_distance(two, image, x) == weakly_efficient_by_definition(two, x, 21));
    });
    const auto scan = oriented_distance_scan(two, image, vec({2.0, 2.0}), 1e-9, true);
    CHECK(scan.min_value < 0.0);
}

TEST_CASE("Tykhonov diagnostic") {
    const ScalarProblem sq("sq", Box::cube(1, 2.0), [](const Vector& x) { return x[0] * x[0]; });
    const auto r = tykhonov_diagnostic(sq, default_schedule(), 401);
    CHECK(r.verdict == WellPosedness::well_posed);
    REQUIRE(r.argmin.has_value());
    CHECK(std::abs((*r.argmin)[0]) < 1e-12);
    for (const auto& pt : r.diam_curve) CHECK(pt.diameter <= 2 * std::sqrt(pt.level) + 1e-12);

    const ScalarProblem flat("flat", Box::cube(1, 1.0), [](const Vector&) { return 0.0; });
    CHECK(tykhonov_diagnostic(flat, default_schedule(), 101).verdict == WellPosedness::not_well_posed);

    const ScalarProblem two_wells("w", Box::cube(1, 2.0), [](const Vector& x) { return (x[0] * x[0] - 1) * (x[0] * x[0] - 1); });
    CHECK(tykhonov_diagnostic(two_wells, default_schedule(), 401).verdict == WellPosedness::not_well_posed);

    CHECK_THROWS_AS(tykhonov_diagnostic(sq, {}, 101), Error);
    CHECK_THROWS_AS(tykhonov_diagnostic(sq, {0.1, 0.5}, 101), Error);
}

TEST_CASE("DH diagnostic examples") {
    const auto sq = one_dim(-2, 2, [](double x) { return vec({x * x, x * x}); });
    const std::vector<Vector> c{vec({1.0, 1.0})};
    auto r = dh_diagnostic(sq, vec({0.0}), c, default_schedule(), 401);
    CHECK(r.verdict == WellPosedness::well_posed);
    const double h = 4.0 / 400;
    for (const auto& pt : r.diam_curve) CHECK(std::abs(pt.diameter - 2 * std::sqrt(pt.level)) <= 2 * h);

    const auto zero = one_dim(-1, 1, [](double) { return vec({0.0, 0.0}); });
    r = dh_diagnostic(zero, vec({0.3}), c, default_schedule(), 101);
    CHECK(r.verdict == WellPosedness::not_well_posed);
    for (const auto& pt : r.diam_curve) CHECK(pt.diameter == doctest::Approx(2.0));

    const auto lin = one_dim(-1, 1, [](double x) { return vec({x, -x}); });
    r = dh_diagnostic(lin, vec({0.0}), c, default_schedule(), 201);
    CHECK(r.verdict == WellPosedness::well_posed);
    for (const auto& pt : r.diam_curve) CHECK(std::abs(pt.diameter - 2 * std::min(pt.level, 1.0)) <= 2 * 0.01);

    CHECK_THROWS_AS(dh_diagnostic(sq, vec({0.0}), {vec({1.0, 0.0})}, default_schedule(), 101), Error);
}

TEST_CASE("DH agrees with the scalarized test") {
    const auto sq = one_dim(-2, 2, [](double x) { return vec({x * x, x * x}); });
    const auto zero = one_dim(-1, 1, [](double) { return vec({0.0, 0.0}); });
    for (const auto* p : {&sq, &zero}) {
        const auto dirs = default_dh_directions(p->cone());
        const auto a = dh_diagnostic(*p, vec({0.0}), dirs, default_schedule(), 201);
        const auto b = dh_via_scalarization(*p, vec({0.0}), default_schedule(), 201);
        CHECK(a.verdict == b.verdict);
    }
}

TEST_CASE("linear sufficiency") {
    const auto x24 = one_dim(-2, 2, [](double x) { return vec({x * x, x * x * x * x}); });
    const auto s = dh_sufficient_linear(x24, vec({0.0}), vec({1.0, 0.0}), default_schedule(), 201);
    CHECK(s.sufficient);
    CHECK(s.dh_report.verdict == WellPosedness::well_posed);
    CHECK(s.implication_holds);

    const auto zero = one_dim(-1, 1, [](double) { return vec({0.0, 0.0}); });
    CHECK_FALSE(dh_sufficient_linear(zero, vec({0.0}), vec({1.0, 1.0}), default_schedule(), 101).sufficient);
}
