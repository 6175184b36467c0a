#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vecwp/cone.hpp"
#include "vecwp/errors.hpp"

using namespace vecwp;

namespace {

OrderingCone skew() {
    return OrderingCone({vec({1.0, 0.0}), vec({1.0, 1.0})});
}

OrderingCone pyramid() {
    return OrderingCone({vec({1.0, 0.0, 1.0}), vec({0.0, 1.0, 1.0}), vec({-1.0, 0.0, 1.0}), vec({0.0, -1.0, 1.0})});
}

bool same_up_to_order(std::vector<Vector> a, std::vector<Vector> b) {
    if (a.size() != b.size()) return false;
    for (const auto& u : a) {
        bool found = false;
        for (const auto& v : b)
            if ((u.normalized() - v.normalized()).norm() < 1e-9) found = true;
        if (!found) return false;
    }
    return true;
}

void check_invariants(const OrderingCone& c) {
    for (const auto& g : c.dual_generators()) {
        CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& gen : c.generators()) CHECK(g.dot(gen) >= -1e-9);
        CHECK(g.dot(c.k0()) > 0.0);
    }
    CHECK(same_up_to_order(c.dual_generators(), oracle::facet_normals(c.generators())));
}

}  // namespace

TEST_CASE("membership on the orthant") {
    const auto c = OrderingCone::orthant(2);
    CHECK(c.contains(vec({1.0, 2.0})));
    CHECK_FALSE(c.contains(vec({0.0, 1.0}), true));
    CHECK(c.contains(vec({0.0, 1.0})));
    CHECK_FALSE(c.contains(vec({-1.0, 5.0})));
    CHECK_THROWS_AS(c.contains(vec({1.0, 2.0, 3.0})), Error);
}

TEST_CASE("strict membership implies membership") {
    const auto c = pyramid();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 2000; ++i) {
        const Vector y = vec({g(rng), g(rng), g(rng)});
        if (c.contains(y, true)) CHECK(c.contains(y));
    }
}

TEST_CASE("dual generators match brute-force facet enumeration") {
    check_invariants(OrderingCone::orthant(2));
    check_invariants(OrderingCone::orthant(3));
    check_invariants(skew());
    check_invariants(pyramid());
    CHECK(same_up_to_order(skew().dual_generators(), {vec({0.0, 1.0}), vec({1.0, -1.0})}));
    CHECK(same_up_to_order(dual_cone(OrderingCone::orthant(2)).generators(), OrderingCone::orthant(2).generators()));
}

TEST_CASE("biduality") {
    for (const auto& c : {skew(), pyramid(), OrderingCone::orthant(3)}) {
        const auto cc = dual_cone(dual_cone(c));
        CHECK(same_up_to_order(cc.generators(), c.extreme_generators()));
    }
}

TEST_CASE("random three-dimensional cones") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int t = 0; t < 20; ++t) {
        std::vector<Vector> gens;
        for (int i = 0; i < 5; ++i) gens.push_back(vec({u(rng), u(rng), 1.0}));
        const OrderingCone c(gens);
        check_invariants(c);
        const auto base = base_polytope(c);
        CHECK(base.vertices.size() == c.dual_generators().size());
        for (const auto& v : base.vertices) {
            CHECK(v.dot(c.k0()) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(dual_cone(c).contains(v));
        }
    }
}

TEST_CASE("base polytope vertices") {
    const auto c = OrderingCone::orthant(2).with_k0(vec({1.0, 1.0}));
    const auto b = base_polytope(c);
    CHECK(same_up_to_order(b.vertices, {vec({1.0, 0.0}), vec({0.0, 1.0})}));
    const auto b2 = base_polytope(OrderingCone::orthant(2).with_k0(vec({2.0, 1.0})));
    REQUIRE(b2.vertices.size() == 2);
    bool half = false, one = false;
    for (const auto& v : b2.vertices) {
        half = half || (v - vec({0.5, 0.0})).norm() < 1e-12;
        one = one || (v - vec({0.0, 1.0})).norm() < 1e-12;
    }
    CHECK(half);
    CHECK(one);
}

TEST_CASE("k0 must be interior") {
    CHECK_THROWS_AS(OrderingCone({vec({1.0, 0.0}), vec({0.0, 1.0})}, vec({1.0, 0.0})), Error);
    try {
        OrderingCone({vec({1.0, 0.0}), vec({0.0, 1.0})}, vec({1.0, 0.0}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_interior_point);
    }
}

TEST_CASE("invalid cones are rejected") {
    CHECK_THROWS_AS(OrderingCone({vec({1.0, 0.0}), vec({-1.0, 0.0}), vec({0.0, 1.0})}), Error);
    CHECK_THROWS_AS(OrderingCone({vec({1.0, 1.0})}), Error);
    CHECK_THROWS_AS(OrderingCone({vec({0.0, 0.0}), vec({1.0, 0.0})}), Error);
    std::vector<Vector> e5;
    for (int i = 0; i < 5; ++i) e5.push_back(Vector::Unit(5, i));
    CHECK_THROWS_AS(OrderingCone{e5}, Error);
    CHECK_NOTHROW(OrderingCone(e5, std::nullopt, e5));
}

TEST_CASE("dual sphere samples") {
    const auto c = pyramid();
    const auto s1 = sample_dual_sphere(c, 500, 3);
    const auto s2 = sample_dual_sphere(c, 500, 3);
    REQUIRE(s1.size() == 500);
    const auto dual = dual_cone(c);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i] == s2[i]);
        CHECK(s1[i].norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(dual.contains(s1[i]));
        for (const auto& gen : c.generators()) CHECK(s1[i].dot(gen) >= -1e-9);
    }
    const auto small = sample_dual_sphere(OrderingCone::orthant(2), 2, 0);
    CHECK(same_up_to_order(small, {vec({1.0, 0.0}), vec({0.0, 1.0})}));
}
