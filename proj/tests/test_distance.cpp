#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"

using namespace vecwp;

namespace {

OrderingCone skew() {
    return OrderingCone({vec({1.0, 0.0}), vec({1.0, 1.0})});
}

OrderingCone pyramid() {
    return OrderingCone({vec({1.0, 0.0, 1.0}), vec({0.0, 1.0, 1.0}), vec({-1.0, 0.0, 1.0}), vec({0.0, -1.0, 1.0})});
}

}  // namespace

TEST_CASE("orthant examples") {
    const auto c = OrderingCone::orthant(2);
    CHECK((project_neg_cone(c, vec({1.0, 1.0})) - vec({0.0, 0.0})).norm() < 1e-12);
    CHECK((project_neg_cone(c, vec({1.0, -2.0})) - vec({0.0, -2.0})).norm() < 1e-12);
    CHECK(oriented_distance_value(c, vec({1.0, 1.0})) == doctest::Approx(std::sqrt(2.0)));
    CHECK(oriented_distance_value(c, vec({-1.0, -1.0})) == doctest::Approx(-1.0));
    CHECK(oriented_distance_value(c, vec({3.0, -4.0})) == doctest::Approx(3.0));
    CHECK(std::abs(oriented_distance_value(c, vec({0.0, -5.0}))) < 1e-12);
    const auto r = oriented_distance(c, vec({-1.0, -3.0}));
    REQUIRE(r.active_facet.has_value());
    CHECK(c.dual_generators()[*r.active_facet].dot(vec({0.0, 1.0})) == doctest::Approx(0.0));
}

TEST_CASE("sampled maximum formula") {
    const auto c = OrderingCone::orthant(2);
    CHECK(oriented_distance_sampled(c, vec({-1.0, -1.0}), std::vector<Vector>{vec({1.0, 0.0}), vec({0.0, 1.0})}) ==
          doctest::Approx(-1.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(oriented_distance_sampled(c, vec({1.0, 1.0}), std::vector<Vector>{vec({1.0, 0.0}), vec({s, s})}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(oriented_distance_sampled(c, vec({1.0, 1.0}), std::vector<Vector>{}), Error);
}

TEST_CASE("agrees with the enumeration oracle") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (const auto& c : {skew(), pyramid(), OrderingCone::orthant(3)}) {
        const auto m = static_cast<Eigen::Index>(c.ambient_dim());
        for (int i = 0; i < 2000; ++i) {
            Vector y(m);
            for (Eigen::Index k = 0; k < m; ++k) y[k] = g(rng);
            const auto r = oriented_distance(c, y);
            CHECK(r.value == doctest::Approx(oracle::oriented_distance(c.generators(), y)).epsilon(1e-9));
            if (r.value > 0) {
                CHECK((y - r.nearest_point).norm() == doctest::Approx(r.value).epsilon(1e-9));
                CHECK(c.contains(-r.nearest_point));
            } else {
                CHECK(c.contains(-y));
            }
        }
    }
}

TEST_CASE("projection optimality against sampled points of -C") {
    const auto c = skew();
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Vector y = vec({g(rng), g(rng)});
        const Vector p = project_neg_cone(c, y);
        for (int k = 0; k < 200; ++k) {
            const Vector z = -(u(rng) * c.generators()[0] + u(rng) * c.generators()[1]);
            CHECK((y - p).dot(z - p) <= 1e-9);
        }
    }
}

TEST_CASE("sampled value is a lower bound") {
    const auto c = pyramid();
    const auto samples = sample_dual_sphere(c, 10000, 1);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int i = 0; i < 500; ++i) {
        const Vector y = vec({g(rng), g(rng), g(rng)});
        const double exact = oriented_distance_value(c, y);
        const double sampled = oriented_distance_sampled(c, y, samples);
        CHECK(sampled <= exact + 1e-9);
        CHECK(sampled >= exact - 1e-2 * (1.0 + y.norm()));
    }
}
