#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "vecwp/cone.hpp"
#include "vecwp/linalg.hpp"

namespace vecwp {

/// Oriented distance to -C: d(y, -C) - d(y, R^m \ -C).
struct OrientedDistanceResult {
    double value = 0.0;
    /// Projection of y onto -C when y lies outside, y itself otherwise.
    Vector nearest_point;
    /// Facet of -C nearest to y, set when y lies in -C.
    std::optional<std::size_t> active_facet;
};

/// Euclidean projection onto -C. Solved through the Moreau decomposition
/// y = P_{-C}(y) + P_{C*}(y), with P_{C*} computed by nonnegative least
/// squares over the dual generators.
Vector project_neg_cone(const OrderingCone& cone, const Vector& y);

OrientedDistanceResult oriented_distance(const OrderingCone& cone, const Vector& y);

/// Value only; skips the projection when y is in -C.
double oriented_distance_value(const OrderingCone& cone, const Vector& y);

/// max over samples of <xi, y>. Lower bound on the exact value when every
/// sample is a unit vector of C*.
double oriented_distance_sampled(const OrderingCone& cone, const Vector& y, std::span<const Vector> samples);

}  // namespace vecwp
