#include "vecwp/distance.hpp"

#include <limits>

#include "vecwp/errors.hpp"
#include "vecwp/nnls.hpp"

namespace vecwp {
namespace {

void check_dim(const OrderingCone& cone, const Vector& y) {
    if (static_cast<std::size_t>(y.size()) != cone.ambient_dim())
        fail(ErrorKind::input, "vector dimension does not match the cone");
}

// Largest <g, y> over dual generators, first index on ties.
std::pair<double, std::size_t> top_facet(const OrderingCone& cone, const Vector& y) {
    const Vector s = cone.dual_matrix() * y;
    std::size_t best = 0;
    for (Eigen::Index i = 1; i < s.size(); ++i)
        if (s[i] > s[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(i);
    return {s[static_cast<Eigen::Index>(best)], best};
}

Vector dual_projection(const OrderingCone& cone, const Vector& y) {
    const Matrix gens = cone.dual_matrix().transpose();
    const auto sol = nnls(gens, y);
    return gens * sol.x;
}

}  // namespace

Vector project_neg_cone(const OrderingCone& cone, const Vector& y) {
    check_dim(cone, y);
    if (top_facet(cone, y).first <= 0.0) return y;
    return y - dual_projection(cone, y);
}

OrientedDistanceResult oriented_distance(const OrderingCone& cone, const Vector& y) {
    check_dim(cone, y);
    OrientedDistanceResult res;
    const auto [top, facet] = top_facet(cone, y);
    if (top <= cone.tol()) {
        // Inside -C: the nearest outside point is across the nearest facet.
        res.value = top;
        res.nearest_point = y;
        res.active_facet = facet;
        return res;
    }
    const Vector p = dual_projection(cone, y);
    res.value = p.norm();
    res.nearest_point = y - p;
    return res;
}

double oriented_distance_value(const OrderingCone& cone, const Vector& y) {
    check_dim(cone, y);
    const double top = top_facet(cone, y).first;
    if (top <= cone.tol()) return top;
    return dual_projection(cone, y).norm();
}

double oriented_distance_sampled(const OrderingCone& cone, const Vector& y, std::span<const Vector> samples) {
    check_dim(cone, y);
    if (samples.empty()) fail(ErrorKind::input, "oriented_distance_sampled needs at least one sample");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& xi : samples) {
        if (xi.size() != y.size()) fail(ErrorKind::input, "sample dimension mismatch");
        best = std::max(best, xi.dot(y));
    }
    return best;
}

}  // namespace vecwp
