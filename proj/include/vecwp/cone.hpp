#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vecwp/linalg.hpp"

namespace vecwp {

/// Polyhedral ordering cone C = cone(generators) in R^m.
///
/// The cone must be closed, convex, pointed and solid. Its dual C* is held as
/// a list of unit extreme rays, which are also the outward facet normals of -C,
/// so that C = { y : <g, y> >= 0 for every dual generator g }.
///
/// Dual generators are obtained by facet enumeration when m <= 4 and must be
/// supplied by the caller above that. Instances are immutable.
class OrderingCone {
public:
    static constexpr double default_tol = 1e-9;
    static constexpr std::size_t max_enumeration_dim = 4;

    explicit OrderingCone(std::vector<Vector> generators,
                          std::optional<Vector> k0 = std::nullopt,
                          std::optional<std::vector<Vector>> dual_generators = std::nullopt,
                          double tol = default_tol);

    /// Nonnegative orthant R^m_+.
    static OrderingCone orthant(std::size_t m);

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<Vector>& generators() const { return generators_; }
    const std::vector<Vector>& dual_generators() const { return duals_; }
    /// Dual generators stacked as rows.
    const Matrix& dual_matrix() const { return dual_rows_; }
    const Vector& k0() const { return k0_; }
    double tol() const { return tol_; }

    /// Non-strict: <g, y> >= -tol for all g. Strict: <g, y> > tol for all g.
    bool contains(const Vector& y, bool strict = false) const;

    /// min over dual generators of <g, y>; nonnegative iff y is in C.
    double margin(const Vector& y) const;

    /// Unit-norm generators that span extreme rays, deduplicated.
    std::vector<Vector> extreme_generators() const;

    /// Same cone with a different interior point.
    OrderingCone with_k0(const Vector& k0) const;

private:
    void check_dim(const Vector& y) const;

    std::size_t dim_ = 0;
    std::vector<Vector> generators_;
    std::vector<Vector> duals_;
    Matrix dual_rows_;
    Vector k0_;
    double tol_ = default_tol;
};

/// C*, with the roles of generators and dual generators exchanged.
OrderingCone dual_cone(const OrderingCone& cone);

/// Vertices of G = { xi in C* : <xi, k0> = 1 }.
struct DualBase {
    std::vector<Vector> vertices;
};

DualBase base_polytope(const OrderingCone& cone);

/// Unit vectors of C*, deterministic in the seed. The normalized dual
/// generators always come first; the rest alternate between uniform draws from
/// C* on the sphere (by rejection) and random conic combinations of random
/// subsets of dual generators, so faces of C* are sampled as well as its
/// interior. Returns max(n, number of dual generators) vectors.
std::vector<Vector> sample_dual_sphere(const OrderingCone& cone, std::size_t n, std::uint64_t seed);

}  // namespace vecwp
