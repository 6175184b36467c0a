#pragma once

#include <cstddef>
#include <vector>

#include "vecwp/linalg.hpp"

namespace vecwp {

/// Axis-aligned box [lower, upper] with lower < upper componentwise.
class Box {
public:
    Box(Vector lower, Vector upper);

    /// [-r, r]^d
    static Box cube(std::size_t d, double r);

    std::size_t dim() const { return static_cast<std::size_t>(lower_.size()); }
    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    Vector center() const { return 0.5 * (lower_ + upper_); }
    bool contains(const Vector& x, double tol = 0.0) const;
    /// Largest distance from x to a point of the box (attained at a corner).
    double max_distance_from(const Vector& x) const;
    /// Box with the same center and half-widths scaled by factor.
    Box scaled(double factor) const;
    Vector clamp(const Vector& x) const;

    bool operator==(const Box& other) const;

private:
    Vector lower_;
    Vector upper_;
};

/// Uniform lattice with `resolution` nodes per axis over a box.
///
/// Indices are lexicographic in the multi-index (first axis most significant),
/// so "lowest index" tie-breaks are lexicographic.
class Lattice {
public:
    Lattice(Box box, std::size_t resolution);

    const Box& box() const { return box_; }
    std::size_t resolution() const { return resolution_; }
    std::size_t dim() const { return box_.dim(); }
    std::size_t size() const { return size_; }
    /// Largest per-axis spacing.
    double spacing() const { return spacing_.maxCoeff(); }
    const Vector& axis_spacing() const { return spacing_; }

    Vector point(std::size_t index) const;
    /// Index of the lattice node nearest to x (x is clamped into the box).
    std::size_t nearest_index(const Vector& x) const;
    /// True if x coincides with a node up to 1e-12 relative to the spacing.
    bool is_node(const Vector& x) const;

    /// Calls fn(index, point) for every node in index order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        const auto d = static_cast<Eigen::Index>(dim());
        std::vector<std::size_t> k(dim(), 0);
        Vector x = box_.lower();
        for (std::size_t idx = 0; idx < size_; ++idx) {
            fn(idx, static_cast<const Vector&>(x));
            for (Eigen::Index a = d - 1; a >= 0; --a) {
                auto& ka = k[static_cast<std::size_t>(a)];
                if (++ka < resolution_) {
                    x[a] = coordinate(a, ka);
                    break;
                }
                ka = 0;
                x[a] = box_.lower()[a];
            }
        }
    }

    double coordinate(Eigen::Index axis, std::size_t k) const;

private:
    Box box_;
    std::size_t resolution_;
    std::size_t size_;
    Vector spacing_;
};

}  // namespace vecwp
