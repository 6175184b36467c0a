#include "vecwp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vecwp/errors.hpp"

namespace vecwp {

Box::Box(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0 || lower_.size() != upper_.size()) fail(ErrorKind::input, "box bounds must have equal positive dimension");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) fail(ErrorKind::input, "box bounds must be finite");
        if (!(lower_[i] < upper_[i])) fail(ErrorKind::input, "box needs lower < upper componentwise");
    }
}

Box Box::cube(std::size_t d, double r) {
    const auto n = static_cast<Eigen::Index>(d);
    return Box(Vector::Constant(n, -r), Vector::Constant(n, r));
}

bool Box::contains(const Vector& x, double tol) const {
    if (x.size() != lower_.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
    return true;
}

double Box::max_distance_from(const Vector& x) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::max(std::abs(x[i] - lower_[i]), std::abs(upper_[i] - x[i]));
        s += a * a;
    }
    return std::sqrt(s);
}

Box Box::scaled(double factor) const {
    const Vector c = center();
    const Vector h = 0.5 * (upper_ - lower_) * factor;
    return Box(c - h, c + h);
}

Vector Box::clamp(const Vector& x) const {
    return x.cwiseMax(lower_).cwiseMin(upper_);
}

bool Box::operator==(const Box& other) const {
    return lower_.size() == other.lower_.size() && lower_ == other.lower_ && upper_ == other.upper_;
}

Lattice::Lattice(Box box, std::size_t resolution) : box_(std::move(box)), resolution_(resolution) {
    if (resolution_ < 2) fail(ErrorKind::input, "lattice resolution must be at least 2 per axis");
    double total = 1.0;
    for (std::size_t a = 0; a < box_.dim(); ++a) total *= static_cast<double>(resolution_);
    if (total > static_cast<double>(std::size_t{1} << 40)) fail(ErrorKind::input, "lattice too large");
    size_ = static_cast<std::size_t>(total);
    spacing_ = (box_.upper() - box_.lower()) / static_cast<double>(resolution_ - 1);
}

double Lattice::coordinate(Eigen::Index axis, std::size_t k) const {
    if (k + 1 == resolution_) return box_.upper()[axis];
    return box_.lower()[axis] + static_cast<double>(k) * spacing_[axis];
}

Vector Lattice::point(std::size_t index) const {
    if (index >= size_) fail(ErrorKind::input, "lattice index out of range");
    const auto d = static_cast<Eigen::Index>(dim());
    Vector x(d);
    for (Eigen::Index a = d - 1; a >= 0; --a) {
        x[a] = coordinate(a, index % resolution_);
        index /= resolution_;
    }
    return x;
}

std::size_t Lattice::nearest_index(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) fail(ErrorKind::input, "point dimension does not match the lattice");
    std::size_t idx = 0;
    for (Eigen::Index a = 0; a < x.size(); ++a) {
        const double t = (std::clamp(x[a], box_.lower()[a], box_.upper()[a]) - box_.lower()[a]) / spacing_[a];
        auto k = static_cast<std::size_t>(std::llround(t));
        if (k >= resolution_) k = resolution_ - 1;
        idx = idx * resolution_ + k;
    }
    return idx;
}

bool Lattice::is_node(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim() || !box_.contains(x, 1e-12 * spacing())) return false;
    const Vector p = point(nearest_index(x));
    return (p - x).cwiseAbs().maxCoeff() <= 1e-9 * spacing();
}

}  // namespace vecwp
