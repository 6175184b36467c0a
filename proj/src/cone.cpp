#include "vecwp/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "vecwp/errors.hpp"

namespace vecwp {
namespace {

constexpr double kRankThreshold = 1e-10;

bool same_direction(const Vector& a, const Vector& b) {
    return a.dot(b) >= 1.0 - 1e-12;
}

void push_unique(std::vector<Vector>& dirs, const Vector& unit) {
    for (const auto& d : dirs)
        if (same_direction(d, unit)) return;
    dirs.push_back(unit);
}

std::size_t rank_of(const std::vector<Vector>& rows, std::size_t m) {
    if (rows.empty()) return 0;
    Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(kRankThreshold);
    return static_cast<std::size_t>(lu.rank());
}

// Extreme rays of C* for C = cone(gens): for every (m-1)-subset of generators
// spanning a hyperplane, keep the normal if all generators lie on one side.
std::vector<Vector> enumerate_facet_normals(const std::vector<Vector>& unit_gens, std::size_t m, double tol) {
    std::vector<Vector> normals;
    if (m == 1) {
        const bool any_pos = std::any_of(unit_gens.begin(), unit_gens.end(), [](const Vector& g) { return g[0] > 0; });
        const bool any_neg = std::any_of(unit_gens.begin(), unit_gens.end(), [](const Vector& g) { return g[0] < 0; });
        if (any_pos) normals.push_back(vec({1.0}));
        if (any_neg) normals.push_back(vec({-1.0}));
        return normals;
    }

    const std::size_t k = unit_gens.size();
    const std::size_t r = m - 1;
    if (k < r) return normals;

    std::vector<bool> mask(k, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
    Matrix sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
    do {
        Eigen::Index row = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask[i]) sub.row(row++) = unit_gens[i].transpose();
        Eigen::FullPivLU<Matrix> lu(sub);
        lu.setThreshold(kRankThreshold);
        if (static_cast<std::size_t>(lu.rank()) != r) continue;
        Vector n = lu.kernel().col(0);
        n.normalize();

        bool nonneg = true, nonpos = true;
        for (const auto& g : unit_gens) {
            const double s = n.dot(g);
            if (s < -tol) nonneg = false;
            if (s > tol) nonpos = false;
        }
        if (nonneg) push_unique(normals, n);
        if (nonpos) push_unique(normals, -n);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return normals;
}

}  // namespace

OrderingCone::OrderingCone(std::vector<Vector> generators, std::optional<Vector> k0,
                           std::optional<std::vector<Vector>> dual_generators, double tol)
    : generators_(std::move(generators)), tol_(tol) {
    if (generators_.empty()) fail(ErrorKind::input, "cone needs at least one generator");
    if (!(tol_ >= 0.0)) fail(ErrorKind::input, "membership tolerance must be nonnegative");
    dim_ = static_cast<std::size_t>(generators_.front().size());
    if (dim_ == 0) fail(ErrorKind::input, "cone ambient dimension must be positive");

    std::vector<Vector> unit_gens;
    for (const auto& g : generators_) {
        if (static_cast<std::size_t>(g.size()) != dim_) fail(ErrorKind::input, "generator dimension mismatch");
        const double n = g.norm();
        if (!(n > tol_) || !std::isfinite(n)) fail(ErrorKind::input, "generators must be nonzero and finite");
        unit_gens.push_back(g / n);
    }

    if (dual_generators) {
        for (auto& g : *dual_generators) {
            if (static_cast<std::size_t>(g.size()) != dim_) fail(ErrorKind::input, "dual generator dimension mismatch");
            const double n = g.norm();
            if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::input, "dual generators must be nonzero and finite");
            push_unique(duals_, g / n);
        }
        for (const auto& g : duals_)
            for (const auto& c : unit_gens)
                if (g.dot(c) < -tol_)
                    fail(ErrorKind::input, "dual generator is negative on a generator of the cone");
        if (dim_ <= max_enumeration_dim) {
            const auto computed = enumerate_facet_normals(unit_gens, dim_, tol_);
            auto covers = [](const std::vector<Vector>& a, const std::vector<Vector>& b) {
                return std::all_of(b.begin(), b.end(), [&](const Vector& x) {
                    return std::any_of(a.begin(), a.end(), [&](const Vector& y) { return y.dot(x) >= 1.0 - 1e-7; });
                });
            };
            if (!covers(duals_, computed) || !covers(computed, duals_))
                fail(ErrorKind::input, "supplied dual generators do not match the facets of the cone");
        }
    } else {
        if (dim_ > max_enumeration_dim)
            fail(ErrorKind::input, "dual generators must be supplied for cones in dimension above 4");
        duals_ = enumerate_facet_normals(unit_gens, dim_, tol_);
    }

    if (rank_of(duals_, dim_) != dim_) fail(ErrorKind::input, "cone is not pointed");
    const Vector dual_sum = std::accumulate(duals_.begin(), duals_.end(), Vector(Vector::Zero(static_cast<Eigen::Index>(dim_))));
    for (const auto& c : unit_gens)
        if (!(dual_sum.dot(c) > tol_)) fail(ErrorKind::input, "cone is not pointed");

    dual_rows_.resize(static_cast<Eigen::Index>(duals_.size()), static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < duals_.size(); ++i) dual_rows_.row(static_cast<Eigen::Index>(i)) = duals_[i].transpose();

    if (k0) {
        if (static_cast<std::size_t>(k0->size()) != dim_) fail(ErrorKind::input, "k0 dimension mismatch");
        k0_ = *k0;
        if (!(margin(k0_) > tol_)) fail(ErrorKind::not_interior_point, "k0 is not an interior point of the cone");
    } else {
        Vector s = Vector::Zero(static_cast<Eigen::Index>(dim_));
        for (const auto& g : generators_) s += g;
        k0_ = s.normalized();
        if (!(margin(k0_) > tol_)) fail(ErrorKind::input, "cone has empty interior");
    }
}

OrderingCone OrderingCone::orthant(std::size_t m) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back(Vector::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)));
    return OrderingCone(gens, std::nullopt, gens);
}

void OrderingCone::check_dim(const Vector& y) const {
    if (static_cast<std::size_t>(y.size()) != dim_) fail(ErrorKind::input, "vector dimension does not match the cone");
}

double OrderingCone::margin(const Vector& y) const {
    check_dim(y);
    return (dual_rows_ * y).minCoeff();
}

bool OrderingCone::contains(const Vector& y, bool strict) const {
    const double m = margin(y);
    return strict ? m > tol_ : m >= -tol_;
}

std::vector<Vector> OrderingCone::extreme_generators() const {
    std::vector<Vector> out;
    for (const auto& g : generators_) {
        const Vector u = g.normalized();
        std::vector<Vector> active;
        for (const auto& d : duals_)
            if (std::abs(d.dot(u)) <= std::max(tol_, 1e-12)) active.push_back(d);
        if (dim_ == 1 || rank_of(active, dim_) >= dim_ - 1) push_unique(out, u);
    }
    return out;
}

OrderingCone OrderingCone::with_k0(const Vector& k0) const {
    return OrderingCone(generators_, k0, duals_, tol_);
}

OrderingCone dual_cone(const OrderingCone& cone) {
    const auto& duals = cone.dual_generators();
    Vector s = Vector::Zero(static_cast<Eigen::Index>(cone.ambient_dim()));
    for (const auto& g : duals) s += g;
    return OrderingCone(duals, s.normalized(), cone.extreme_generators(), cone.tol());
}

DualBase base_polytope(const OrderingCone& cone) {
    DualBase base;
    for (const auto& g : cone.dual_generators()) {
        const double s = g.dot(cone.k0());
        if (!(s > cone.tol())) fail(ErrorKind::not_interior_point, "k0 is not interior: <g, k0> <= tol");
        base.vertices.push_back(g / s);
    }
    return base;
}

std::vector<Vector> sample_dual_sphere(const OrderingCone& cone, std::size_t n, std::uint64_t seed) {
    const auto& duals = cone.dual_generators();
    std::vector<Vector> out(duals.begin(), duals.end());
    const std::size_t k = duals.size();
    if (k == 1) {
        while (out.size() < n) out.push_back(duals.front());
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::size_t> idx(k);
    const auto dim = static_cast<Eigen::Index>(cone.ambient_dim());
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool uniform_turn = false;
    while (out.size() < n) {
        // Alternate between uniform directions of C* (rejection from the whole
        // sphere) and combinations over random faces of C*.
        uniform_turn = !uniform_turn;
        if (uniform_turn) {
            bool found = false;
            for (int attempt = 0; attempt < 256 && !found; ++attempt) {
                Vector xi(dim);
                for (Eigen::Index i = 0; i < dim; ++i) xi[i] = gauss(rng);
                const double norm = xi.norm();
                if (!(norm > 1e-12)) continue;
                xi /= norm;
                bool inside = true;
                for (const auto& c : cone.generators()) inside = inside && xi.dot(c) >= 0.0;
                if (inside) {
                    out.push_back(xi);
                    found = true;
                }
            }
            if (found) continue;
        }
        std::size_t s = 2;
        if (k > 2 && unif(rng) >= 0.5) s = 2 + static_cast<std::size_t>(unif(rng) * static_cast<double>(k - 1));
        s = std::min(s, k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < s; ++i) {
            const auto j = i + static_cast<std::size_t>(unif(rng) * static_cast<double>(k - i));
            std::swap(idx[i], idx[std::min(j, k - 1)]);
        }
        const bool sharpen = unif(rng) < 0.5;
        Vector xi = Vector::Zero(dim);
        for (std::size_t i = 0; i < s; ++i) {
            double w = -std::log(1.0 - unif(rng));
            if (sharpen) w *= w;
            xi += w * duals[idx[i]];
        }
        const double norm = xi.norm();
        if (norm > 1e-12) out.push_back(xi / norm);
    }
    return out;
}

}  // namespace vecwp
