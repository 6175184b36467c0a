#include "vecwp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"

namespace vecwp {

VectorProblem::VectorProblem(std::string label, Box domain, std::shared_ptr<const OrderingCone> cone,
                             std::size_t objective_dim, VectorMap evaluator)
    : label_(std::move(label)),
      domain_(std::move(domain)),
      cone_(std::move(cone)),
      objective_dim_(objective_dim),
      evaluator_(std::move(evaluator)) {
    if (!cone_) fail(ErrorKind::input, "problem needs a cone");
    if (!evaluator_) fail(ErrorKind::input, "problem needs an evaluator");
    if (objective_dim_ != cone_->ambient_dim()) fail(ErrorKind::input, "objective dimension does not match the cone");
}

Vector VectorProblem::operator()(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != decision_dim()) fail(ErrorKind::input, "decision vector dimension mismatch");
    Vector y = evaluator_(x);
    if (static_cast<std::size_t>(y.size()) != objective_dim_) fail(ErrorKind::input, "evaluator returned the wrong dimension");
    return y;
}

ScalarProblem::ScalarProblem(std::string label, Box domain, ScalarMap evaluator)
    : label_(std::move(label)), domain_(std::move(domain)), evaluator_(std::move(evaluator)) {
    if (!evaluator_) fail(ErrorKind::input, "scalar problem needs an evaluator");
}

VectorProblem perturb(const VectorProblem& p, const PerturbationTerm& term) {
    if (static_cast<std::size_t>(term.center.size()) != p.decision_dim()) fail(ErrorKind::input, "perturbation center dimension mismatch");
    if (static_cast<std::size_t>(term.direction.size()) != p.objective_dim()) fail(ErrorKind::input, "perturbation direction dimension mismatch");
    if (!(term.coefficient > 0.0)) fail(ErrorKind::input, "perturbation coefficient must be positive");
    if (!(term.exponent >= 1.0)) fail(ErrorKind::input, "perturbation exponent must be at least 1");
    if (!p.cone().contains(term.direction, true)) fail(ErrorKind::input, "perturbation direction must be interior to the cone");

    const VectorMap base = p.evaluator();
    VectorMap f = [base, term](const Vector& x) -> Vector {
        const double r = (x - term.center).norm();
        const double w = term.exponent == 1.0 ? r : std::pow(r, term.exponent);
        return base(x) + term.coefficient * w * term.direction;
    };
    VectorProblem out(p.label(), p.domain(), p.cone_ptr(), p.objective_dim(), std::move(f));
    out.set_continuous(p.continuous()).set_c_lsc(p.c_lsc());
    return out;
}

ScalarProblem scalarize_linear(const VectorProblem& p, const Vector& xi) {
    if (static_cast<std::size_t>(xi.size()) != p.objective_dim()) fail(ErrorKind::input, "functional dimension mismatch");
    if (!(xi.norm() > 0.0)) fail(ErrorKind::input, "functional must be nonzero");
    for (const auto& c : p.cone().generators())
        if (xi.dot(c.normalized()) < -p.cone().tol()) fail(ErrorKind::input, "functional is not in the dual cone");
    VectorProblem f = p;
    return ScalarProblem(p.label() + ":linear", p.domain(), [f, xi](const Vector& x) { return xi.dot(f(x)); });
}

ScalarProblem scalarize_oriented(const VectorProblem& p, const Vector& xbar) {
    if (!p.domain().contains(xbar)) fail(ErrorKind::input, "reference point lies outside the domain");
    const Vector fbar = p(xbar);
    VectorProblem f = p;
    return ScalarProblem(p.label() + ":oriented", p.domain(),
                         [f, fbar](const Vector& x) { return oriented_distance_value(f.cone(), f(x) - fbar); });
}

PointSet level_set(const VectorProblem& p, const Vector& y, std::size_t grid_resolution) {
    if (static_cast<std::size_t>(y.size()) != p.objective_dim()) fail(ErrorKind::input, "level dimension mismatch");
    const Lattice lattice(p.domain(), grid_resolution);
    PointSet out;
    lattice.for_each([&](std::size_t, const Vector& x) {
        if (p.cone().contains(y - p(x))) out.points.push_back(x);
    });
    return out;
}

namespace {

// Keeps the points that are first or last along their line parallel to
// `axis`. Vertices of the convex hull always survive.
std::vector<std::size_t> line_extremes(const std::vector<Vector>& pts, std::vector<std::size_t> ids, Eigen::Index axis) {
    const Eigen::Index d = pts.front().size();
    auto key_less = [&](std::size_t a, std::size_t b) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (k == axis) continue;
            if (pts[a][k] != pts[b][k]) return pts[a][k] < pts[b][k];
        }
        return false;
    };
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        if (key_less(a, b)) return true;
        if (key_less(b, a)) return false;
        return pts[a][axis] < pts[b][axis];
    });
    std::vector<std::size_t> keep;
    std::size_t start = 0;
    while (start < ids.size()) {
        std::size_t end = start + 1;
        while (end < ids.size() && !key_less(ids[start], ids[end])) ++end;
        keep.push_back(ids[start]);
        if (end - start > 1) keep.push_back(ids[end - 1]);
        start = end;
    }
    return keep;
}

}  // namespace

double diameter(const std::vector<Vector>& points) {
    if (points.size() < 2) return 0.0;
    const Eigen::Index d = points.front().size();
    if (d == 1) {
        double lo = points.front()[0], hi = lo;
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    std::vector<std::size_t> ids(points.size());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    for (Eigen::Index a = d - 1; a >= 0; --a) ids = line_extremes(points, std::move(ids), a);

    if (ids.size() <= 2048) {
        double best = 0.0;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
                best = std::max(best, (points[ids[i]] - points[ids[j]]).squaredNorm());
        return std::sqrt(best);
    }

    // Lower bound from a few farthest-point sweeps, then an exact scan along
    // the sweep direction that skips pairs which cannot beat it.
    auto farthest = [&](std::size_t from) {
        std::size_t arg = ids.front();
        double far = -1.0;
        for (std::size_t i : ids) {
            const double s = (points[i] - points[from]).squaredNorm();
            if (s > far) {
                far = s;
                arg = i;
            }
        }
        return std::pair{arg, far};
    };
    std::size_t a = ids.front();
    auto [b, best] = farthest(a);
    for (int sweep = 0; sweep < 4; ++sweep) {
        auto [c, far] = farthest(b);
        if (far <= best) break;
        best = far;
        a = b;
        b = c;
    }
    const Vector u = (points[b] - points[a]).normalized();
    Vector centroid = Vector::Zero(d);
    for (std::size_t i : ids) centroid += points[i];
    centroid /= static_cast<double>(ids.size());

    struct Proj {
        double t;
        double r;
        std::size_t id;
    };
    std::vector<Proj> proj;
    proj.reserve(ids.size());
    double r_max = 0.0;
    for (std::size_t i : ids) {
        const Vector rel = points[i] - centroid;
        const double t = u.dot(rel);
        const double r = std::sqrt(std::max(0.0, rel.squaredNorm() - t * t));
        r_max = std::max(r_max, r);
        proj.push_back({t, r, i});
    }
    std::sort(proj.begin(), proj.end(), [](const Proj& x, const Proj& y) { return x.t < y.t; });
    for (std::size_t i = 0; i < proj.size(); ++i) {
        for (std::size_t j = proj.size(); j-- > i + 1;) {
            const double dt = proj[j].t - proj[i].t;
            const double reach = proj[i].r + r_max;
            if (dt * dt + reach * reach <= best) break;
            const double pr = proj[i].r + proj[j].r;
            if (dt * dt + pr * pr <= best) continue;
            best = std::max(best, (points[proj[i].id] - points[proj[j].id]).squaredNorm());
        }
    }
    return std::sqrt(best);
}

double diameter(const PointSet& s) {
    return diameter(s.points);
}

LatticeImage evaluate_on_lattice(const VectorProblem& p, std::size_t grid_resolution) {
    LatticeImage img{Lattice(p.domain(), grid_resolution), Matrix(), Matrix()};
    img.values.resize(static_cast<Eigen::Index>(p.objective_dim()), static_cast<Eigen::Index>(img.lattice.size()));
    img.lattice.for_each([&](std::size_t i, const Vector& x) { img.values.col(static_cast<Eigen::Index>(i)) = p(x); });
    img.dual_values = p.cone().dual_matrix() * img.values;
    return img;
}

MetricEstimate function_distance(const VectorProblem& p, const VectorProblem& q, const MetricParams& params) {
    if (p.decision_dim() != q.decision_dim() || p.objective_dim() != q.objective_dim())
        fail(ErrorKind::input, "function_distance needs problems of equal dimensions");
    if (!(p.domain() == q.domain())) fail(ErrorKind::input, "function_distance needs problems on the same domain");
    if (params.truncation < 1) fail(ErrorKind::input, "metric truncation must be at least 1");

    const Box& box = p.domain();
    const auto d = static_cast<Eigen::Index>(box.dim());
    MetricEstimate est;
    est.anchor = params.anchor.value_or(box.center());
    if (!box.contains(est.anchor, 1e-12)) fail(ErrorKind::input, "metric anchor must lie in the domain");
    est.tail_bound = std::ldexp(1.0, -static_cast<int>(params.truncation));

    // Directions towards every corner reach the farthest points of each ball
    // within the box; skipped in high dimension.
    std::vector<Vector> corner_dirs;
    std::vector<double> corner_reach;
    if (d <= 10) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            Vector c(d);
            for (Eigen::Index k = 0; k < d; ++k) c[k] = (mask >> k) & 1U ? box.upper()[k] : box.lower()[k];
            const Vector diff = c - est.anchor;
            const double n = diff.norm();
            if (n > 0) {
                corner_dirs.push_back(diff / n);
                corner_reach.push_back(n);
            }
        }
    }

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    double running = 0.0;
    bool overflow = false;
    auto visit = [&](const Vector& x) {
        const double n = (p(x) - q(x)).norm();
        if (!std::isfinite(n) || n > params.overflow_cap) overflow = true;
        else running = std::max(running, n);
    };

    visit(est.anchor);
    for (std::size_t i = 1; i <= params.truncation && !overflow; ++i) {
        const double radius = static_cast<double>(i);
        for (Eigen::Index k = 0; k < d; ++k) {
            for (double sign : {-1.0, 1.0}) {
                Vector x = est.anchor;
                const double room = sign > 0 ? box.upper()[k] - x[k] : x[k] - box.lower()[k];
                x[k] += sign * std::min(radius, room);
                visit(x);
            }
        }
        for (std::size_t c = 0; c < corner_dirs.size(); ++c)
            visit(est.anchor + std::min(radius, corner_reach[c]) * corner_dirs[c]);
        for (std::size_t s = 0; s < params.samples_per_ball; ++s) {
            Vector dir(d);
            for (Eigen::Index k = 0; k < d; ++k) dir[k] = gauss(rng);
            const double n = dir.norm();
            if (!(n > 0)) continue;
            const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(d));
            visit(box.clamp(est.anchor + (r / n) * dir));
        }
        est.ball_norms.push_back(running);
    }

    if (overflow) {
        est.saturated = true;
        est.value = 1.0;
        return est;
    }
    double weight = 0.5;
    for (double n : est.ball_norms) {
        est.value += weight * n / (1.0 + n);
        weight *= 0.5;
    }
    return est;
}

}  // namespace vecwp
