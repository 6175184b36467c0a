#include "vecwp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "vecwp/errors.hpp"
#include "vecwp/lp.hpp"

namespace vecwp {

std::string_view to_string(StructuralProperty p) {
    switch (p) {
        case StructuralProperty::c_convex: return "C_convex";
        case StructuralProperty::star_quasiconvex: return "star_quasiconvex";
        case StructuralProperty::c_bounded_below: return "C_bounded_below";
    }
    return "unknown";
}

std::string_view to_string(Evidence e) {
    switch (e) {
        case Evidence::holds: return "evidence_holds";
        case Evidence::counterexample: return "counterexample_found";
        case Evidence::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

Vector uniform_point(const Box& box, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector x(box.lower().size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = box.lower()[i] + unif(rng) * (box.upper()[i] - box.lower()[i]);
    return x;
}

double pick_t(std::size_t trial, std::mt19937_64& rng) {
    static constexpr double fixed[] = {0.25, 0.5, 0.75};
    if (trial % 4 < 3) return fixed[trial % 4];
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double scale_of(const Vector& a, const Vector& b) {
    return 1.0 + a.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
}

// Amount by which t f(x) + (1-t) f(z) - f(w) leaves C, relative to the scale;
// positive means a violation.
double convexity_violation(const VectorProblem& p, const Vector& x, const Vector& z, double t, double tol) {
    const Vector fx = p(x), fz = p(z);
    const Vector v = t * fx + (1.0 - t) * fz - p(t * x + (1.0 - t) * z);
    return -p.cone().margin(v) - tol * scale_of(fx, fz);
}

double quasiconvexity_violation(const VectorProblem& p, const Vector& xi, const Vector& x, const Vector& z, double t, double tol) {
    const double gx = xi.dot(p(x)), gz = xi.dot(p(z));
    const double gw = xi.dot(p(t * x + (1.0 - t) * z));
    return gw - std::max(gx, gz) - tol * (1.0 + std::abs(gx) + std::abs(gz));
}

std::size_t odd_resolution(std::size_t budget, std::size_t d) {
    std::size_t r = 3;
    while (true) {
        const std::size_t next = r + 2;
        double total = 1.0;
        for (std::size_t i = 0; i < d; ++i) total *= static_cast<double>(next);
        if (total > static_cast<double>(budget)) return r;
        r = next;
    }
}

}  // namespace

StructuralVerdict is_c_convex(const VectorProblem& p, const ConvexityOptions& opt) {
    if (opt.trials < 1) fail(ErrorKind::input, "trials must be at least 1");
    StructuralVerdict out;
    out.property = StructuralProperty::c_convex;

    std::mt19937_64 rng(opt.seed);
    std::optional<TripleWitness> worst;
    for (std::size_t i = 0; i < opt.trials; ++i) {
        const double t = pick_t(i, rng);
        const Vector x = uniform_point(p.domain(), rng);
        const Vector z = uniform_point(p.domain(), rng);
        const double viol = convexity_violation(p, x, z, t, opt.tol);
        if (viol > 0 && (!worst || viol > worst->violation)) worst = TripleWitness{x, z, t, std::nullopt, viol};
    }
    out.samples_used = opt.trials;

    // Second differences of <g, f> for each dual generator, at shrinking scales.
    std::mt19937_64 rng2(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::optional<TripleWitness> worst2;
    const auto& duals = p.cone().dual_generators();
    const std::size_t per_dual = std::max<std::size_t>(1, opt.trials / duals.size());
    for (const auto& g : duals) {
        for (std::size_t i = 0; i < per_dual; ++i) {
            const Vector a = uniform_point(p.domain(), rng2);
            Vector b = uniform_point(p.domain(), rng2);
            b = a + std::ldexp(1.0, -static_cast<int>(i % 9)) * (b - a);
            const Vector fa = p(a), fb = p(b);
            const double second = g.dot(fa) + g.dot(fb) - 2.0 * g.dot(p(0.5 * (a + b)));
            const double viol = -0.5 * second - opt.tol * scale_of(fa, fb);
            if (viol > 0 && (!worst2 || viol > worst2->violation)) worst2 = TripleWitness{a, b, 0.5, std::nullopt, viol};
        }
        out.samples_used += per_dual;
    }

    out.routes_agree = worst.has_value() == worst2.has_value();
    if (worst) {
        out.verdict = Evidence::counterexample;
        out.witness = worst;
    } else if (worst2) {
        out.verdict = Evidence::counterexample;
        worst2->violation = convexity_violation(p, worst2->x, worst2->z, 0.5, opt.tol);
        out.witness = worst2;
    } else {
        out.verdict = Evidence::holds;
    }
    return out;
}

bool recheck_c_convex_witness(const VectorProblem& p, const TripleWitness& w, double tol) {
    return convexity_violation(p, w.x, w.z, w.t, tol) > 0;
}

StructuralVerdict is_star_quasiconvex(const VectorProblem& p, const QuasiconvexityOptions& opt) {
    if (opt.trials < 1 || opt.dual_samples < 1) fail(ErrorKind::input, "sample counts must be at least 1");
    StructuralVerdict out;
    out.property = StructuralProperty::star_quasiconvex;

    std::vector<Vector> xis = base_polytope(p.cone()).vertices;
    const auto sphere = sample_dual_sphere(p.cone(), p.cone().dual_generators().size() + opt.dual_samples, opt.seed);
    for (std::size_t i = p.cone().dual_generators().size(); i < sphere.size(); ++i) xis.push_back(sphere[i]);

    std::mt19937_64 rng(opt.seed);
    std::optional<TripleWitness> worst;
    for (const auto& xi : xis) {
        for (std::size_t i = 0; i < opt.trials; ++i) {
            const double t = pick_t(i, rng);
            const Vector x = uniform_point(p.domain(), rng);
            const Vector z = uniform_point(p.domain(), rng);
            const double viol = quasiconvexity_violation(p, xi, x, z, t, opt.tol);
            if (viol > 0 && (!worst || viol > worst->violation)) worst = TripleWitness{x, z, t, xi, viol};
        }
        out.samples_used += opt.trials;
    }
    out.verdict = worst ? Evidence::counterexample : Evidence::holds;
    out.witness = worst;
    return out;
}

bool recheck_star_quasiconvex_witness(const VectorProblem& p, const TripleWitness& w, double tol) {
    if (!w.xi) return false;
    return quasiconvexity_violation(p, *w.xi, w.x, w.z, w.t, tol) > 0;
}

StructuralVerdict is_c_bounded_below(const VectorProblem& p, const Vector& xi, const BoundednessOptions& opt) {
    if (static_cast<std::size_t>(xi.size()) != p.objective_dim()) fail(ErrorKind::input, "functional dimension mismatch");
    if (!(xi.norm() > 0.0)) fail(ErrorKind::input, "functional must be nonzero");
    for (const auto& c : p.cone().generators())
        if (xi.dot(c.normalized()) < -p.cone().tol()) fail(ErrorKind::input, "functional is not in the dual cone");
    if (opt.box_schedule.empty()) fail(ErrorKind::input, "box schedule must not be empty");

    StructuralVerdict out;
    out.property = StructuralProperty::c_bounded_below;
    DivergenceTrace trace;
    trace.xi = xi;

    const std::size_t res = odd_resolution(opt.lattice_budget, p.decision_dim());
    double running = std::numeric_limits<double>::infinity();
    Vector running_arg;
    bool diverged = false;
    for (double factor : opt.box_schedule) {
        if (!(factor > 0.0)) fail(ErrorKind::input, "box expansion factors must be positive");
        const Lattice lattice(p.domain().scaled(factor), res);
        lattice.for_each([&](std::size_t, const Vector& x) {
            const double v = xi.dot(p(x));
            if (v == -std::numeric_limits<double>::infinity()) diverged = true;
            if (v < running) {
                running = v;
                running_arg = x;
            }
        });
        out.samples_used += lattice.size();
        trace.factors.push_back(factor);
        trace.minima.push_back(running);
        trace.argmins.push_back(running_arg);
        if (diverged) break;
    }

    const auto& mins = trace.minima;
    const std::size_t n = mins.size();
    auto decrease = [&](std::size_t k) { return mins[k - 1] - mins[k]; };
    if (diverged) {
        out.verdict = Evidence::counterexample;
    } else if (n >= 2 && decrease(n - 1) < opt.stabilization_tol) {
        out.verdict = Evidence::holds;
    } else if (n >= 3 && decrease(n - 1) > opt.divergence_slope && decrease(n - 2) > opt.divergence_slope) {
        out.verdict = Evidence::counterexample;
    } else if (n == 2 && decrease(1) > opt.divergence_slope) {
        out.verdict = Evidence::counterexample;
    } else {
        out.verdict = Evidence::inconclusive;
    }
    out.trace = std::move(trace);
    return out;
}

std::optional<Vector> find_bounding_functional(const VectorProblem& p, const BoundingSearchOptions& opt) {
    const auto vertices = base_polytope(p.cone()).vertices;
    auto bounded = [&](const Vector& xi) { return is_c_bounded_below(p, xi, opt.boundedness).verdict == Evidence::holds; };

    for (const auto& v : vertices)
        if (bounded(v)) return v;

    Vector bary = Vector::Zero(vertices.front().size());
    for (const auto& v : vertices) bary += v;
    bary /= static_cast<double>(vertices.size());
    if (vertices.size() > 1 && bounded(bary)) return bary;

    std::mt19937_64 rng(opt.seed);
    std::exponential_distribution<double> expo(1.0);
    for (std::size_t c = 0; c < opt.candidates && vertices.size() > 1; ++c) {
        Vector xi = Vector::Zero(bary.size());
        double total = 0.0;
        for (const auto& v : vertices) {
            const double w = expo(rng);
            xi += w * v;
            total += w;
        }
        xi /= total;
        if (bounded(xi)) return xi;
    }
    return std::nullopt;
}

PlayerSet PlayerSet::make_box(Vector lower, Vector upper) {
    if (lower.size() == 0 || lower.size() != upper.size()) fail(ErrorKind::input, "player box bounds must have equal positive dimension");
    for (Eigen::Index i = 0; i < lower.size(); ++i)
        if (!(lower[i] <= upper[i])) fail(ErrorKind::input, "player box needs lower <= upper");
    PlayerSet s;
    s.kind = Kind::box;
    s.lower = std::move(lower);
    s.upper = std::move(upper);
    return s;
}

PlayerSet PlayerSet::make_simplex(std::size_t dim) {
    if (dim == 0) fail(ErrorKind::input, "simplex dimension must be positive");
    PlayerSet s;
    s.kind = Kind::simplex;
    s.lower = Vector::Zero(static_cast<Eigen::Index>(dim));
    s.upper = Vector::Ones(static_cast<Eigen::Index>(dim));
    return s;
}

std::size_t PlayerSet::dim() const {
    return static_cast<std::size_t>(lower.size());
}

namespace {

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

std::size_t default_denominator(std::size_t dim, double budget) {
    if (dim == 1) return 1;
    std::size_t n = 1;
    while (binomial(n + 1 + dim - 1, dim - 1) <= budget) ++n;
    return n;
}

std::size_t default_box_resolution(std::size_t dim, double budget) {
    std::size_t r = 2;
    while (std::pow(static_cast<double>(r + 1), static_cast<double>(dim)) <= budget) ++r;
    return r;
}

// Calls fn(z) for every point of the simplex with coordinates in (1/n) Z.
void for_each_simplex_point(std::size_t dim, std::size_t n, const std::function<void(const Vector&)>& fn) {
    std::vector<std::size_t> k(dim, 0);
    Vector z(static_cast<Eigen::Index>(dim));
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == dim) {
            k[i] = left;
            for (std::size_t j = 0; j < dim; ++j) z[static_cast<Eigen::Index>(j)] = static_cast<double>(k[j]) / static_cast<double>(n);
            fn(z);
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            k[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, n);
}

// sup_z min_{w in W} z^T A w, solved exactly.
double lp_sup_inf(const Matrix& a, const PlayerSet& w) {
    const Eigen::Index p = a.rows(), q = a.cols();
    std::vector<LpRow> rows;
    if (w.kind == PlayerSet::Kind::simplex) {
        // Variables z (p), v+ , v-; maximize v with v <= (A^T z)_j.
        const Eigen::Index n = p + 2;
        for (Eigen::Index j = 0; j < q; ++j) {
            LpRow r{Vector::Zero(n), Sense::le, 0.0};
            r.a.head(p) = -a.col(j);
            r.a[p] = 1.0;
            r.a[p + 1] = -1.0;
            rows.push_back(r);
        }
        LpRow sum{Vector::Zero(n), Sense::eq, 1.0};
        sum.a.head(p).setOnes();
        rows.push_back(sum);
        Vector c = Vector::Zero(n);
        c[p] = -1.0;
        c[p + 1] = 1.0;
        const auto res = minimize(c, rows);
        if (res.status != LpResult::Status::optimal) fail(ErrorKind::numerical_failure, "game LP did not solve");
        return -res.value;
    }
    // Variables z (p), t+ (q), t- (q); maximize sum t with t_j <= l_j s_j and t_j <= u_j s_j.
    const Eigen::Index n = p + 2 * q;
    for (Eigen::Index j = 0; j < q; ++j) {
        for (double bound : {w.lower[j], w.upper[j]}) {
            LpRow r{Vector::Zero(n), Sense::le, 0.0};
            r.a.head(p) = -bound * a.col(j);
            r.a[p + j] = 1.0;
            r.a[p + q + j] = -1.0;
            rows.push_back(r);
        }
    }
    LpRow sum{Vector::Zero(n), Sense::eq, 1.0};
    sum.a.head(p).setOnes();
    rows.push_back(sum);
    Vector c = Vector::Zero(n);
    c.segment(p, q).setConstant(-1.0);
    c.segment(p + q, q).setConstant(1.0);
    const auto res = minimize(c, rows);
    if (res.status != LpResult::Status::optimal) fail(ErrorKind::numerical_failure, "game LP did not solve");
    return -res.value;
}

// inf_{w in W} max_i (A w)_i, solved exactly.
double lp_inf_sup(const Matrix& a, const PlayerSet& w) {
    const Eigen::Index p = a.rows(), q = a.cols();
    // Variables w' = w - lower (q), v+, v-.
    const Eigen::Index n = q + 2;
    std::vector<LpRow> rows;
    for (Eigen::Index i = 0; i < p; ++i) {
        LpRow r{Vector::Zero(n), Sense::le, -a.row(i).dot(w.lower)};
        r.a.head(q) = a.row(i).transpose();
        r.a[q] = -1.0;
        r.a[q + 1] = 1.0;
        rows.push_back(r);
    }
    if (w.kind == PlayerSet::Kind::simplex) {
        LpRow sum{Vector::Zero(n), Sense::eq, 1.0};
        sum.a.head(q).setOnes();
        rows.push_back(sum);
    } else {
        for (Eigen::Index j = 0; j < q; ++j) {
            LpRow r{Vector::Zero(n), Sense::le, w.upper[j] - w.lower[j]};
            r.a[j] = 1.0;
            rows.push_back(r);
        }
    }
    Vector c = Vector::Zero(n);
    c[q] = 1.0;
    c[q + 1] = -1.0;
    const auto res = minimize(c, rows);
    if (res.status != LpResult::Status::optimal) fail(ErrorKind::numerical_failure, "game LP did not solve");
    return res.value;
}

}  // namespace

SionResult sion_gap(const Matrix& a, const PlayerSet& w, const SionOptions& opt) {
    const auto p = static_cast<std::size_t>(a.rows());
    const auto q = static_cast<std::size_t>(a.cols());
    if (p == 0 || q == 0) fail(ErrorKind::input, "payoff matrix must be nonempty");
    if (w.dim() != q) fail(ErrorKind::input, "payoff matrix columns must match the dimension of W");
    if (!a.allFinite()) fail(ErrorKind::input, "payoff matrix must be finite");

    constexpr double kBudget = 2e5;
    const std::size_t nz = opt.simplex_denominator ? opt.simplex_denominator : default_denominator(p, kBudget);
    const std::size_t nw_simplex = opt.simplex_denominator ? opt.simplex_denominator : default_denominator(q, kBudget);
    const std::size_t rw = opt.box_resolution ? opt.box_resolution : default_box_resolution(q, kBudget);

    SionResult out;
    const bool w_simplex = w.kind == PlayerSet::Kind::simplex;

    // Inner infimum over W in closed form.
    auto phi = [&](const Vector& z) {
        const Vector s = a.transpose() * z;
        if (w_simplex) return s.minCoeff();
        double v = 0.0;
        for (Eigen::Index j = 0; j < s.size(); ++j) v += std::min(s[j] * w.lower[j], s[j] * w.upper[j]);
        return v;
    };
    out.sup_inf = -std::numeric_limits<double>::infinity();
    for_each_simplex_point(p, nz, [&](const Vector& z) {
        const double v = phi(z);
        if (v > out.sup_inf) {
            out.sup_inf = v;
            out.z_star = z;
        }
    });

    out.inf_sup = std::numeric_limits<double>::infinity();
    auto visit_w = [&](const Vector& wv) {
        const double v = (a * wv).maxCoeff();
        if (v < out.inf_sup) {
            out.inf_sup = v;
            out.w_star = wv;
        }
    };
    if (w_simplex) {
        for_each_simplex_point(q, nw_simplex, visit_w);
    } else {
        Vector lo = w.lower, hi = w.upper;
        // Degenerate axes get a token width so the lattice is well defined.
        for (Eigen::Index j = 0; j < lo.size(); ++j)
            if (!(hi[j] > lo[j])) hi[j] = lo[j] + 1.0;
        const Lattice lattice(Box(lo, hi), rw);
        lattice.for_each([&](std::size_t, const Vector& x) { visit_w(x.cwiseMin(w.upper)); });
    }

    // Lipschitz bounds of the outer objectives times the worst rounding error.
    const Matrix abs_a = a.cwiseAbs();
    double lz = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            s += w_simplex ? 0.0 : abs_a(i, j) * std::max(std::abs(w.lower[j]), std::abs(w.upper[j]));
        lz = std::max(lz, w_simplex ? abs_a.row(i).maxCoeff() : s);
    }
    const double err_z = p == 1 ? 0.0 : lz * static_cast<double>(p) / static_cast<double>(nz);
    double err_w = 0.0;
    if (w_simplex) {
        err_w = q == 1 ? 0.0 : abs_a.maxCoeff() * static_cast<double>(q) / static_cast<double>(nw_simplex);
    } else {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                s += abs_a(i, j) * 0.5 * (w.upper[j] - w.lower[j]) / static_cast<double>(rw - 1);
            err_w = std::max(err_w, s);
        }
    }
    out.lattice_error = std::max(err_z, err_w);

    out.lp_value = lp_sup_inf(a, w);
    const double dual = lp_inf_sup(a, w);
    if (std::abs(out.lp_value - dual) > 1e-7 * (1.0 + std::abs(dual)))
        fail(ErrorKind::numerical_failure, "game LP primal and dual values disagree");
    return out;
}

}  // namespace vecwp
