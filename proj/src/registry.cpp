#include "vecwp/registry.hpp"
#include <array>
#include <limits>

#include <algorithm>
#include <cmath>
#include <random>

#include "vecwp/analysis.hpp"
#include "vecwp/errors.hpp"
#include "vecwp/perturb.hpp"

namespace vecwp {

std::string_view to_string(FactSource s) {
    switch (s) {
        case FactSource::reference: return "reference";
        case FactSource::derived: return "derived";
        case FactSource::elementary: return "elementary";
    }
    return "unknown";
}

bool ReplicateReport::all_passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const AssertionResult& a) { return a.passed; });
}

namespace {

std::shared_ptr<const OrderingCone> orthant(std::size_t m) {
    return std::make_shared<const OrderingCone>(OrderingCone::orthant(m));
}

VectorProblem one_dim(const std::string& label, double lo, double hi, std::shared_ptr<const OrderingCone> cone,
                      std::function<Vector(double)> f) {
    const std::size_t m = cone->ambient_dim();
    return VectorProblem(label, Box(vec({lo}), vec({hi})), std::move(cone), m, [f](const Vector& x) { return f(x[0]); });
}

VectorProblem hilbert_truncation(std::size_t d) {
    const std::string label = "hilbert-truncation-" + std::to_string(d);
    return VectorProblem(label, Box::cube(d, 1.0), orthant(1), 1, [](const Vector& x) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double w = x[i] / static_cast<double>(i + 1);
            s += w * w;
        }
        Vector y(1);
        y[0] = s;
        return y;
    });
}

std::size_t hilbert_grid(std::size_t d) {
    if (d <= 2) return 201;
    if (d <= 4) return 41;
    if (d <= 6) return 15;
    return 9;
}

std::optional<std::size_t> hilbert_dim(const std::string& label) {
    static const std::string prefix = "hilbert-truncation-";
    if (label.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = label.substr(prefix.size());
    if (rest.empty() || rest.size() > 2 || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    const auto d = static_cast<std::size_t>(std::stoul(rest));
    if (d < 1 || d > 10) return std::nullopt;
    return d;
}

// Lowest-index lattice minimizer of the barycentric scalarization; strict
// minimizers of an interior functional are efficient.
Vector barycentric_argmin(const VectorProblem& p, std::size_t grid) {
    const auto verts = base_polytope(p.cone()).vertices;
    Vector xi = Vector::Zero(verts.front().size());
    for (const auto& v : verts) xi += v;
    const Lattice lattice(p.domain(), grid);
    double best = std::numeric_limits<double>::infinity();
    Vector arg = lattice.point(0);
    lattice.for_each([&](std::size_t, const Vector& x) {
        const double v = xi.dot(p(x));
        if (v < best) {
            best = v;
            arg = x;
        }
    });
    return arg;
}

RegistryEntry build(const std::string& label) {
    RegistryEntry e;
    e.label = label;
    const double pi = 3.14159265358979323846;
    (void)pi;

    if (label == "quad-pair") {
        e.description = "f(x) = (x^2, x^2) on [-2, 2], C = R^2_+";
        e.make = [] { return one_dim("quad-pair", -2, 2, orthant(2), [](double x) { return vec({x * x, x * x}); }); };
        e.reference_point = vec({0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"DH level sets at 0 are {|x| <= sqrt(alpha)}", FactSource::derived},
                   {"oriented-distance scalarization at 0 equals sqrt(2) x^2", FactSource::derived}};
    } else if (label == "x-x2") {
        e.description = "f(x) = (x, x^2) on [-3, 3], C = R^2_+";
        e.make = [] { return one_dim("x-x2", -3, 3, orthant(2), [](double x) { return vec({x, x * x}); }); };
        e.reference_point = vec({-1.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"Eff = [-3, 0] on the box", FactSource::elementary},
                   {"<(0,1), f> = x^2 is bounded below", FactSource::elementary}};
    } else if (label == "zero-function") {
        e.description = "f = 0 on [-1, 1], C = R^2_+";
        e.make = [] { return one_dim("zero-function", -1, 1, orthant(2), [](double) { return vec({0.0, 0.0}); }); };
        e.reference_point = vec({0.0});
        e.expected_dh = WellPosedness::not_well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"every point is efficient", FactSource::elementary},
                   {"no point is DH-well-posed", FactSource::elementary},
                   {"f + (1/n)||x - xbar|| k0 is DH-well-posed at xbar", FactSource::derived}};
    } else if (label == "x-minus-x") {
        e.description = "f(x) = (x, -x) on [-1, 1], C = R^2_+";
        e.make = [] { return one_dim("x-minus-x", -1, 1, orthant(2), [](double x) { return vec({x, -x}); }); };
        e.reference_point = vec({0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"every point is efficient", FactSource::elementary},
                   {"DH level set at 0 along (1,1) is [-alpha, alpha]", FactSource::derived}};
    } else if (label == "x-minus-xex") {
        e.description = "f(x) = (x, -x e^x) on [-4, 4], C = R^2_+";
        e.default_grid = 801;
        e.make = [] {
            auto p = one_dim("x-minus-xex", -4, 4, orthant(2), [](double x) { return vec({x, -x * std::exp(x)}); });
            return p;
        };
        e.reference_point = vec({1.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = false;
        e.c_bounded = false;
        e.facts = {{"Eff = [0, +inf)", FactSource::reference},
                   {"inf <xi, f> = -inf for every xi in C* \\ {0}", FactSource::reference},
                   {"f is not *-quasiconvex", FactSource::reference},
                   {"no bounding functional exists", FactSource::reference}};
    } else if (label == "x2-x4") {
        e.description = "f(x) = (x^2, x^4) on [-2, 2], C = R^2_+";
        e.make = [] { return one_dim("x2-x4", -2, 2, orthant(2), [](double x) { return vec({x * x, x * x * x * x}); }); };
        e.reference_point = vec({0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"<(1,0), f> = x^2 is T-well-posed at 0", FactSource::derived}};
    } else if (label == "abs-pair") {
        e.description = "f(x) = (|x - 1|, |x + 1|) on [-3, 3], C = R^2_+";
        e.make = [] {
            return one_dim("abs-pair", -3, 3, orthant(2), [](double x) { return vec({std::abs(x - 1), std::abs(x + 1)}); });
        };
        e.reference_point = vec({0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"Eff = [-1, 1]", FactSource::elementary}};
    } else if (label == "shifted-quad-2d") {
        e.description = "f(x) = (||x - a||^2, ||x + a||^2), a = (1, 0.5), on [-2, 2]^2, C = R^2_+";
        e.default_grid = 101;
        e.make = [] {
            return VectorProblem("shifted-quad-2d", Box::cube(2, 2.0), orthant(2), 2, [](const Vector& x) {
                const double u = x[0] - 1.0, v = x[1] - 0.5, s = x[0] + 1.0, t = x[1] + 0.5;
                return vec({u * u + v * v, s * s + t * t});
            });
        };
        e.reference_point = vec({0.0, 0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"Eff is the segment [-a, a]", FactSource::elementary}};
    } else if (label == "skew-cone-quad") {
        e.description = "f(x) = (x^2, (x - 1)^2) on [-2, 2], C = cone{(1,0), (1,1)}";
        e.make = [] {
            auto cone = std::make_shared<const OrderingCone>(std::vector<Vector>{vec({1.0, 0.0}), vec({1.0, 1.0})});
            return one_dim("skew-cone-quad", -2, 2, cone, [](double x) { return vec({x * x, (x - 1) * (x - 1)}); });
        };
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"C* = cone{(0,1), (1,-1)}", FactSource::derived}};
    } else if (label == "cone3-quad") {
        e.description = "f(x) = (x1, x2, ||x||^2) on [-1, 1]^2, C = {|y1| + |y2| <= y3}";
        e.default_grid = 101;
        e.make = [] {
            auto cone = std::make_shared<const OrderingCone>(std::vector<Vector>{
                vec({1.0, 0.0, 1.0}), vec({0.0, 1.0, 1.0}), vec({-1.0, 0.0, 1.0}), vec({0.0, -1.0, 1.0})});
            return VectorProblem("cone3-quad", Box::cube(2, 1.0), cone, 3,
                                 [](const Vector& x) { return vec({x[0], x[1], x.squaredNorm()}); });
        };
        e.reference_point = vec({0.0, 0.0});
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"dual generators are (+-1, +-1, 1) normalized", FactSource::derived}};
    } else if (label == "exp-square") {
        e.description = "f(x) = (e^x, x^2) on [-2, 2], C = R^2_+";
        e.make = [] { return one_dim("exp-square", -2, 2, orthant(2), [](double x) { return vec({std::exp(x), x * x}); }); };
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"Eff = [-2, 0]", FactSource::elementary}};
    } else if (label == "double-well") {
        e.description = "f(x) = ((x^2 - 1)^2, (x^2 - 1)^2) on [-2, 2], C = R^2_+";
        e.make = [] {
            return one_dim("double-well", -2, 2, orthant(2), [](double x) {
                const double w = (x * x - 1) * (x * x - 1);
                return vec({w, w});
            });
        };
        e.reference_point = vec({1.0});
        e.expected_dh = WellPosedness::not_well_posed;
        e.c_convex = false;
        e.c_bounded = true;
        e.facts = {{"x = 1 and x = -1 share the image (0, 0)", FactSource::elementary}};
    } else if (auto d = hilbert_dim(label)) {
        const std::size_t dim = *d;
        e.description = "f(x) = sum_i x_i^2 / i^2 on [-1, 1]^" + std::to_string(dim) + ", C = R_+";
        e.default_grid = hilbert_grid(dim);
        e.make = [dim] { return hilbert_truncation(dim); };
        e.reference_point = Vector::Zero(static_cast<Eigen::Index>(dim));
        e.expected_dh = WellPosedness::well_posed;
        e.c_convex = e.c_bounded = true;
        e.facts = {{"T-well-posed for every finite dimension", FactSource::reference},
                   {"diam L(a) = 2 d sqrt(a) while the level set stays inside the box", FactSource::derived}};
    } else {
        fail(ErrorKind::unknown_label, "unknown problem label: " + label);
    }
    if (e.reference_point.size() == 0) e.reference_point = barycentric_argmin(e.make(), e.default_grid);
    return e;
}

void check(ReplicateReport& rep, std::string name, FactSource src, bool passed, std::string detail = {}) {
    rep.assertions.push_back({std::move(name), src, passed, std::move(detail)});
}

std::string fmt(double x) {
    return format_double(x);
}

void replicate_x_minus_xex(const RegistryEntry& e, ReplicateReport& rep, std::uint64_t seed) {
    const VectorProblem p = e.make();
    const auto image = evaluate_on_lattice(p, e.default_grid);
    ClassifyOptions copt;
    copt.test_strict = false;
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.5}) {
        const auto v = classify_point(p, image, vec({x}), copt);
        check(rep, "efficient at x = " + fmt(x), FactSource::reference, v.efficient == Tri::yes, std::string(to_string(v.efficient)));
    }
    for (double x : {-3.0, -2.0, -1.0, -0.5, -0.1}) {
        const auto v = classify_point(p, image, vec({x}), copt);
        bool ok = v.efficient == Tri::no && v.dominating_witness.has_value();
        std::string detail = std::string(to_string(v.efficient));
        if (ok) {
            // The witness must dominate by direct evaluation.
            const Vector diff = p(*v.dominating_witness) - p(vec({x}));
            ok = p.cone().contains(-diff) && diff.norm() > 1e-9;
            detail += " witness=" + format_vector(*v.dominating_witness);
        }
        check(rep, "not efficient at x = " + fmt(x), FactSource::reference, ok, detail);
    }

    BoundednessOptions bopt;
    auto verts = base_polytope(p.cone()).vertices;
    Vector bary = Vector::Zero(2);
    for (const auto& v : verts) bary += v / static_cast<double>(verts.size());
    verts.push_back(bary);
    for (const auto& xi : verts) {
        const auto v = is_c_bounded_below(p, xi, bopt);
        check(rep, "divergence for xi = " + format_vector(xi), FactSource::reference, v.verdict == Evidence::counterexample,
              std::string(to_string(v.verdict)));
    }

    QuasiconvexityOptions qopt;
    qopt.seed = seed;
    const auto q = is_star_quasiconvex(p, qopt);
    check(rep, "*-quasiconvexity counterexample", FactSource::reference,
          q.verdict == Evidence::counterexample && q.witness && recheck_star_quasiconvex_witness(p, *q.witness),
          std::string(to_string(q.verdict)));

    ConvexityOptions copt2;
    copt2.seed = seed;
    const auto c = is_c_convex(p, copt2);
    check(rep, "C-convexity counterexample", FactSource::reference,
          c.verdict == Evidence::counterexample && c.witness && recheck_c_convex_witness(p, *c.witness),
          std::string(to_string(c.verdict)));

    bool refused = false;
    std::string detail = "pipeline returned a certificate";
    try {
        MetricParams mp;
        mp.seed = seed;
        density_pipeline(p, 0.1, mp, 201);
    } catch (const Error& err) {
        refused = err.kind() == ErrorKind::no_bounding_functional;
        detail = std::string(to_string(err.kind()));
    }
    check(rep, "pipeline refuses with NoBoundingFunctional", FactSource::reference, refused, detail);
}

void replicate_zero_function(const RegistryEntry& e, ReplicateReport& rep) {
    const VectorProblem p = e.make();
    const std::size_t grid = 21;
    const auto image = evaluate_on_lattice(p, grid);
    ClassifyOptions copt;
    copt.test_strict = false;
    std::size_t non_eff = 0;
    image.lattice.for_each([&](std::size_t, const Vector& x) {
        if (classify_point(p, image, x, copt).efficient != Tri::yes) ++non_eff;
    });
    check(rep, "every lattice point efficient", FactSource::elementary, non_eff == 0, std::to_string(non_eff) + " exceptions");

    const auto dirs = default_dh_directions(p.cone());
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const auto r = dh_diagnostic(p, vec({x}), dirs, default_schedule(), e.default_grid);
        check(rep, "not DH-well-posed at x = " + fmt(x), FactSource::elementary, r.verdict == WellPosedness::not_well_posed,
              std::string(to_string(r.verdict)));
    }
    for (double x : {0.0, 0.5}) {
        TikhonovOptions topt;
        topt.grid_resolution = e.default_grid;
        const auto t = tikhonov_regularize(p, vec({x}), 1, topt);
        check(rep, "Tikhonov perturbation is DH-well-posed at x = " + fmt(x), FactSource::derived, t.certificate.valid,
              std::string(to_string(t.certificate.dh_report.verdict)));
    }
}

void replicate_hilbert(const RegistryEntry& e, ReplicateReport& rep) {
    const VectorProblem p = e.make();
    const auto d = static_cast<double>(p.decision_dim());
    const ScalarProblem sp = scalarize_linear(p, vec({1.0}));
    const auto twp = tykhonov_diagnostic(sp, default_schedule(), e.default_grid);
    check(rep, "T-well-posed", FactSource::reference, twp.verdict == WellPosedness::well_posed, std::string(to_string(twp.verdict)));

    const std::vector<double> levels{0.01, 0.0025};
    const auto curve = tykhonov_diagnostic(sp, levels, e.default_grid);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double expected = 2.0 * d * std::sqrt(levels[k]);
        const double got = curve.diam_curve[k].diameter;
        check(rep, "diam L(" + fmt(levels[k]) + ") = 2 d sqrt(a)", FactSource::derived,
              std::abs(got - expected) <= 2.0 * curve.lattice_spacing, "measured=" + fmt(got) + " expected=" + fmt(expected));
    }
}

void replicate_generic(const RegistryEntry& e, ReplicateReport& rep, std::uint64_t seed) {
    const VectorProblem p = e.make();
    ConvexityOptions copt;
    copt.seed = seed;
    const auto c = is_c_convex(p, copt);
    const Evidence want = e.c_convex ? Evidence::holds : Evidence::counterexample;
    check(rep, e.c_convex ? "C-convex" : "not C-convex", FactSource::elementary, c.verdict == want, std::string(to_string(c.verdict)));

    ClassifyOptions cl;
    cl.test_strict = false;
    const auto v = classify_point(p, e.reference_point, e.default_grid, cl);
    check(rep, "reference point " + format_vector(e.reference_point) + " efficient", FactSource::elementary,
          v.efficient == Tri::yes, std::string(to_string(v.efficient)));

    const auto dh = dh_diagnostic(p, e.reference_point, default_dh_directions(p.cone()), default_schedule(), e.default_grid);
    check(rep, "DH verdict at the reference point", FactSource::derived, dh.verdict == e.expected_dh,
          std::string(to_string(dh.verdict)));
    const auto sc = dh_via_scalarization(p, e.reference_point, default_schedule(), e.default_grid);
    check(rep, "oriented-distance scalarization agrees", FactSource::derived, sc.verdict == dh.verdict,
          std::string(to_string(sc.verdict)));
}

}  // namespace

const std::vector<std::string>& registry_labels() {
    static const std::vector<std::string> labels{
        "quad-pair", "x-x2",           "zero-function",  "x-minus-x",  "x-minus-xex",         "x2-x4",
        "abs-pair",  "shifted-quad-2d", "skew-cone-quad", "cone3-quad", "exp-square",          "double-well",
        "hilbert-truncation-2", "hilbert-truncation-4", "hilbert-truncation-8"};
    return labels;
}

RegistryEntry registry_entry(const std::string& label) {
    return build(label);
}

VectorProblem make_problem(const std::string& label) {
    return build(label).make();
}

VectorProblem make_convex_quadratic_pair(std::size_t d, std::uint64_t seed) {
    if (d == 0) fail(ErrorKind::input, "dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    std::array<Matrix, 2> q;
    std::array<Vector, 2> b;
    for (int k = 0; k < 2; ++k) {
        Matrix l(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) l(i, j) = gauss(rng) / std::sqrt(static_cast<double>(d));
        q[k] = l * l.transpose() + 0.5 * Matrix::Identity(n, n);
        b[k] = Vector(n);
        for (Eigen::Index i = 0; i < n; ++i) b[k][i] = unif(rng);
    }
    return VectorProblem("convex-quadratic-pair-" + std::to_string(seed), Box::cube(d, 2.0), orthant(2), 2,
                         [q, b](const Vector& x) { return vec({x.dot(q[0] * x) + b[0].dot(x), x.dot(q[1] * x) + b[1].dot(x)}); });
}

ReplicateReport replicate(const std::string& label, std::uint64_t seed) {
    const RegistryEntry e = registry_entry(label);
    ReplicateReport rep;
    rep.label = label;
    if (label == "x-minus-xex") replicate_x_minus_xex(e, rep, seed);
    else if (label == "zero-function") replicate_zero_function(e, rep);
    else if (hilbert_dim(label)) replicate_hilbert(e, rep);
    else replicate_generic(e, rep, seed);
    return rep;
}

}  // namespace vecwp
