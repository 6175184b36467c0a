#include "vecwp/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vecwp/errors.hpp"

namespace vecwp {

double tikhonov_distance_closed_form(const Box& box, const Vector& xbar, double k0_norm, std::size_t n, std::size_t truncation) {
    const double reach = box.max_distance_from(xbar);
    double total = 0.0, weight = 0.5;
    for (std::size_t i = 1; i <= truncation; ++i) {
        const double a = std::min(static_cast<double>(i), reach) * k0_norm / static_cast<double>(n);
        total += weight * a / (1.0 + a);
        weight *= 0.5;
    }
    return total;
}

TikhonovResult tikhonov_regularize(const VectorProblem& p, const Vector& xbar, std::size_t n, const TikhonovOptions& opt) {
    if (n < 1) fail(ErrorKind::input, "n must be a positive integer");
    ClassifyOptions pre = opt.classify;
    pre.test_strict = false;
    const auto before = classify_point(p, xbar, opt.grid_resolution, pre);
    if (before.efficient != Tri::yes)
        fail(ErrorKind::precondition, "point " + format_vector(xbar) + " is not efficient on the lattice");

    const Vector& k0 = p.cone().k0();
    VectorProblem fn = perturb(p, PerturbationTerm{xbar, 1.0 / static_cast<double>(n), 1.0, k0});
    fn.set_label(p.label() + ":tikhonov-" + std::to_string(n));

    TikhonovCertificate cert;
    cert.n = n;
    cert.point = xbar;
    cert.continuous = p.continuous();

    ClassifyOptions after = opt.classify;
    after.test_strict = p.continuous();
    const auto verdict = classify_point(fn, xbar, opt.grid_resolution, after);
    cert.efficient = verdict.efficient;
    cert.strictly_efficient = verdict.strictly_efficient;

    const auto dirs = opt.directions.empty() ? default_dh_directions(p.cone()) : opt.directions;
    cert.dh_report = dh_diagnostic(fn, xbar, dirs, opt.alpha_schedule, opt.grid_resolution, opt.wp);

    MetricParams mp = opt.metric;
    mp.anchor = xbar;
    cert.distance = function_distance(p, fn, mp);
    cert.closed_form_distance = tikhonov_distance_closed_form(p.domain(), xbar, k0.norm(), n, mp.truncation);

    cert.valid = cert.efficient == Tri::yes && cert.dh_report.verdict == WellPosedness::well_posed &&
                 (!cert.continuous || cert.strictly_efficient != Tri::no);
    return {std::move(fn), std::move(cert)};
}

EkelandResult ekeland_point(const ScalarProblem& sp, const Vector& start, double eps, double r, std::size_t grid_resolution) {
    const Lattice lattice(sp.domain(), grid_resolution);
    std::vector<double> values(lattice.size());
    lattice.for_each([&](std::size_t i, const Vector& x) { values[i] = sp(x); });
    return ekeland_point(lattice, values, sp, start, eps, r);
}

EkelandResult ekeland_point(const Lattice& lattice, const std::vector<double>& values, const ScalarProblem& sp,
                            const Vector& start, double eps, double r) {
    if (!(eps > 0.0) || !(r > 0.0)) fail(ErrorKind::input, "eps and r must be positive");
    if (values.size() != lattice.size()) fail(ErrorKind::input, "value count does not match the lattice");
    if (static_cast<std::size_t>(start.size()) != lattice.dim() || !lattice.box().contains(start, 1e-12))
        fail(ErrorKind::input, "start point lies outside the domain");

    const auto d = static_cast<Eigen::Index>(lattice.dim());
    const std::size_t n = lattice.size();
    Matrix pts(d, static_cast<Eigen::Index>(n));
    lattice.for_each([&](std::size_t i, const Vector& x) { pts.col(static_cast<Eigen::Index>(i)) = x; });

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    EkelandResult res;
    res.strength = eps;
    res.radius = r;
    res.start = start;
    res.start_value = sp(start);
    res.lattice_size = n;
    if (!std::isfinite(res.start_value)) fail(ErrorKind::hypothesis_not_met, "start value is not finite");

    res.infimum = res.start_value;
    for (double v : values) res.infimum = std::min(res.infimum, v);
    if (!(res.start_value < res.infimum + r * eps))
        fail(ErrorKind::hypothesis_not_met, "sp(start) = " + format_double(res.start_value) + " is not below inf + r eps = " +
                                                format_double(res.infimum + r * eps));

    std::size_t cur = lattice.is_node(start) ? lattice.nearest_index(start) : kNone;
    Vector x = start;
    double fx = res.start_value;
    if (cur != kNone) fx = values[cur];

    while (true) {
        std::size_t best = kNone;
        double best_val = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (i == cur) continue;
            const double g = values[i] + eps * (pts.col(static_cast<Eigen::Index>(i)) - x).norm();
            if (g < best_val) {
                best_val = g;
                best = i;
            }
        }
        if (best == kNone || !(best_val <= fx)) break;
        cur = best;
        x = pts.col(static_cast<Eigen::Index>(cur));
        fx = values[cur];
        if (++res.iterations > n) fail(ErrorKind::numerical_failure, "Ekeland iteration did not terminate");
    }

    res.center = x;
    res.center_value = fx;
    res.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == cur) continue;
        const double gap = values[i] + eps * (pts.col(static_cast<Eigen::Index>(i)) - x).norm() - fx;
        res.margin = std::min(res.margin, gap);
        if (!(gap > 0.0)) ++res.violations;
    }
    res.distance_from_start = (x - start).norm();
    res.item1 = res.distance_from_start < r;
    res.item2 = fx + eps * res.distance_from_start <= res.start_value + 1e-9 * (1.0 + std::abs(res.start_value));
    res.item3 = res.violations == 0;
    return res;
}

namespace {

void add_clause(PipelineCertificate& cert, std::string name, bool holds, std::string detail) {
    cert.clauses.push_back({std::move(name), holds, std::move(detail)});
}

}  // namespace

PipelineResult density_pipeline(const VectorProblem& p, double sigma, const MetricParams& mp, std::size_t grid_resolution,
                                const PipelineOptions& opt) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorKind::input, "sigma must be positive");

    // (1) bounding functional.
    const auto xi = find_bounding_functional(p, opt.bounding);
    if (!xi) fail(ErrorKind::no_bounding_functional, "no functional in the dual cone bounds <xi, f> from below");

    PipelineCertificate cert;
    cert.sigma = sigma;
    cert.bounding_functional = *xi;
    cert.grid_resolution = grid_resolution;

    // (2) k0 with <xi, k0> = 1.
    cert.k0 = p.cone().k0() / xi->dot(p.cone().k0());

    // (3) smallest power of two j with d(f, g) < sigma / 2.
    MetricParams metric = mp;
    cert.theta = metric.anchor.value_or(p.domain().center());
    metric.anchor = cert.theta;
    std::optional<VectorProblem> g;
    for (std::uint64_t j = 1;; j *= 2) {
        if (j > opt.j_cap) fail(ErrorKind::certificate_failure, "clause j_search failed: no j up to the cap gives d(f, g) < sigma/2");
        VectorProblem cand = perturb(p, PerturbationTerm{cert.theta, 1.0 / static_cast<double>(j), 1.0, cert.k0});
        const auto est = function_distance(p, cand, metric);
        if (est.value < sigma / 2) {
            cert.j = j;
            cert.d_f_g = est.value;
            cert.metric_tail = est.tail_bound;
            g = std::move(cand);
            break;
        }
    }

    // (4) radius of the sublevel set {g_xi <= inf + 1} around theta.
    const Lattice lattice(p.domain(), grid_resolution);
    cert.lattice_spacing = lattice.spacing();
    const ScalarProblem g_xi = scalarize_linear(*g, *xi);
    std::vector<double> values(lattice.size());
    double inf = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    lattice.for_each([&](std::size_t i, const Vector& x) {
        values[i] = g_xi(x);
        if (values[i] < inf) {
            inf = values[i];
            arg = i;
        }
    });
    if (!std::isfinite(inf)) fail(ErrorKind::numerical_failure, "scalarized problem has no finite lattice minimum");
    cert.M = lattice.spacing();
    lattice.for_each([&](std::size_t i, const Vector& x) {
        if (values[i] <= inf + 1.0) cert.M = std::max(cert.M, (x - cert.theta).norm());
    });

    // (5) series constant and Ekeland strength.
    const double k0n = cert.k0.norm();
    const std::size_t K = metric.truncation;
    for (std::size_t k = 0; k <= K; ++k) cert.s += std::ldexp((static_cast<double>(k) + cert.M) * k0n, -static_cast<int>(k));
    cert.s_tail = std::ldexp((static_cast<double>(K) + 2.0 + cert.M) * k0n, -static_cast<int>(K));
    cert.epsilon = sigma / (2.0 * cert.s);

    // (6) Ekeland point from the lattice argmin with r = 2M.
    cert.ekeland = ekeland_point(lattice, values, g_xi, lattice.point(arg), cert.epsilon, 2.0 * cert.M);
    cert.xhat = cert.ekeland.center;

    // (7) h = g + eps ||x - xhat|| k0.
    VectorProblem h = perturb(*g, PerturbationTerm{cert.xhat, cert.epsilon, 1.0, cert.k0});
    h.set_label(p.label() + ":regularized");

    // (8) verification.
    cert.d_g_h = function_distance(*g, h, metric).value;
    cert.d_f_h = function_distance(p, h, metric).value;
    cert.xhat_efficient = classify_point(h, cert.xhat, grid_resolution, opt.classify).efficient;
    cert.dh_report = dh_diagnostic(h, cert.xhat, default_dh_directions(p.cone()), opt.alpha_schedule, grid_resolution, opt.wp);

    const double half = sigma / 2;
    add_clause(cert, "ekeland_certificate", cert.ekeland.item1 && cert.ekeland.item2 && cert.ekeland.item3,
               "violations=" + std::to_string(cert.ekeland.violations));
    add_clause(cert, "d_f_g_below_half_sigma", cert.d_f_g < half, format_double(cert.d_f_g));
    add_clause(cert, "d_g_h_within_budget", cert.d_g_h <= half + cert.metric_tail, format_double(cert.d_g_h));
    add_clause(cert, "triangle", cert.d_f_h <= cert.d_f_g + cert.d_g_h + 2.0 * cert.metric_tail, format_double(cert.d_f_h));
    add_clause(cert, "d_f_h_below_sigma", cert.d_f_h < sigma, format_double(cert.d_f_h));
    add_clause(cert, "xhat_within_M", (cert.xhat - cert.theta).norm() <= cert.M + cert.lattice_spacing,
               format_double((cert.xhat - cert.theta).norm()));
    add_clause(cert, "xhat_efficient", cert.xhat_efficient == Tri::yes, std::string(to_string(cert.xhat_efficient)));
    add_clause(cert, "dh_well_posed", cert.dh_report.verdict == WellPosedness::well_posed,
               std::string(to_string(cert.dh_report.verdict)));

    cert.valid = std::all_of(cert.clauses.begin(), cert.clauses.end(), [](const CertificateClause& c) { return c.holds; });
    if (!cert.valid && opt.throw_on_failure) {
        for (const auto& c : cert.clauses)
            if (!c.holds) fail(ErrorKind::certificate_failure, "clause " + c.name + " failed (" + c.detail + ")");
    }
    return {std::move(h), std::move(cert)};
}

ProbeReport genericity_probe(const std::vector<VectorProblem>& family, double sigma, const MetricParams& mp,
                             std::size_t grid_resolution, const ProbeOptions& opt) {
    ProbeReport rep;
    rep.n_max = opt.n_max;
    for (const auto& member : family) {
        ProbeMember out;
        out.label = member.label();
        const auto convex = is_c_convex(member, opt.convexity);
        if (convex.verdict != Evidence::holds) {
            out.skipped = true;
            out.reason = std::string("C-convexity: ") + std::string(to_string(convex.verdict));
            rep.members.push_back(std::move(out));
            continue;
        }
        ++rep.attempted;
        try {
            PipelineOptions popt = opt.pipeline;
            popt.throw_on_failure = false;
            auto res = density_pipeline(member, sigma, mp, grid_resolution, popt);
            out.pipeline_ok = res.certificate.valid;
            if (!out.pipeline_ok) {
                for (const auto& c : res.certificate.clauses)
                    if (!c.holds) out.reason = "clause " + c.name + " failed";
            }
            const auto s_h = scalarize_linear(res.problem, res.certificate.bounding_functional);
            const auto fv = tykhonov_diagnostic(s_h, opt.level_schedule, grid_resolution, opt.pipeline.wp);
            out.min_level_diameter = std::numeric_limits<double>::infinity();
            for (const auto& pt : fv.diam_curve) out.min_level_diameter = std::min(out.min_level_diameter, pt.diameter);
            for (std::size_t n = opt.n_max; n >= 1; --n) {
                if (out.min_level_diameter < 1.0 / static_cast<double>(n)) {
                    out.largest_n = n;
                    break;
                }
            }
            out.certificate = std::move(res.certificate);
        } catch (const Error& e) {
            out.reason = std::string(to_string(e.kind())) + ": " + e.what();
        }
        out.success = out.pipeline_ok && out.largest_n == opt.n_max;
        if (out.success) ++rep.successes;
        rep.members.push_back(std::move(out));
    }
    if (rep.attempted > 0) rep.success_fraction = static_cast<double>(rep.successes) / static_cast<double>(rep.attempted);
    return rep;
}

}  // namespace vecwp
