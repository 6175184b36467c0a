#include "vecwp/runner.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vecwp/analysis.hpp"
#include "vecwp/config.hpp"
#include "vecwp/diagnostics.hpp"
#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"
#include "vecwp/perturb.hpp"
#include "vecwp/registry.hpp"
#include "vecwp/report.hpp"

namespace vecwp {

namespace {

struct SubcommandName {
    Subcommand value;
    const char* name;
};

constexpr SubcommandName kSubcommands[] = {
    {Subcommand::distance, "distance"},         {Subcommand::analyze, "analyze"},
    {Subcommand::classify, "classify"},         {Subcommand::tykhonov_check, "tykhonov-check"},
    {Subcommand::dh_check, "dh-check"},         {Subcommand::perturb, "perturb"},
    {Subcommand::pipeline, "pipeline"},         {Subcommand::probe, "probe"},
    {Subcommand::replicate, "replicate"},
};

Vector parse_vector(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(pos, end - pos);
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) fail(ErrorKind::parse, "empty component in " + what + ": '" + text + "'");
        item = item.substr(first, last - first + 1);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            fail(ErrorKind::parse, "bad number '" + item + "' in " + what);
        values.push_back(v);
        pos = end + 1;
    }
    return vec(values);
}

void require_dim(const Vector& v, std::size_t dim, const std::string& what) {
    if (static_cast<std::size_t>(v.size()) != dim)
        fail(ErrorKind::input, what + " has " + std::to_string(v.size()) + " components, expected " + std::to_string(dim));
}

struct Source {
    VectorProblem problem;
    std::optional<RegistryEntry> entry;
    std::size_t grid;
};

Source load_source(const RunConfig& cfg) {
    if (!cfg.problem.empty() && !cfg.config.empty()) fail(ErrorKind::input, "--problem and --config are exclusive");
    if (!cfg.config.empty()) {
        VectorProblem p = load_problem_file(cfg.config);
        return {std::move(p), std::nullopt, cfg.grid ? cfg.grid : std::size_t{201}};
    }
    if (cfg.problem.empty()) fail(ErrorKind::input, "one of --problem or --config is required");
    RegistryEntry e = registry_entry(cfg.problem);
    VectorProblem p = e.make();
    const std::size_t grid = cfg.grid ? cfg.grid : e.default_grid;
    return {std::move(p), std::move(e), grid};
}

std::vector<Vector> requested_points(const RunConfig& cfg, const Source& src) {
    std::vector<Vector> pts;
    for (const auto& s : cfg.points) {
        pts.push_back(parse_vector(s, "--point"));
        require_dim(pts.back(), src.problem.decision_dim(), "--point");
    }
    if (pts.empty()) {
        if (!src.entry) fail(ErrorKind::input, "--point is required for problems read from a config file");
        pts.push_back(src.entry->reference_point);
    }
    return pts;
}

Vector requested_xi(const RunConfig& cfg, const VectorProblem& p) {
    if (!cfg.xi.empty()) {
        Vector xi = parse_vector(cfg.xi, "--xi");
        require_dim(xi, p.objective_dim(), "--xi");
        return xi;
    }
    Vector xi = Vector::Zero(static_cast<Eigen::Index>(p.objective_dim()));
    const auto verts = base_polytope(p.cone()).vertices;
    for (const auto& v : verts) xi += v / static_cast<double>(verts.size());
    return xi;
}

Record header(const RunConfig& cfg, const std::string& label, std::size_t grid) {
    Record r("run");
    r.add("tool", "vecwp");
    r.add("version", kToolVersion);
    r.add("subcommand", to_string(cfg.subcommand));
    r.add("problem", label);
    r.add("source", cfg.config.empty() ? "registry" : "config:" + cfg.config);
    r.add("grid", grid);
    r.add("seed", std::to_string(cfg.seed));
    r.add("sigma", cfg.sigma);
    r.add("n", cfg.n);
    r.add("tol", cfg.tol);
    for (std::size_t i = 0; i < cfg.points.size(); ++i) r.add("point." + std::to_string(i), cfg.points[i]);
    if (!cfg.y.empty()) r.add("y", cfg.y);
    if (!cfg.xi.empty()) r.add("xi", cfg.xi);
    r.add("format", cfg.format == OutputFormat::record ? "record" : "csv");
    return r;
}

Record efficiency_record(const EfficiencyVerdict& v) {
    Record r("classify");
    r.add("point", v.point);
    r.add("efficient", to_string(v.efficient));
    r.add("weakly_efficient", to_string(v.weakly_efficient));
    r.add("strictly_efficient", to_string(v.strictly_efficient));
    if (v.dominating_witness) r.add("dominating_witness", *v.dominating_witness);
    if (v.strict_dominating_witness) r.add("strict_dominating_witness", *v.strict_dominating_witness);
    if (v.strict_epsilon_covered) r.add("strict_epsilon_covered", *v.strict_epsilon_covered);
    r.add("grid_resolution", v.grid_resolution);
    r.add("tol", v.tol);
    return r;
}

Record structural_record(const StructuralVerdict& v) {
    Record r("structural");
    r.add("property", to_string(v.property));
    r.add("verdict", to_string(v.verdict));
    r.add("samples_used", v.samples_used);
    if (v.property == StructuralProperty::c_convex) r.add("routes_agree", v.routes_agree);
    if (v.witness) {
        r.add("witness.x", v.witness->x);
        r.add("witness.z", v.witness->z);
        r.add("witness.t", v.witness->t);
        if (v.witness->xi) r.add("witness.xi", *v.witness->xi);
        r.add("witness.violation", v.witness->violation);
    }
    if (v.trace) {
        r.add("trace.xi", v.trace->xi);
        r.add("trace.factors", vec(v.trace->factors));
        r.add("trace.minima", vec(v.trace->minima));
    }
    return r;
}

void add_ekeland(Record& r, const std::string& prefix, const EkelandResult& e) {
    r.add(prefix + "center", e.center);
    r.add(prefix + "strength", e.strength);
    r.add(prefix + "radius", e.radius);
    r.add(prefix + "start", e.start);
    r.add(prefix + "start_value", e.start_value);
    r.add(prefix + "center_value", e.center_value);
    r.add(prefix + "infimum", e.infimum);
    r.add(prefix + "iterations", e.iterations);
    r.add(prefix + "margin", e.margin);
    r.add(prefix + "violations", e.violations);
    r.add(prefix + "distance_from_start", e.distance_from_start);
    r.add(prefix + "item1", e.item1);
    r.add(prefix + "item2", e.item2);
    r.add(prefix + "item3", e.item3);
    r.add(prefix + "lattice_size", e.lattice_size);
}

Record pipeline_record(const PipelineCertificate& c) {
    Record r("pipeline");
    r.add("valid", c.valid);
    r.add("sigma", c.sigma);
    r.add("j", std::to_string(c.j));
    r.add("M", c.M);
    r.add("s", c.s);
    r.add("s_tail", c.s_tail);
    r.add("epsilon", c.epsilon);
    r.add("xhat", c.xhat);
    r.add("theta", c.theta);
    r.add("bounding_functional", c.bounding_functional);
    r.add("k0", c.k0);
    r.add("d_f_g", c.d_f_g);
    r.add("d_g_h", c.d_g_h);
    r.add("d_f_h", c.d_f_h);
    r.add("metric_tail", c.metric_tail);
    r.add("lattice_spacing", c.lattice_spacing);
    r.add("grid_resolution", c.grid_resolution);
    r.add("xhat_efficient", to_string(c.xhat_efficient));
    r.add("dh_verdict", to_string(c.dh_report.verdict));
    add_ekeland(r, "ekeland.", c.ekeland);
    for (const auto& cl : c.clauses) {
        r.add("clause." + cl.name, cl.holds);
        if (!cl.detail.empty()) r.add("clause." + cl.name + ".detail", cl.detail);
    }
    return r;
}

struct Outcome {
    std::vector<Record> records;
    std::optional<WellPosednessReport> curve;
    bool failed = false;
};

void run_distance(const RunConfig& cfg, const Source& src, Outcome& o) {
    if (cfg.y.empty()) fail(ErrorKind::input, "--y is required");
    const Vector y = parse_vector(cfg.y, "--y");
    require_dim(y, src.problem.objective_dim(), "--y");
    const auto& cone = src.problem.cone();
    const auto res = oriented_distance(cone, y);
    const auto samples = sample_dual_sphere(cone, 10000, cfg.seed);
    Record r("distance");
    r.add("y", y);
    r.add("value", res.value);
    r.add("nearest_point", res.nearest_point);
    r.add("in_neg_cone", res.value <= 0.0);
    if (res.active_facet) r.add("active_facet", *res.active_facet);
    r.add("sampled_lower_bound", oriented_distance_sampled(cone, y, samples));
    r.add("dual_samples", samples.size());
    o.records.push_back(std::move(r));
}

void run_analyze(const RunConfig& cfg, const Source& src, Outcome& o) {
    const auto& p = src.problem;
    ConvexityOptions copt;
    copt.seed = cfg.seed;
    copt.tol = cfg.tol;
    o.records.push_back(structural_record(is_c_convex(p, copt)));
    QuasiconvexityOptions qopt;
    qopt.seed = cfg.seed;
    qopt.tol = cfg.tol;
    o.records.push_back(structural_record(is_star_quasiconvex(p, qopt)));
    std::vector<Vector> xis;
    if (!cfg.xi.empty()) xis.push_back(requested_xi(cfg, p));
    else xis = base_polytope(p.cone()).vertices;
    for (const auto& xi : xis) o.records.push_back(structural_record(is_c_bounded_below(p, xi)));
    BoundingSearchOptions bopt;
    bopt.seed = cfg.seed;
    const auto bf = find_bounding_functional(p, bopt);
    Record r("bounding_functional");
    r.add("found", bf.has_value());
    if (bf) r.add("xi", *bf);
    o.records.push_back(std::move(r));
}

void run_classify(const RunConfig& cfg, const Source& src, Outcome& o) {
    const auto image = evaluate_on_lattice(src.problem, src.grid);
    ClassifyOptions copt;
    copt.tol = cfg.tol;
    for (const auto& x : requested_points(cfg, src)) {
        Record r = efficiency_record(classify_point(src.problem, image, x, copt));
        r.add("weff_via_distance", weff_via_distance(src.problem, image, x, cfg.tol));
        o.records.push_back(std::move(r));
    }
}

void run_tykhonov(const RunConfig& cfg, const Source& src, Outcome& o) {
    const Vector xi = requested_xi(cfg, src.problem);
    o.curve = tykhonov_diagnostic(scalarize_linear(src.problem, xi), default_schedule(), src.grid);
    Record r = well_posedness_record(*o.curve);
    r.add("xi", xi);
    o.records.push_back(std::move(r));
}

void run_dh(const RunConfig& cfg, const Source& src, Outcome& o) {
    const auto pts = requested_points(cfg, src);
    if (pts.size() != 1) fail(ErrorKind::input, "dh-check takes a single --point");
    o.curve = dh_diagnostic(src.problem, pts[0], default_dh_directions(src.problem.cone()), default_schedule(), src.grid);
    o.records.push_back(well_posedness_record(*o.curve));
    const auto sc = dh_via_scalarization(src.problem, pts[0], default_schedule(), src.grid);
    Record r = well_posedness_record(sc);
    r.add("scalarization_agrees", sc.verdict == o.curve->verdict);
    o.records.push_back(std::move(r));
}

void run_perturb(const RunConfig& cfg, const Source& src, Outcome& o) {
    const auto pts = requested_points(cfg, src);
    if (pts.size() != 1) fail(ErrorKind::input, "perturb takes a single --point");
    if (cfg.n == 0) fail(ErrorKind::input, "--n must be positive");
    TikhonovOptions topt;
    topt.grid_resolution = src.grid;
    topt.classify.tol = cfg.tol;
    topt.metric.seed = cfg.seed;
    const auto res = tikhonov_regularize(src.problem, pts[0], cfg.n, topt);
    const auto& c = res.certificate;
    Record r("perturb");
    r.add("valid", c.valid);
    r.add("n", c.n);
    r.add("point", c.point);
    r.add("efficient", to_string(c.efficient));
    r.add("dh_verdict", to_string(c.dh_report.verdict));
    r.add("distance", c.distance.value);
    r.add("distance_tail", c.distance.tail_bound);
    r.add("closed_form_distance", c.closed_form_distance);
    r.add("continuous", c.continuous);
    r.add("strictly_efficient", to_string(c.strictly_efficient));
    o.records.push_back(std::move(r));
    o.curve = c.dh_report;
    o.records.push_back(well_posedness_record(c.dh_report));
    o.failed = !c.valid;
}

void run_pipeline(const RunConfig& cfg, const Source& src, Outcome& o) {
    MetricParams mp;
    mp.seed = cfg.seed;
    PipelineOptions popt;
    popt.bounding.seed = cfg.seed;
    popt.classify.tol = cfg.tol;
    popt.throw_on_failure = false;
    const auto res = density_pipeline(src.problem, cfg.sigma, mp, src.grid, popt);
    o.records.push_back(pipeline_record(res.certificate));
    o.curve = res.certificate.dh_report;
    o.failed = !res.certificate.valid;
}

void run_probe(const RunConfig& cfg, Outcome& o, std::size_t grid, const std::optional<Source>& src) {
    std::vector<VectorProblem> family;
    if (src) family.push_back(src->problem);
    else
        for (std::size_t i = 0; i < cfg.n; ++i) family.push_back(make_convex_quadratic_pair(1, cfg.seed + i));
    MetricParams mp;
    mp.seed = cfg.seed;
    ProbeOptions popt;
    popt.pipeline.bounding.seed = cfg.seed;
    popt.pipeline.throw_on_failure = false;
    popt.convexity.seed = cfg.seed;
    const auto rep = genericity_probe(family, cfg.sigma, mp, grid, popt);
    for (const auto& m : rep.members) {
        Record r("probe_member");
        r.add("label", m.label);
        r.add("skipped", m.skipped);
        if (!m.reason.empty()) r.add("reason", m.reason);
        r.add("pipeline_ok", m.pipeline_ok);
        if (m.certificate) {
            r.add("d_f_h", m.certificate->d_f_h);
            r.add("xhat", m.certificate->xhat);
        }
        r.add("min_level_diameter", m.min_level_diameter);
        r.add("largest_n", m.largest_n);
        r.add("success", m.success);
        o.records.push_back(std::move(r));
    }
    Record s("probe");
    s.add("family_size", family.size());
    s.add("attempted", rep.attempted);
    s.add("successes", rep.successes);
    s.add("success_fraction", rep.success_fraction ? format_double(*rep.success_fraction) : std::string("undefined"));
    s.add("n_max", rep.n_max);
    o.records.push_back(std::move(s));
}

void run_replicate(const RunConfig& cfg, Outcome& o) {
    if (!cfg.config.empty()) fail(ErrorKind::input, "replicate needs a registry label");
    std::vector<std::string> labels;
    if (cfg.problem.empty()) labels = registry_labels();
    else labels.push_back(cfg.problem);
    for (const auto& label : labels) {
        const auto rep = replicate(label, cfg.seed);
        for (const auto& a : rep.assertions) {
            Record r("assertion");
            r.add("problem", label);
            r.add("name", a.name);
            r.add("source", to_string(a.source));
            r.add("result", a.passed ? "pass" : "fail");
            if (!a.detail.empty()) r.add("detail", a.detail);
            o.records.push_back(std::move(r));
        }
        Record s("replicate");
        s.add("problem", label);
        s.add("assertions", rep.assertions.size());
        s.add("all_passed", rep.all_passed());
        o.records.push_back(std::move(s));
        o.failed = o.failed || !rep.all_passed();
    }
}

}  // namespace

std::string_view to_string(Subcommand s) {
    for (const auto& e : kSubcommands)
        if (e.value == s) return e.name;
    return "unknown";
}

Subcommand parse_subcommand(const std::string& name) {
    for (const auto& e : kSubcommands)
        if (name == e.name) return e.value;
    fail(ErrorKind::input, "unknown subcommand: " + name);
}

OutputFormat parse_format(const std::string& name) {
    if (name == "record") return OutputFormat::record;
    if (name == "csv") return OutputFormat::csv;
    fail(ErrorKind::input, "unknown format: " + name + " (expected record or csv)");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Outcome o;
    std::string label = cfg.problem;
    std::size_t grid = cfg.grid;
    try {
        if (cfg.subcommand == Subcommand::replicate) {
            run_replicate(cfg, o);
        } else if (cfg.subcommand == Subcommand::probe && cfg.problem.empty() && cfg.config.empty()) {
            label = "convex-quadratic-family";
            if (!grid) grid = 101;
            run_probe(cfg, o, grid, std::nullopt);
        } else {
            const Source src = load_source(cfg);
            label = src.problem.label();
            grid = src.grid;
            switch (cfg.subcommand) {
                case Subcommand::distance: run_distance(cfg, src, o); break;
                case Subcommand::analyze: run_analyze(cfg, src, o); break;
                case Subcommand::classify: run_classify(cfg, src, o); break;
                case Subcommand::tykhonov_check: run_tykhonov(cfg, src, o); break;
                case Subcommand::dh_check: run_dh(cfg, src, o); break;
                case Subcommand::perturb: run_perturb(cfg, src, o); break;
                case Subcommand::pipeline: run_pipeline(cfg, src, o); break;
                case Subcommand::probe: run_probe(cfg, o, grid, src); break;
                case Subcommand::replicate: break;
            }
        }
    } catch (const Error& e) {
        err << "error.kind=" << to_string(e.kind()) << "\nerror.message=" << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "error.kind=InputError\nerror.message=cannot open " << cfg.out << '\n';
            return 2;
        }
        sink = &file;
    }
    if (cfg.format == OutputFormat::csv) {
        if (!o.curve) {
            err << "error.kind=InputError\nerror.message=csv output is available for tykhonov-check, dh-check, perturb "
                   "and pipeline\n";
            return 2;
        }
        write_curve_csv(*sink, *o.curve);
    } else {
        std::vector<Record> all;
        all.push_back(header(cfg, label, grid));
        for (auto& r : o.records) all.push_back(std::move(r));
        write_records(*sink, all);
    }
    return o.failed ? 1 : 0;
}

}  // namespace vecwp
