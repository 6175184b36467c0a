#include "vecwp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"

namespace vecwp {

std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string_view to_string(WellPosedness w) {
    switch (w) {
        case WellPosedness::well_posed: return "well_posed_evidence";
        case WellPosedness::not_well_posed: return "not_well_posed_evidence";
        case WellPosedness::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::vector<double> WellPosednessReport::curve(std::size_t direction_index) const {
    std::vector<double> out;
    for (const auto& pt : diam_curve)
        if (pt.direction_index == direction_index) out.push_back(pt.diameter);
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(const VectorProblem& p, const Vector& xbar) {
    if (static_cast<std::size_t>(xbar.size()) != p.decision_dim()) fail(ErrorKind::input, "point dimension mismatch");
    if (!p.domain().contains(xbar, 1e-12)) fail(ErrorKind::input, "point lies outside the domain");
}

void check_schedule(const std::vector<double>& s) {
    if (s.empty()) fail(ErrorKind::input, "schedule must not be empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0) || !std::isfinite(s[i])) fail(ErrorKind::input, "schedule entries must be positive and finite");
        if (i > 0 && !(s[i] < s[i - 1])) fail(ErrorKind::input, "schedule must be strictly decreasing");
    }
}

Matrix dual_values_of(const VectorProblem& p, const LatticeImage& image) {
    if (image.dual_values.rows() == p.cone().dual_matrix().rows() && image.dual_values.cols() == image.values.cols())
        return image.dual_values;
    return p.cone().dual_matrix() * image.values;
}

const Matrix& cached_dual_values(const VectorProblem& p, const LatticeImage& image, Matrix& storage) {
    if (image.dual_values.rows() == p.cone().dual_matrix().rows() && image.dual_values.cols() == image.values.cols())
        return image.dual_values;
    storage = dual_values_of(p, image);
    return storage;
}

bool same_point(const Vector& a, const Vector& b) {
    return (a - b).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + b.cwiseAbs().maxCoeff());
}

// Line extremes of nested level sets {crit <= level_k}, gathered in one pass.
// Sets are reported per (curve, level) as points first or last along their
// lattice line in the fastest axis; the diameter is unchanged by the pruning.
class LevelCollector {
public:
    LevelCollector(const Lattice& lattice, std::size_t curves, std::vector<double> levels)
        : lattice_(lattice), curves_(curves), levels_(std::move(levels)),
          first_(curves * levels_.size(), kNone), last_(curves * levels_.size(), kNone),
          points_(curves * levels_.size()), counts_(curves * levels_.size(), 0) {}

    void visit(std::size_t idx, const double* crit) {
        for (std::size_t c = 0; c < curves_; ++c) {
            for (std::size_t k = 0; k < levels_.size() && crit[c] <= levels_[k]; ++k) {
                const std::size_t slot = c * levels_.size() + k;
                if (first_[slot] == kNone) first_[slot] = idx;
                last_[slot] = idx;
                ++counts_[slot];
            }
        }
        if ((idx + 1) % lattice_.resolution() == 0) flush();
    }

    void add_extra(const Vector& x, const double* crit) {
        for (std::size_t c = 0; c < curves_; ++c) {
            for (std::size_t k = 0; k < levels_.size() && crit[c] <= levels_[k]; ++k) {
                const std::size_t slot = c * levels_.size() + k;
                points_[slot].push_back(x);
                ++counts_[slot];
            }
        }
    }

    double diameter_of(std::size_t curve, std::size_t level) const { return diameter(points_[curve * levels_.size() + level]); }
    std::size_t count_of(std::size_t curve, std::size_t level) const { return counts_[curve * levels_.size() + level]; }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    void flush() {
        for (std::size_t slot = 0; slot < first_.size(); ++slot) {
            if (first_[slot] == kNone) continue;
            points_[slot].push_back(lattice_.point(first_[slot]));
            if (last_[slot] != first_[slot]) points_[slot].push_back(lattice_.point(last_[slot]));
            first_[slot] = last_[slot] = kNone;
        }
    }

    const Lattice& lattice_;
    std::size_t curves_;
    std::vector<double> levels_;
    std::vector<std::size_t> first_, last_;
    std::vector<std::vector<Vector>> points_;
    std::vector<std::size_t> counts_;
};

WellPosedness curve_verdict(const std::vector<double>& curve, double threshold, double ratio) {
    const double initial = curve.front(), final = curve.back();
    if (final <= threshold && (final <= ratio * initial || initial <= threshold)) return WellPosedness::well_posed;
    if (final > threshold && final > ratio * initial) return WellPosedness::not_well_posed;
    return WellPosedness::inconclusive;
}

WellPosedness combine(const std::vector<WellPosedness>& v) {
    bool all_wp = true;
    for (auto w : v) {
        if (w == WellPosedness::not_well_posed) return WellPosedness::not_well_posed;
        if (w != WellPosedness::well_posed) all_wp = false;
    }
    return all_wp ? WellPosedness::well_posed : WellPosedness::inconclusive;
}

}  // namespace

EfficiencyVerdict classify_point(const VectorProblem& p, const Vector& xbar, std::size_t grid_resolution,
                                 const ClassifyOptions& opt) {
    check_point(p, xbar);
    return classify_point(p, evaluate_on_lattice(p, grid_resolution), xbar, opt);
}

EfficiencyVerdict classify_point(const VectorProblem& p, const LatticeImage& image, const Vector& xbar,
                                 const ClassifyOptions& opt) {
    check_point(p, xbar);
    if (!(image.lattice.box() == p.domain())) fail(ErrorKind::input, "lattice image belongs to another domain");
    const OrderingCone& cone = p.cone();
    const Vector fbar = p(xbar);
    const Vector gbar = cone.dual_matrix() * fbar;
    Matrix storage;
    const Matrix& pv = cached_dual_values(p, image, storage);
    const auto n = static_cast<Eigen::Index>(image.lattice.size());

    EfficiencyVerdict out;
    out.point = xbar;
    out.grid_resolution = image.lattice.resolution();
    out.tol = opt.tol;

    for (Eigen::Index i = 0; i < n && !(out.dominating_witness && out.strict_dominating_witness); ++i) {
        // top = max_g <g, f(x) - f(xbar)>: f(x) - f(xbar) is in -C iff top <= tol.
        const double top = (pv.col(i) - gbar).maxCoeff();
        if (top > cone.tol()) continue;
        if (!out.dominating_witness && (image.values.col(i) - fbar).norm() > opt.tol)
            out.dominating_witness = image.lattice.point(static_cast<std::size_t>(i));
        if (!out.strict_dominating_witness && top < -opt.tol)
            out.strict_dominating_witness = image.lattice.point(static_cast<std::size_t>(i));
    }
    out.efficient = out.dominating_witness ? Tri::no : Tri::yes;
    out.weakly_efficient = out.strict_dominating_witness ? Tri::no : Tri::yes;

    if (out.efficient == Tri::no) {
        out.strictly_efficient = Tri::no;
        return out;
    }
    if (!opt.test_strict) return out;

    // m(eps) = min of D(f(x) - f(xbar)) over lattice x outside xbar + eps B;
    // a delta works for eps exactly when delta < m(eps).
    const int steps = std::max(0, opt.strict_eps_steps);
    std::vector<double> eps(static_cast<std::size_t>(steps) + 1), m(eps.size(), kInf);
    for (std::size_t k = 0; k < eps.size(); ++k) eps[k] = std::ldexp(1.0, -static_cast<int>(k));
    image.lattice.for_each([&](std::size_t i, const Vector& x) {
        const double r = (x - xbar).norm();
        if (!(r > eps.back())) return;
        const double dv = oriented_distance_value(cone, image.values.col(static_cast<Eigen::Index>(i)) - fbar);
        for (std::size_t k = 0; k < eps.size(); ++k)
            if (r > eps[k]) m[k] = std::min(m[k], dv);
    });
    const double delta_min = std::ldexp(1.0, -std::max(0, opt.strict_delta_steps));
    bool any_no = false, all_covered = true;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (m[k] <= opt.tol) any_no = true;
        else if (m[k] > delta_min) out.strict_epsilon_covered = eps[k];
        else all_covered = false;
    }
    if (any_no) out.strictly_efficient = Tri::no;
    else if (all_covered && image.lattice.spacing() <= eps.front()) out.strictly_efficient = Tri::yes;
    else out.strictly_efficient = Tri::inconclusive;
    return out;
}

DistanceScan oriented_distance_scan(const VectorProblem& p, const LatticeImage& image, const Vector& xbar, double tol,
                                    bool find_all_minimizers) {
    check_point(p, xbar);
    if (!(image.lattice.box() == p.domain())) fail(ErrorKind::input, "lattice image belongs to another domain");
    const OrderingCone& cone = p.cone();
    const Vector fbar = p(xbar);
    const Vector gbar = cone.dual_matrix() * fbar;
    Matrix storage;
    const Matrix& pv = cached_dual_values(p, image, storage);
    const auto n = static_cast<Eigen::Index>(image.lattice.size());

    DistanceScan out;
    out.argmin = xbar;
    std::vector<double> values;
    if (find_all_minimizers) values.assign(static_cast<std::size_t>(n), kInf);
    std::size_t arg = std::numeric_limits<std::size_t>::max();

    for (Eigen::Index i = 0; i < n; ++i) {
        // max_g <g, v> bounds D(v) from below and equals it inside -C.
        const double lb = (pv.col(i) - gbar).maxCoeff();
        double value = lb;
        if (lb > cone.tol()) {
            if (!find_all_minimizers || lb > out.min_value + tol) continue;
            value = oriented_distance_value(cone, image.values.col(i) - fbar);
        }
        if (find_all_minimizers) values[static_cast<std::size_t>(i)] = value;
        if (value < out.min_value) {
            out.min_value = value;
            arg = static_cast<std::size_t>(i);
        }
        if (value < -tol) {
            out.weakly_efficient = false;
            if (!find_all_minimizers) break;
        }
    }
    if (arg != std::numeric_limits<std::size_t>::max()) out.argmin = image.lattice.point(arg);
    if (find_all_minimizers) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] <= out.min_value + tol)) continue;
            if (same_point(image.lattice.point(i), xbar)) continue;
            ++out.other_minimizers;
        }
    }
    return out;
}

bool weff_via_distance(const VectorProblem& p, const Vector& xbar, std::size_t grid_resolution, double tol) {
    check_point(p, xbar);
    return weff_via_distance(p, evaluate_on_lattice(p, grid_resolution), xbar, tol);
}

bool weff_via_distance(const VectorProblem& p, const LatticeImage& image, const Vector& xbar, double tol) {
    return oriented_distance_scan(p, image, xbar, tol, false).weakly_efficient;
}

std::vector<double> geometric_schedule(int steps) {
    std::vector<double> s;
    for (int k = 0; k <= steps; ++k) s.push_back(std::ldexp(1.0, -k));
    return s;
}

std::vector<double> default_schedule() {
    return geometric_schedule(20);
}

WellPosednessReport tykhonov_diagnostic(const ScalarProblem& sp, const std::vector<double>& eps_schedule,
                                        std::size_t grid_resolution, const WellPosednessOptions& opt,
                                        std::span<const Vector> extra_points) {
    check_schedule(eps_schedule);
    const Lattice lattice(sp.domain(), grid_resolution);
    for (const auto& e : extra_points)
        if (!sp.domain().contains(e, 1e-12)) fail(ErrorKind::input, "extra point lies outside the domain");

    // Values are kept when the lattice is small enough, recomputed otherwise.
    const bool keep = lattice.size() <= (std::size_t{1} << 23);
    std::vector<double> values;
    if (keep) values.resize(lattice.size());

    double inf = kInf;
    std::optional<Vector> argmin;
    lattice.for_each([&](std::size_t i, const Vector& x) {
        const double v = sp(x);
        if (keep) values[i] = v;
        if (v < inf) {
            inf = v;
            argmin = x;
        }
    });
    std::vector<double> extra_values;
    for (const auto& e : extra_points) {
        extra_values.push_back(sp(e));
        if (extra_values.back() < inf) {
            inf = extra_values.back();
            argmin = e;
        }
    }
    if (!std::isfinite(inf)) fail(ErrorKind::numerical_failure, "scalar problem has no finite value on the lattice");

    std::vector<double> levels;
    for (double e : eps_schedule) levels.push_back(inf + e);
    LevelCollector collector(lattice, 1, levels);
    lattice.for_each([&](std::size_t i, const Vector& x) {
        const double v = keep ? values[i] : sp(x);
        collector.visit(i, &v);
    });
    for (std::size_t e = 0; e < extra_points.size(); ++e) collector.add_extra(extra_points[e], &extra_values[e]);

    WellPosednessReport rep;
    rep.kind = WellPosednessReport::Kind::tykhonov;
    rep.schedule = eps_schedule;
    rep.tol_abs = opt.tol_abs;
    rep.decay_ratio = opt.decay_ratio;
    rep.lattice_spacing = lattice.spacing();
    rep.threshold = opt.tol_abs + 2.0 * rep.lattice_spacing;
    rep.grid_resolution = grid_resolution;
    rep.infimum = inf;
    rep.argmin = argmin;
    for (std::size_t k = 0; k < levels.size(); ++k)
        rep.diam_curve.push_back({eps_schedule[k], 0, collector.diameter_of(0, k), collector.count_of(0, k)});
    rep.direction_verdicts.push_back(curve_verdict(rep.curve(0), rep.threshold, rep.decay_ratio));
    rep.verdict = rep.direction_verdicts.front();
    return rep;
}

std::vector<Vector> default_dh_directions(const OrderingCone& cone) {
    Vector s = Vector::Zero(static_cast<Eigen::Index>(cone.ambient_dim()));
    for (const auto& g : cone.generators()) s += g;
    s.normalize();
    std::vector<Vector> dirs{cone.k0()};
    for (const auto& c : cone.extreme_generators()) {
        const Vector d = 0.9 * s + 0.1 * c;
        const bool dup = std::any_of(dirs.begin(), dirs.end(),
                                     [&](const Vector& e) { return e.normalized().dot(d.normalized()) >= 1.0 - 1e-12; });
        if (!dup) dirs.push_back(d);
    }
    return dirs;
}

WellPosednessReport dh_diagnostic(const VectorProblem& p, const Vector& xbar, const std::vector<Vector>& directions,
                                  const std::vector<double>& alpha_schedule, std::size_t grid_resolution,
                                  const WellPosednessOptions& opt) {
    check_point(p, xbar);
    check_schedule(alpha_schedule);
    if (directions.empty()) fail(ErrorKind::input, "at least one direction is required");
    const OrderingCone& cone = p.cone();
    const Matrix& g = cone.dual_matrix();
    std::vector<Vector> gc;
    for (const auto& c : directions) {
        if (static_cast<std::size_t>(c.size()) != p.objective_dim()) fail(ErrorKind::input, "direction dimension mismatch");
        if (!cone.contains(c, true)) fail(ErrorKind::input, "direction is not interior to the cone");
        gc.push_back(g * c);
    }
    const Lattice lattice(p.domain(), grid_resolution);
    const Vector gbar = g * p(xbar);

    // f(xbar) + alpha c - f(x) in C  iff  alpha >= max_g (<g, f(x) - f(xbar)> - tol) / <g, c>.
    auto critical = [&](const Vector& fx, std::vector<double>& crit) {
        const Vector s = g * fx - gbar;
        for (std::size_t j = 0; j < gc.size(); ++j) {
            double a = -kInf;
            for (Eigen::Index r = 0; r < s.size(); ++r) a = std::max(a, (s[r] - cone.tol()) / gc[j][r]);
            crit[j] = a;
        }
    };
    LevelCollector collector(lattice, directions.size(), alpha_schedule);
    std::vector<double> crit(directions.size());
    lattice.for_each([&](std::size_t i, const Vector& x) {
        critical(p(x), crit);
        collector.visit(i, crit.data());
    });
    critical(p(xbar), crit);
    collector.add_extra(xbar, crit.data());

    WellPosednessReport rep;
    rep.kind = WellPosednessReport::Kind::dh;
    rep.point = xbar;
    rep.schedule = alpha_schedule;
    rep.directions = directions;
    rep.tol_abs = opt.tol_abs;
    rep.decay_ratio = opt.decay_ratio;
    rep.lattice_spacing = lattice.spacing();
    rep.threshold = opt.tol_abs + 2.0 * rep.lattice_spacing;
    rep.grid_resolution = grid_resolution;
    for (std::size_t j = 0; j < directions.size(); ++j) {
        for (std::size_t k = 0; k < alpha_schedule.size(); ++k)
            rep.diam_curve.push_back({alpha_schedule[k], j, collector.diameter_of(j, k), collector.count_of(j, k)});
        rep.direction_verdicts.push_back(curve_verdict(rep.curve(j), rep.threshold, rep.decay_ratio));
    }
    rep.verdict = combine(rep.direction_verdicts);
    return rep;
}

WellPosednessReport dh_via_scalarization(const VectorProblem& p, const Vector& xbar, const std::vector<double>& eps_schedule,
                                         std::size_t grid_resolution, const WellPosednessOptions& opt) {
    check_point(p, xbar);
    const ScalarProblem sp = scalarize_oriented(p, xbar);
    const Vector extra[] = {xbar};
    auto rep = tykhonov_diagnostic(sp, eps_schedule, grid_resolution, opt, extra);
    rep.point = xbar;
    return rep;
}

LinearSufficiency dh_sufficient_linear(const VectorProblem& p, const Vector& xbar, const Vector& xi,
                                       const std::vector<double>& eps_schedule, std::size_t grid_resolution,
                                       const WellPosednessOptions& opt) {
    check_point(p, xbar);
    LinearSufficiency out;
    out.scalar_report = tykhonov_diagnostic(scalarize_linear(p, xi), eps_schedule, grid_resolution, opt);
    out.scalar_report.point = xbar;
    const Lattice lattice(p.domain(), grid_resolution);
    const Vector node = lattice.point(lattice.nearest_index(xbar));
    const bool argmin_at_xbar = out.scalar_report.argmin && (same_point(*out.scalar_report.argmin, xbar) ||
                                                             same_point(*out.scalar_report.argmin, node));
    out.sufficient = out.scalar_report.verdict == WellPosedness::well_posed && argmin_at_xbar;
    out.dh_report = dh_diagnostic(p, xbar, default_dh_directions(p.cone()), eps_schedule, grid_resolution, opt);
    out.implication_holds = !out.sufficient || out.dh_report.verdict == WellPosedness::well_posed;
    return out;
}

}  // namespace vecwp
