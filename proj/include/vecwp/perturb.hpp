#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vecwp/analysis.hpp"
#include "vecwp/diagnostics.hpp"
#include "vecwp/problem.hpp"

namespace vecwp {

struct TikhonovOptions {
    std::size_t grid_resolution = 201;
    ClassifyOptions classify;
    std::vector<double> alpha_schedule = default_schedule();
    /// Empty means default_dh_directions.
    std::vector<Vector> directions;
    WellPosednessOptions wp;
    /// The anchor is always reset to xbar so that the closed form applies.
    MetricParams metric;
};

struct TikhonovCertificate {
    std::size_t n = 1;
    Vector point;
    Tri efficient = Tri::inconclusive;
    WellPosednessReport dh_report;
    MetricEstimate distance;
    /// sum_{i<=I} 2^-i a_i / (1 + a_i), a_i = min(i, R) ||k0|| / n, R the
    /// largest distance from xbar to the box.
    double closed_form_distance = 0.0;
    bool continuous = true;
    /// Checked only for continuous problems.
    Tri strictly_efficient = Tri::inconclusive;
    bool valid = false;
};

struct TikhonovResult {
    VectorProblem problem;
    TikhonovCertificate certificate;
};

/// f_n = f + (1/n) ||x - xbar|| k0 and the checks that it is DH-well-posed at xbar.
/// Throws PreconditionError unless xbar is efficient on the lattice.
TikhonovResult tikhonov_regularize(const VectorProblem& p, const Vector& xbar, std::size_t n, const TikhonovOptions& opt = {});

double tikhonov_distance_closed_form(const Box& box, const Vector& xbar, double k0_norm, std::size_t n, std::size_t truncation);

struct EkelandResult {
    Vector center;
    double strength = 0.0;
    double radius = 0.0;
    Vector start;
    double start_value = 0.0;
    double center_value = 0.0;
    /// min over the lattice and the start point.
    double infimum = 0.0;
    std::size_t iterations = 0;
    /// min over lattice x != center of sp(x) + eps ||x - center|| - sp(center).
    double margin = 0.0;
    /// Lattice points where that quantity is <= 0.
    std::size_t violations = 0;
    double distance_from_start = 0.0;
    bool item1 = false;  // ||center - start|| < radius
    bool item2 = false;  // sp(center) + eps ||center - start|| <= sp(start)
    bool item3 = false;  // no violations
    std::size_t lattice_size = 0;
};

/// Discrete Ekeland iteration: from x_k move to the lowest-index lattice
/// minimizer of sp(x) + eps ||x - x_k|| over x != x_k while that value is
/// <= sp(x_k). Each move strictly lowers sp, so it stops on a finite lattice.
/// Throws HypothesisNotMet unless sp(start) < inf + r eps.
EkelandResult ekeland_point(const ScalarProblem& sp, const Vector& start, double eps, double r, std::size_t grid_resolution);
/// Same on values already computed on a lattice.
EkelandResult ekeland_point(const Lattice& lattice, const std::vector<double>& values, const ScalarProblem& sp,
                            const Vector& start, double eps, double r);

struct PipelineOptions {
    BoundingSearchOptions bounding;
    std::vector<double> alpha_schedule = default_schedule();
    WellPosednessOptions wp;
    ClassifyOptions classify{1e-9, false};
    std::uint64_t j_cap = std::uint64_t{1} << 30;
    /// Throw CertificateFailure on a failed clause instead of returning it.
    bool throw_on_failure = true;
};

struct CertificateClause {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct PipelineCertificate {
    double sigma = 0.0;
    std::uint64_t j = 1;
    double M = 0.0;
    double s = 0.0;
    /// Bound on the neglected tail of the series for s.
    double s_tail = 0.0;
    double epsilon = 0.0;
    Vector xhat;
    Vector theta;
    Vector bounding_functional;
    /// k0 rescaled so that <bounding_functional, k0> = 1.
    Vector k0;
    double d_f_g = 0.0;
    double d_g_h = 0.0;
    double d_f_h = 0.0;
    double metric_tail = 0.0;
    double lattice_spacing = 0.0;
    std::size_t grid_resolution = 0;
    EkelandResult ekeland;
    Tri xhat_efficient = Tri::inconclusive;
    WellPosednessReport dh_report;
    std::vector<CertificateClause> clauses;
    bool valid = false;
};

struct PipelineResult {
    VectorProblem problem;
    PipelineCertificate certificate;
};

/// Bounding functional, Tikhonov step, Ekeland step, and verification.
/// Throws NoBoundingFunctional when no xi in C* bounds <xi, f> from below.
PipelineResult density_pipeline(const VectorProblem& p, double sigma, const MetricParams& mp, std::size_t grid_resolution,
                                 const PipelineOptions& opt = {});

struct ProbeOptions {
    PipelineOptions pipeline;
    ConvexityOptions convexity;
    std::size_t n_max = 100;
    std::vector<double> level_schedule = default_schedule();
};

struct ProbeMember {
    std::string label;
    bool skipped = false;
    std::string reason;
    bool pipeline_ok = false;
    std::optional<PipelineCertificate> certificate;
    /// Smallest level-set diameter of <xi, h> over the schedule.
    double min_level_diameter = 0.0;
    /// Largest n <= n_max with min_level_diameter < 1/n, 0 if none.
    std::size_t largest_n = 0;
    bool success = false;
};

struct ProbeReport {
    std::vector<ProbeMember> members;
    std::size_t attempted = 0;
    std::size_t successes = 0;
    /// Unset for an empty (or fully skipped) family.
    std::optional<double> success_fraction;
    std::size_t n_max = 0;
};

ProbeReport genericity_probe(const std::vector<VectorProblem>& family, double sigma, const MetricParams& mp,
                             std::size_t grid_resolution, const ProbeOptions& opt = {});

}  // namespace vecwp
