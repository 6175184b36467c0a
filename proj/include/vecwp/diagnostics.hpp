#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vecwp/linalg.hpp"
#include "vecwp/problem.hpp"

namespace vecwp {

enum class Tri { yes, no, inconclusive };
std::string_view to_string(Tri t);

struct EfficiencyVerdict {
    Vector point;
    Tri efficient = Tri::inconclusive;
    Tri weakly_efficient = Tri::inconclusive;
    Tri strictly_efficient = Tri::inconclusive;
    /// Lowest-index lattice x with f(x) - f(xbar) in -C and norm above tol.
    std::optional<Vector> dominating_witness;
    /// Lowest-index lattice x with f(x) - f(xbar) in -int C.
    std::optional<Vector> strict_dominating_witness;
    /// Smallest epsilon of the schedule for which a delta was found.
    std::optional<double> strict_epsilon_covered;
    std::size_t grid_resolution = 0;
    double tol = 0.0;
};

struct ClassifyOptions {
    double tol = 1e-9;
    /// Run the epsilon-delta test for strict efficiency.
    bool test_strict = true;
    /// Epsilons 2^0 .. 2^-strict_eps_steps.
    int strict_eps_steps = 6;
    /// Deltas 2^0 .. 2^-strict_delta_steps.
    int strict_delta_steps = 30;
};

EfficiencyVerdict classify_point(const VectorProblem& p, const Vector& xbar, std::size_t grid_resolution,
                                 const ClassifyOptions& opt = {});
/// Same, reusing objective values already evaluated on the lattice.
EfficiencyVerdict classify_point(const VectorProblem& p, const LatticeImage& image, const Vector& xbar,
                                 const ClassifyOptions& opt = {});

struct DistanceScan {
    bool weakly_efficient = true;
    /// min over the lattice and xbar of D_{-C}(f(x) - f(xbar)).
    double min_value = 0.0;
    /// Minimizer (xbar itself when it is a minimizer).
    Vector argmin;
    /// Lattice nodes other than xbar whose value is within tol of the minimum.
    std::size_t other_minimizers = 0;
};

/// True iff min over the lattice of D_{-C}(f(x) - f(xbar)) >= -tol.
bool weff_via_distance(const VectorProblem& p, const Vector& xbar, std::size_t grid_resolution, double tol = 1e-9);
bool weff_via_distance(const VectorProblem& p, const LatticeImage& image, const Vector& xbar, double tol = 1e-9);

/// Exact minimum of the oriented-distance scalarization on the lattice.
/// When `find_all_minimizers` is false the scan stops at the first value
/// below -tol.
DistanceScan oriented_distance_scan(const VectorProblem& p, const LatticeImage& image, const Vector& xbar, double tol,
                                    bool find_all_minimizers);

enum class WellPosedness { well_posed, not_well_posed, inconclusive };
std::string_view to_string(WellPosedness w);

struct DiameterPoint {
    double level = 0.0;
    std::size_t direction_index = 0;
    double diameter = 0.0;
    std::size_t set_size = 0;
};

struct WellPosednessReport {
    enum class Kind { tykhonov, dh };
    Kind kind = Kind::tykhonov;
    std::optional<Vector> point;
    std::vector<double> schedule;
    std::vector<Vector> directions;
    /// Ordered by direction, then by schedule index.
    std::vector<DiameterPoint> diam_curve;
    WellPosedness verdict = WellPosedness::inconclusive;
    /// Per direction; a single entry for Tykhonov reports.
    std::vector<WellPosedness> direction_verdicts;
    double tol_abs = 1e-3;
    double decay_ratio = 0.1;
    double threshold = 0.0;
    double lattice_spacing = 0.0;
    std::size_t grid_resolution = 0;
    /// Tykhonov only: lattice infimum and its lowest-index minimizer.
    double infimum = 0.0;
    std::optional<Vector> argmin;

    std::vector<double> curve(std::size_t direction_index) const;
};

struct WellPosednessOptions {
    double tol_abs = 1e-3;
    double decay_ratio = 0.1;
};

/// 2^0, 2^-1, ..., 2^-steps.
std::vector<double> geometric_schedule(int steps);
/// Default level offsets / alpha values: 2^0 .. 2^-20.
std::vector<double> default_schedule();

/// Furi-Vignoli test. Levels are (lattice inf) + eps_k; extra points (for
/// instance an off-lattice reference point) join the lattice.
WellPosednessReport tykhonov_diagnostic(const ScalarProblem& sp, const std::vector<double>& eps_schedule,
                                        std::size_t grid_resolution, const WellPosednessOptions& opt = {},
                                        std::span<const Vector> extra_points = {});

/// k0 plus 0.9 * s + 0.1 * c for each extreme generator c, where s is the
/// normalized generator sum; deduplicated.
std::vector<Vector> default_dh_directions(const OrderingCone& cone);

/// Diameters of L^C(f(xbar) + alpha c) on the lattice (xbar included).
/// Directions must be interior to C.
WellPosednessReport dh_diagnostic(const VectorProblem& p, const Vector& xbar, const std::vector<Vector>& directions,
                                  const std::vector<double>& alpha_schedule, std::size_t grid_resolution,
                                  const WellPosednessOptions& opt = {});

WellPosednessReport dh_via_scalarization(const VectorProblem& p, const Vector& xbar, const std::vector<double>& eps_schedule,
                                         std::size_t grid_resolution, const WellPosednessOptions& opt = {});

struct LinearSufficiency {
    bool sufficient = false;
    WellPosednessReport scalar_report;
    WellPosednessReport dh_report;
    /// sufficient implies DH evidence.
    bool implication_holds = true;
};

LinearSufficiency dh_sufficient_linear(const VectorProblem& p, const Vector& xbar, const Vector& xi,
                                       const std::vector<double>& eps_schedule, std::size_t grid_resolution,
                                       const WellPosednessOptions& opt = {});

}  // namespace vecwp
