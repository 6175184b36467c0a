#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vecwp/lattice.hpp"
#include "vecwp/linalg.hpp"
#include "vecwp/problem.hpp"

namespace vecwp {

enum class StructuralProperty { c_convex, star_quasiconvex, c_bounded_below };
enum class Evidence { holds, counterexample, inconclusive };

std::string_view to_string(StructuralProperty p);
std::string_view to_string(Evidence e);

/// A violating triple: f(t x + (1-t) z) against t f(x) + (1-t) f(z), or
/// against max(<xi, f(x)>, <xi, f(z)>) when xi is set.
struct TripleWitness {
    Vector x;
    Vector z;
    double t = 0.5;
    std::optional<Vector> xi;
    double violation = 0.0;
};

/// Running lattice minima of <xi, f> over expanding boxes.
struct DivergenceTrace {
    Vector xi;
    std::vector<double> factors;
    std::vector<double> minima;
    std::vector<Vector> argmins;
};

struct StructuralVerdict {
    StructuralProperty property = StructuralProperty::c_convex;
    Evidence verdict = Evidence::inconclusive;
    std::optional<TripleWitness> witness;
    std::optional<DivergenceTrace> trace;
    std::size_t samples_used = 0;
    /// C-convexity only: membership sampling and dual-generator second
    /// differences gave the same verdict.
    bool routes_agree = true;
};

struct ConvexityOptions {
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    /// Relative tolerance, scaled by 1 + |values involved|.
    double tol = 1e-9;
};

StructuralVerdict is_c_convex(const VectorProblem& p, const ConvexityOptions& opt = {});

/// Re-evaluates a C-convexity witness; true if it still violates by more than tol.
bool recheck_c_convex_witness(const VectorProblem& p, const TripleWitness& w, double tol = 1e-9);

struct QuasiconvexityOptions {
    std::size_t dual_samples = 16;
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    double tol = 1e-9;
};

StructuralVerdict is_star_quasiconvex(const VectorProblem& p, const QuasiconvexityOptions& opt = {});

bool recheck_star_quasiconvex_witness(const VectorProblem& p, const TripleWitness& w, double tol = 1e-9);

struct BoundednessOptions {
    /// Expansion factors T applied to the domain box about its center.
    std::vector<double> box_schedule{1.0, 2.0, 4.0, 8.0};
    /// Lattice budget per box; the per-axis resolution is the largest odd
    /// count whose d-th power stays within it.
    std::size_t lattice_budget = 20001;
    double stabilization_tol = 1e-6;
    /// Minimum decrease per expansion, over the last two, that counts as divergence.
    double divergence_slope = 1.0;
};

StructuralVerdict is_c_bounded_below(const VectorProblem& p, const Vector& xi, const BoundednessOptions& opt = {});

struct BoundingSearchOptions {
    std::size_t candidates = 16;
    std::uint64_t seed = 0;
    BoundednessOptions boundedness;
};

/// Base vertices first, then the barycenter of the base, then random points
/// of the base; the first xi with stabilizing minima is returned.
std::optional<Vector> find_bounding_functional(const VectorProblem& p, const BoundingSearchOptions& opt = {});

/// Second player's set for sion_gap: a box, or the probability simplex.
struct PlayerSet {
    enum class Kind { box, simplex };
    Kind kind = Kind::box;
    Vector lower;
    Vector upper;

    static PlayerSet make_box(Vector lower, Vector upper);
    static PlayerSet make_simplex(std::size_t dim);
    std::size_t dim() const;
};

struct SionOptions {
    /// Denominator of the simplex lattice for z (and w when W is a simplex).
    std::size_t simplex_denominator = 0;
    /// Nodes per axis of the box lattice for w.
    std::size_t box_resolution = 0;
};

struct SionResult {
    double sup_inf = 0.0;
    double inf_sup = 0.0;
    /// Exact game value by linear programming; both lattice values bracket it.
    double lp_value = 0.0;
    double lattice_error = 0.0;
    Vector z_star;
    Vector w_star;
};

/// g(z, w) = z^T A w, z in the probability simplex, w in W.
/// sup_inf is the lattice estimate of sup_z inf_w g, inf_sup of inf_w sup_z g.
SionResult sion_gap(const Matrix& a, const PlayerSet& w, const SionOptions& opt = {});

}  // namespace vecwp
