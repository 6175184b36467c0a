#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vecwp/cone.hpp"
#include "vecwp/lattice.hpp"
#include "vecwp/linalg.hpp"

namespace vecwp {

using VectorMap = std::function<Vector(const Vector&)>;
using ScalarMap = std::function<double(const Vector&)>;

/// min f(x) over a box, f: R^d -> R^m ordered by a cone.
///
/// The evaluator must be pure: the same x always gives the same output.
class VectorProblem {
public:
    VectorProblem(std::string label, Box domain, std::shared_ptr<const OrderingCone> cone,
                  std::size_t objective_dim, VectorMap evaluator);

    const std::string& label() const { return label_; }
    std::size_t decision_dim() const { return domain_.dim(); }
    std::size_t objective_dim() const { return objective_dim_; }
    const Box& domain() const { return domain_; }
    const OrderingCone& cone() const { return *cone_; }
    const std::shared_ptr<const OrderingCone>& cone_ptr() const { return cone_; }
    const VectorMap& evaluator() const { return evaluator_; }

    /// Assumption flags carried with the problem; neither is tested numerically.
    bool continuous() const { return continuous_; }
    bool c_lsc() const { return c_lsc_; }
    VectorProblem& set_continuous(bool v) { continuous_ = v; return *this; }
    VectorProblem& set_c_lsc(bool v) { c_lsc_ = v; return *this; }
    VectorProblem& set_label(std::string label) { label_ = std::move(label); return *this; }

    Vector operator()(const Vector& x) const;

private:
    std::string label_;
    Box domain_;
    std::shared_ptr<const OrderingCone> cone_;
    std::size_t objective_dim_;
    VectorMap evaluator_;
    bool continuous_ = true;
    bool c_lsc_ = true;
};

class ScalarProblem {
public:
    ScalarProblem(std::string label, Box domain, ScalarMap evaluator);

    const std::string& label() const { return label_; }
    std::size_t decision_dim() const { return domain_.dim(); }
    const Box& domain() const { return domain_; }
    double operator()(const Vector& x) const { return evaluator_(x); }

private:
    std::string label_;
    Box domain_;
    ScalarMap evaluator_;
};

/// a * ||x - center||^exponent * direction, added to an objective.
struct PerturbationTerm {
    Vector center;
    double coefficient = 1.0;
    double exponent = 1.0;
    Vector direction;
};

VectorProblem perturb(const VectorProblem& p, const PerturbationTerm& term);

/// x -> <xi, f(x)>, xi in C* \ {0}.
ScalarProblem scalarize_linear(const VectorProblem& p, const Vector& xi);

/// x -> D_{-C}(f(x) - f(xbar)).
ScalarProblem scalarize_oriented(const VectorProblem& p, const Vector& xbar);

struct PointSet {
    std::vector<Vector> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Lattice nodes x with y - f(x) in C.
PointSet level_set(const VectorProblem& p, const Vector& y, std::size_t grid_resolution);

/// Largest pairwise Euclidean distance, 0 for fewer than two points.
double diameter(const PointSet& s);
double diameter(const std::vector<Vector>& points);

/// Objective values on every lattice node, one column per node, and the
/// same values paired with each dual generator of the cone (row per generator).
struct LatticeImage {
    Lattice lattice;
    Matrix values;
    Matrix dual_values;
};

LatticeImage evaluate_on_lattice(const VectorProblem& p, std::size_t grid_resolution);

struct MetricParams {
    /// Ball center theta; the box center when unset. Must lie in the domain.
    std::optional<Vector> anchor;
    std::size_t truncation = 20;
    std::size_t samples_per_ball = 4096;
    std::uint64_t seed = 0;
    double overflow_cap = 1e12;
};

struct MetricEstimate {
    double value = 0.0;
    /// Series tail beyond the truncation, 2^-I.
    double tail_bound = 0.0;
    /// Estimated sup ||f - g|| over each ball intersected with the box.
    std::vector<double> ball_norms;
    /// A ball norm overflowed the cap; value is then 1.
    bool saturated = false;
    Vector anchor;
};

/// d(f, g) = sum_i 2^-i n_i / (1 + n_i), n_i = sup ||f - g|| over
/// {||x - theta|| <= i} intersected with the domain box, estimated on
/// deterministic extreme points plus seeded random samples.
MetricEstimate function_distance(const VectorProblem& p, const VectorProblem& q, const MetricParams& params = {});

}  // namespace vecwp
