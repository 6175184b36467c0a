#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecwp/diagnostics.hpp"
#include "vecwp/problem.hpp"

namespace vecwp {

/// Where an expected fact comes from: a known result about the example, a
/// closed form worked out for the entry, or an immediate observation.
enum class FactSource { reference, derived, elementary };
std::string_view to_string(FactSource s);

struct RegistryFact {
    std::string statement;
    FactSource source = FactSource::elementary;
};

struct RegistryEntry {
    std::string label;
    std::string description;
    std::size_t default_grid = 201;
    /// An efficient point used by the default DH and perturbation runs.
    Vector reference_point;
    /// Expected DH verdict at reference_point.
    WellPosedness expected_dh = WellPosedness::inconclusive;
    bool c_convex = false;
    bool c_bounded = false;
    std::vector<RegistryFact> facts;
    std::function<VectorProblem()> make;
};

/// Fixed labels; "hilbert-truncation-<d>" is accepted for any 1 <= d <= 10.
const std::vector<std::string>& registry_labels();
RegistryEntry registry_entry(const std::string& label);
VectorProblem make_problem(const std::string& label);

/// Random convex quadratic pair (x^T Q1 x + b1^T x, x^T Q2 x + b2^T x) with
/// Q1, Q2 positive definite, on [-2, 2]^d, ordered by R^2_+.
VectorProblem make_convex_quadratic_pair(std::size_t d, std::uint64_t seed);

struct AssertionResult {
    std::string name;
    FactSource source = FactSource::elementary;
    bool passed = false;
    std::string detail;
};

struct ReplicateReport {
    std::string label;
    std::vector<AssertionResult> assertions;
    bool all_passed() const;
};

/// Runs the expected-fact assertions attached to a registry entry.
ReplicateReport replicate(const std::string& label, std::uint64_t seed = 0);

}  // namespace vecwp
