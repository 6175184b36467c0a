#pragma once

#include <string>

#include "vecwp/problem.hpp"

namespace vecwp {

/// Problem file (JSON):
///
///   {
///     "label": "my-problem",
///     "decision_dim": 1,
///     "objective_dim": 2,
///     "domain": {"lower": [-3], "upper": [3]},
///     "cone": {"generators": [[1, 0], [0, 1]], "k0": [1, 1]},
///     "objectives": ["x", "x^2"],
///     "continuous": true,
///     "c_lsc": true
///   }
///
/// "cone" may be omitted for the nonnegative orthant; "k0", "dual_generators",
/// "continuous" and "c_lsc" are optional. Objectives use the Expression grammar.
VectorProblem problem_from_json_text(const std::string& text);
VectorProblem load_problem_file(const std::string& path);

}  // namespace vecwp
