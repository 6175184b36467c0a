#pragma once

#include <cstddef>

#include "vecwp/linalg.hpp"

namespace vecwp {

struct NnlsResult {
    Vector x;
    std::size_t iterations = 0;
};

/// Lawson-Hanson active set solver for min ||A x - b|| subject to x >= 0.
/// Throws NumericalFailure if the iteration cap is hit.
NnlsResult nnls(const Matrix& a, const Vector& b, std::size_t max_iterations = 0);

}  // namespace vecwp
