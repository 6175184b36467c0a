#pragma once

#include <vector>

#include "vecwp/linalg.hpp"

namespace vecwp {

enum class Sense { le, eq, ge };

struct LpRow {
    Vector a;
    Sense sense = Sense::le;
    double b = 0.0;
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double value = 0.0;
    Vector x;
};

/// Dense two-phase simplex for min c.x subject to the rows and x >= 0.
/// Bland's rule throughout, so it cannot cycle. Meant for small games.
LpResult minimize(const Vector& c, const std::vector<LpRow>& rows);

}  // namespace vecwp
