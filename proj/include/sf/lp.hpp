#pragma once

#include "sf/matrix.hpp"

namespace sf {

struct LPResult {
    bool feasible = false;
    RatVec x;
};

// Exact rational feasibility for A x >= b (x free), phase-I simplex with
// Bland's rule.  Equality rows can be passed as two opposite inequalities.
LPResult lp_feasible(const RatMat& A, const RatVec& b);

} // namespace sf
