#pragma once

#include "sf/superform.hpp"

namespace sf {

// Homotopy operator K for d'': d''(K a) + K(d'' a) = a on (p,q), q >= 1,
// polynomial coefficients, star-shaped at the origin.  Exact on polynomials
// via radial integration with exponent bookkeeping.
Superform d2_homotopy(const Superform& a, const OperatorConvention& cv = {});

} // namespace sf
