#pragma once

#include "sf/matrix.hpp"
#include "sf/superform.hpp"

namespace sf {

// Coefficient of the positively ordered top basis
// d'x_1 ^ d''x_1 ^ ... ^ d'x_n ^ d''x_n of an (n,n)-form.
Polynomial top_coefficient(const Superform& a);

// Exact integral of a polynomial over a rational simplex given by n+1
// vertices; `orientation` multiplies the (absolute) volume element.
Rat integrate_poly_simplex(const Polynomial& g, const std::vector<RatVec>& verts,
                           int orientation = 1);

Rat integrate_poly_box(const Polynomial& g, const RatVec& lo, const RatVec& hi);

// 2D polygon, vertices in order (ccw positive); fan triangulation with signed
// volumes, so non-convex polygons work.
Rat integrate_poly_polygon(const Polynomial& g, const std::vector<RatVec>& pts);

// (n,n)-superform versions: integrate the positive-basis coefficient.
Rat integrate_simplex(const Superform& a, const std::vector<RatVec>& verts,
                      int orientation = 1);
Rat integrate_box(const Superform& a, const RatVec& lo, const RatVec& hi);
Rat integrate_polygon(const Superform& a, const std::vector<RatVec>& pts);

} // namespace sf
