#pragma once

#include "sf/matrix.hpp"
#include "sf/surface.hpp"

#include <optional>

namespace sf {

/*
 * Local model of the shear singularity at the origin of R^2 with monodromy
 * [[1,1],[0,1]]:
 *   W+ = {x > 0, y >= 0},  W- = {x > 0, y <= 0},  R = W+ /\ W-.
 * Sections of A^1 near R are piecewise affine f, affine on W+ and W-, whose
 * straightened version
 *   f'(x,y) = f(x+y, y) on W+,  f(x,y) on W-
 * is affine.  Near the puncture one adds the back region x < 0 and continuity
 * around the vertex.
 */
struct AffinePiece {
    // f = c + gx*x + gy*y
    Rat c, gx, gy;
    Rat eval(const Rat& x, const Rat& y) const { return c + gx * x + gy * y; }
};

struct PullbackResult {
    AffinePiece on_plus;    // f'(x,y) on W+
    AffinePiece on_minus;   // f'(x,y) on W-
    bool joint_affine;      // the two pieces agree as one affine function
    bool continuous_on_ray;
};

// f given by pieces on W+ and W-.  Computes f' and reports whether it is
// affine (the section condition of the local model).
PullbackResult pullback_shear(const AffinePiece& f_plus, const AffinePiece& f_minus);

// Dimension of the A^1 sections over a W+/W- neighbourhood of the open ray
// (gluing-constraint solve): expected 3.
int shear_ray_section_dim();

// Dimension of the A^1 sections over the punctured disk around the origin
// (three regions W+, back, W-, continuity across the cuts x = 0 and the
// shear condition at R): the direct linear-system oracle.  Expected 2.
int shear_disk_section_dim();

// Same dimension computed the independent way: 1 + dim ker(M^T - id).
int shear_disk_section_dim_via_monodromy(const IntMat2& m);

// Basis of the punctured-disk sections as (c, gx, gy) on the W- wedge.
std::vector<AffinePiece> shear_disk_section_basis();

} // namespace sf
