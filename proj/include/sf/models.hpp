#pragma once

#include "sf/kahler.hpp"
#include "sf/surface.hpp"

namespace sf {

// Unmarked octahedron sphere with compass-fan charts.
AffineSurface octahedron_model();

// Octahedron-combinatorics sphere with one shear vertex: monodromy
// [[1,1],[0,1]] at the north pole, cut along the (0,1) edge; every pairwise
// triangle transition is integral with determinant one.
AffineSurface shear_sphere_model();

// The torsor cocycle shipped with the shear sphere.
TwistData shear_sphere_twist();

} // namespace sf
