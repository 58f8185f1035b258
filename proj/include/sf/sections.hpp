#pragma once

#include "sf/surface.hpp"

#include <functional>
#include <map>

namespace sf {

enum class SheafTag { R, A1, Lambda1, Lambda2 };

SheafTag sheaf_from_string(const std::string& s);
std::string sheaf_name(SheafTag t);

// Finite-dimensional space of sections over an open star.  Function-valued
// sheaves (R, A1, Lambda1) use value vectors over the closed star's vertices;
// Lambda2 uses one coefficient per star triangle, relative to the stored
// (oriented) vertex frame of that triangle.  Lambda1 representatives are
// normalized to vanish at the smallest star vertex.
struct SectionSpace {
    std::vector<int> simplex;
    SheafTag tag = SheafTag::R;
    std::vector<int> sites;   // vertex ids or triangle indices
    RatMat basis;             // rows are sections
    size_t dim() const { return basis.size(); }
};

/*
 * A surface (or modified surface) with its per-vertex-star section spaces.
 * Spaces over edge and triangle stars are generated by restriction from the
 * incident vertex stars; restrictions are value projections, so functoriality
 * is automatic and every restriction lands where it should.
 */
class SheafModel {
public:
    Complex2 cx;
    std::map<int, RatMat> a1_vertex;   // rows over star_verts({v})
    std::map<int, RatMat> l2_vertex;   // rows over star_tris({v})

    SectionSpace space(const std::vector<int>& simplex, SheafTag tag) const;

    // coordinates-in-target of each source basis row restricted to `to`;
    // returned matrix maps source coordinates to target coordinates.
    RatMat restriction(const SectionSpace& from, const SectionSpace& to) const;

    // raw value restriction of one section (site projection + Lambda1
    // renormalization)
    RatVec restrict_values(const SectionSpace& from, const RatVec& row,
                           const std::vector<int>& to_simplex) const;

private:
    mutable std::map<std::pair<std::vector<int>, SheafTag>, SectionSpace> cache_;
};

// Sheaf model of a plain affine surface: A1 over a regular vertex star is
// spanned by {1, x, y} in the star chart; over a marked star by constants and
// the monodromy-invariant linear functions.
SheafModel build_sheaf_model(const AffineSurface& s);

// Cover refinement: the same sheaf computed over the stars of the midpoint
// subdivision; sections over fine stars are restrictions from the carriers.
SheafModel refine_sheaf_model(const SheafModel& coarse);

// Dimension of the space of (2,0)-superform germs at the vertex star: 1 when
// the star's parallel covectors span the plane, 0 otherwise (the obstruction
// at shear singularities).
int germ20_dim(const SheafModel& m, int v);

} // namespace sf
