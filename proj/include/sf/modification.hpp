#pragma once

#include "sf/sections.hpp"
#include "sf/surface.hpp"

namespace sf {

// The fixed fan used as the chart at interior points of the glued edge:
// rays e1..e5, six 2-cones spanned by the listed pairs.
struct MatroidalFanChart {
    std::array<std::array<long, 3>, 5> rays = {{{1, 0, 0},
                                                {0, 1, 0},
                                                {-1, -1, 0},
                                                {0, 0, 1},
                                                {0, 0, -1}}};
    std::array<std::array<int, 2>, 6> cones = {{{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}};

    // balancing as vector identities: e1+e2+e3 = 0 and e4+e5 = 0
    bool balanced() const;
};

// One glued simplex: base edge (i,j) subdivided at m, apex e.
struct Fin {
    int i, j, m, e;
    int a, b;          // flanking vertices of the base edge
    Rat kappa;         // scale of b's ray: (b - m) = -kappa (a - m) in i's chart
};

struct ModifiedSurface {
    AffineSurface base;        // original surface
    AffineSurface base_sub;    // base with glued edges subdivided at the m's
    Complex2 cx;               // the modified complex (base_sub + fins)
    std::vector<Fin> fins;
    bool constants_at_e = false;

    std::map<int, std::map<int, std::array<Rat, 2>>> charts2d;   // sphere + e charts
    std::map<int, std::map<int, std::array<Rat, 3>>> fan3d;      // m -> vertex -> R^3

    bool is_fin_vertex(int v) const;
    const Fin* fin_of(int v) const;   // fin whose i/j/m/e mentions v, else null
    int project_vertex(int v) const;  // e -> m, else identity

    std::string to_json() const;
    static ModifiedSurface from_json(const std::string& text);
};

// Glue one simplex per marked vertex.  The link vertex j across the
// monodromy-transverse edge must see the two flanking vertices a, b collinear
// with the midpoint m in i's chart (this is what makes the collapse map a
// morphism); the constructor throws otherwise.
ModifiedSurface build_modification(const AffineSurface& s);

// Section spaces for the modified surface: pullback stars at i and j, the
// matroidal fan at m, restrictions of glued-triangle affine functions on the
// free edges, and no sections (or constants) at e.
SheafModel build_sheaf_model(const ModifiedSurface& m);

struct MorphismReport {
    bool pass = true;
    int stars_checked = 0;
    std::vector<std::string> failures;
};

// Verifies pi^* A1_base  c  A1_modified on every star (matrix containment).
MorphismReport check_morphism(const ModifiedSurface& m);

// Negative control: replace the e3 ray by (-1,0,0) in every fan chart.
void corrupt_fan_chart(ModifiedSurface& m);

} // namespace sf
