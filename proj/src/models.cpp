#include "sf/models.hpp"

namespace sf {

namespace {

std::array<Rat, 2> P(long x, long y) { return {Rat(x), Rat(y)}; }

void add_chart(AffineSurface& s, int v, std::initializer_list<std::pair<int, std::array<Rat, 2>>> pts) {
    for (const auto& [u, p] : pts) s.charts[v][u] = p;
}

AffineSurface octahedron_base() {
    AffineSurface s;
    s.cx.verts = {0, 1, 2, 3, 4, 5};
    s.cx.tris = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                 {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
    s.cx.finalize();
    return s;
}

} // namespace

AffineSurface octahedron_model() {
    AffineSurface s = octahedron_base();
    add_chart(s, 0, {{0, P(0, 0)}, {1, P(1, 0)}, {2, P(0, 1)}, {3, P(-1, 0)}, {4, P(0, -1)}});
    add_chart(s, 5, {{5, P(0, 0)}, {1, P(1, 0)}, {4, P(0, 1)}, {3, P(-1, 0)}, {2, P(0, -1)}});
    add_chart(s, 1, {{1, P(0, 0)}, {2, P(1, 0)}, {0, P(0, 1)}, {4, P(-1, 0)}, {5, P(0, -1)}});
    add_chart(s, 2, {{2, P(0, 0)}, {0, P(1, 0)}, {1, P(0, 1)}, {5, P(-1, 0)}, {3, P(0, -1)}});
    add_chart(s, 3, {{3, P(0, 0)}, {0, P(1, 0)}, {2, P(0, 1)}, {5, P(-1, 0)}, {4, P(0, -1)}});
    add_chart(s, 4, {{4, P(0, 0)}, {0, P(1, 0)}, {3, P(0, 1)}, {5, P(-1, 0)}, {1, P(0, -1)}});
    return s;
}

AffineSurface shear_sphere_model() {
    AffineSurface s = octahedron_base();
    // north star carries the cut development of the shear; the third link
    // vertex sits at (-1,1) so the flanks of the glued edge (0,2) are
    // collinear with its midpoint
    add_chart(s, 0, {{0, P(0, 0)}, {1, P(1, 0)}, {2, P(0, 1)}, {3, P(-1, 1)}, {4, P(0, -1)}});
    add_chart(s, 5, {{5, P(0, 0)}, {1, P(1, 0)}, {4, P(0, 1)}, {3, P(-1, 0)}, {2, P(0, -1)}});
    // equator stars solved so that every shared triangle has an area-one
    // frame in both charts
    add_chart(s, 1, {{1, P(0, 0)}, {2, P(1, 0)}, {0, P(0, 1)}, {4, P(-1, -2)}, {5, P(0, -1)}});
    add_chart(s, 2, {{2, P(0, 0)}, {1, P(1, 1)}, {0, P(0, -1)}, {3, P(-1, 1)}, {5, P(0, 1)}});
    add_chart(s, 3, {{3, P(0, 0)}, {2, P(1, -1)}, {0, P(-1, 0)}, {4, P(1, 1)}, {5, P(1, 0)}});
    add_chart(s, 4, {{4, P(0, 0)}, {3, P(-1, -1)}, {0, P(0, 1)}, {1, P(1, -1)}, {5, P(0, -1)}});
    ShearMark mk;
    mk.ray_edge = {0, 1};
    mk.monodromy = {{{1, 1}, {0, 1}}};
    s.marks[0].push_back(mk);
    return s;
}

TwistData shear_sphere_twist() {
    TwistData t;
    t.offsets[0] = {Rat(0), Rat(-2), Rat(0)};   // crossing the cut adds -2x
    return t;
}

} // namespace sf
