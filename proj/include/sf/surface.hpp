#pragma once

#include "sf/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sf {

using IntMat2 = std::array<std::array<long, 2>, 2>;

IntMat2 imat_mul(const IntMat2& a, const IntMat2& b);
bool imat_unipotent(const IntMat2& m);
IntMat2 imat_identity();

// Shear singularity data attached to a vertex: the ray edge anchoring the cut
// and the monodromy matrix picked up when crossing it counterclockwise.
struct ShearMark {
    std::array<int, 2> ray_edge;   // {vertex, link vertex}
    IntMat2 monodromy;
};

// Pure combinatorial closed-or-bounded 2-complex.
struct Complex2 {
    std::vector<int> verts;                          // sorted ids
    std::vector<std::array<int, 3>> tris;            // oriented triples

    // derived
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    std::map<int, std::vector<int>> vert_tris;

    void finalize();
    static std::pair<int, int> ekey(int a, int b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    bool has_vert(int v) const;
    long euler_characteristic() const;
    // vertices of the closed star of a simplex (sorted)
    std::vector<int> star_verts(const std::vector<int>& simplex) const;
    // triangle indices of the closed star
    std::vector<int> star_tris(const std::vector<int>& simplex) const;
    std::vector<std::vector<int>> simplices(int dim) const;   // sorted lists
};

struct Diagnostics {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    long euler = 0;
    int transition_checked = 0;
    int transition_integral = 0;
    int overlap_checked = 0;
    int overlap_consistent = 0;
    std::map<int, bool> monodromy_unipotent;
    std::map<int, bool> monodromy_primitive;
};

struct AffineSurface {
    Complex2 cx;
    std::map<int, std::map<int, std::array<Rat, 2>>> charts;  // vertex star charts
    std::map<int, std::vector<ShearMark>> marks;
    bool declared_sphere = true;

    bool is_marked(int v) const { return marks.count(v) && !marks.at(v).empty(); }
    const std::array<Rat, 2>& chart_pos(int chart, int v) const;
    bool chart_has(int chart, int v) const;

    // ccw cycle of link vertices around v, starting at the mark's ray vertex
    // when v is marked.
    std::vector<int> link_cycle(int v) const;

    std::string to_json() const;
    static AffineSurface from_json(const std::string& text);
    uint64_t content_hash() const;
};

Diagnostics validate(const AffineSurface& s);

// Product of declared shear matrices crossed along the ccw link walk.
IntMat2 monodromy(const AffineSurface& s, int v);

// Is the (unipotent) matrix primitive in SL2(Z), i.e. not a proper power of
// another unipotent?
bool unipotent_primitive(const IntMat2& m);

// Invariant covectors of the monodromy: basis of ker(M^T - id) acting on row
// vectors.
std::vector<std::array<Rat, 2>> invariant_covectors(const IntMat2& m);

// One round of global midpoint refinement, with carriers tracked so section
// spaces of the refined star cover are restrictions from the coarse one.
struct Refinement {
    Complex2 fine;
    std::map<int, std::vector<int>> vert_carrier;   // fine vertex -> 1-2 coarse verts
    std::vector<int> tri_parent;                    // fine tri -> coarse tri index
    std::map<int, std::pair<int, int>> midpoint_of; // fine new vert -> coarse edge
};

Refinement refine_midpoint(const Complex2& cx);

} // namespace sf
