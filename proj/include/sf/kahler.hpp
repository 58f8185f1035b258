#pragma once

#include "sf/currents.hpp"
#include "sf/modification.hpp"
#include "sf/surface.hpp"

#include <map>
#include <optional>
#include <string>

namespace sf {

// Subdivision vertex named by exact barycentric weights over original
// vertices (midpoint refinement keeps them dyadic).
struct SubVert {
    std::map<int, Rat> w;
    bool operator<(const SubVert& o) const { return w < o.w; }
    bool operator==(const SubVert& o) const { return w == o.w; }
    static SubVert corner(int v);
    static SubVert mid(const SubVert& a, const SubVert& b);
    std::string str() const;
    static SubVert parse(const std::string& s);
    std::array<Rat, 2> position(const std::map<int, std::array<Rat, 2>>& chart) const;
};

struct SubCell {
    std::array<SubVert, 3> v;
    int parent;   // original triangle index
};

struct Subdivision {
    std::vector<SubCell> cells;
    std::vector<SubVert> verts;   // sorted unique
    size_t index_of(const SubVert& v) const;
};

Subdivision subdivide_surface(const AffineSurface& s, int level);

// Per-triangle reference form psi in the triangle's designated chart (the
// smallest vertex); identity matrices, PSD-consistent across transitions.
std::map<int, ConstForm11> reference_form(const AffineSurface& s);

// Affine torsor offset per marked vertex, in that vertex's chart coordinates:
// crossing the cut counterclockwise adds c + dx*x + dy*y.
struct TwistData {
    std::map<int, std::array<Rat, 3>> offsets;
    std::string to_json() const;
    static TwistData from_json(const std::string& text);
};

struct KahlerOptions {
    int level = 1;
    Rat epsilon = Rat(1, 100);
    TwistData twist;
};

struct CertEdge {
    SubVert a, b;
    int chart;       // chart the bending was computed in
    Rat lambda;      // bending weight
    Rat mass;        // psi mass attributed to the edge
};

struct KahlerCertificate {
    uint64_t model_hash = 0;
    int level = 1;
    Rat epsilon;
    TwistData twist;
    std::map<SubVert, Rat> values;
    std::vector<CertEdge> edges;

    std::string to_json() const;
    static KahlerCertificate from_json(const std::string& text);
};

struct KahlerOutcome {
    bool feasible = false;
    std::optional<KahlerCertificate> cert;
    std::string note;
};

// LP over subdivision-vertex values: every interior-edge bending weight of
// the induced current >= epsilon * (psi mass of the edge), with the torsor
// offsets applied across the marked cuts.
KahlerOutcome kahler_feasibility(const AffineSurface& s, const KahlerOptions& opt);

struct VerifyResult {
    bool accept = false;
    std::vector<std::string> reasons;
};

// Independent re-derivation of the edge weights, the psi bound, and the
// vertex balancing (invariant-covector balance at marked vertices).
VerifyResult verify_certificate(const AffineSurface& s, const KahlerCertificate& cert);

// The certificate current as chart-tagged corner-current edges (for reports
// and the pushforward round trip).
CornerCurrent certificate_current(const AffineSurface& s, const KahlerCertificate& cert,
                                  std::vector<int>* edge_charts = nullptr);

// Lift of the certified current to the modification: the sphere part is
// unchanged and each fin carries the bends of the edge restriction of the
// potential, constant along the collapse fibers.
struct LiftedCurrent {
    CornerCurrent sphere;                      // identical to the base current
    std::map<int, CornerCurrent> fin;          // per fin vertex e, in the e chart
};

LiftedCurrent lift_certificate_current(const ModifiedSurface& M,
                                       const KahlerCertificate& cert);

// pi_* of a lifted current: fiber-parallel fin edges collapse, the rest land
// on the glued edge; the sphere part is untouched.
CornerCurrent pushforward_lifted(const LiftedCurrent& t);

} // namespace sf
