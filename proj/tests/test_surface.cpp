#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sf/models.hpp"
#include "sf/modification.hpp"
#include "sf/sections.hpp"
#include "sf/shear_model.hpp"
#include "sf/surface.hpp"

using namespace sf;

TEST_CASE("octahedron validates as a sphere") {
    AffineSurface s = octahedron_model();
    Diagnostics d = validate(s);
    for (const auto& e : d.errors) MESSAGE(e);
    CHECK(d.valid);
    CHECK(d.euler == 2);
    CHECK(monodromy(s, 0) == imat_identity());
    CHECK(monodromy(s, 3) == imat_identity());
}

TEST_CASE("shear sphere validates; declared monodromy recovered") {
    AffineSurface s = shear_sphere_model();
    Diagnostics d = validate(s);
    for (const auto& e : d.errors) MESSAGE(e);
    CHECK(d.valid);
    CHECK(d.euler == 2);
    IntMat2 m = monodromy(s, 0);
    CHECK(m == IntMat2{{{1, 1}, {0, 1}}});
    CHECK(d.monodromy_unipotent.at(0));
    CHECK(d.monodromy_primitive.at(0));
    CHECK(unipotent_primitive(m));
    // two stacked shears multiply
    AffineSurface s2 = s;
    ShearMark mk;
    mk.ray_edge = {0, 1};
    mk.monodromy = {{{1, 1}, {0, 1}}};
    s2.marks[0].push_back(mk);
    CHECK(monodromy(s2, 0) == IntMat2{{{1, 2}, {0, 1}}});
    CHECK(!unipotent_primitive(monodromy(s2, 0)));
}

TEST_CASE("non-unipotent injected mark is rejected") {
    AffineSurface s = shear_sphere_model();
    s.marks[0][0].monodromy = {{{2, 0}, {0, 1}}};
    Diagnostics d = validate(s);
    CHECK(!d.valid);
}

TEST_CASE("json round trip") {
    AffineSurface s = shear_sphere_model();
    AffineSurface t = AffineSurface::from_json(s.to_json());
    CHECK(t.cx.verts == s.cx.verts);
    CHECK(t.cx.tris == s.cx.tris);
    CHECK(t.charts == s.charts);
    CHECK(t.marks.size() == s.marks.size());
    CHECK(t.content_hash() == s.content_hash());
}

TEST_CASE("link cycles and refinement combinatorics") {
    AffineSurface s = octahedron_model();
    auto cyc = s.link_cycle(0);
    CHECK(cyc.size() == 4);
    Refinement r = refine_midpoint(s.cx);
    CHECK(r.fine.verts.size() == 6 + 12);
    CHECK(r.fine.tris.size() == 32);
    CHECK(r.fine.euler_characteristic() == 2);
}

TEST_CASE("shear model: pullback and section dimensions two ways") {
    // f = y is a section
    PullbackResult r = pullback_shear({Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)});
    CHECK(r.joint_affine);
    // f = x on W- glued with x - y on W+
    r = pullback_shear({Rat(0), Rat(1), Rat(-1)}, {Rat(0), Rat(1), Rat(0)});
    CHECK(r.joint_affine);
    // f = x on both fails
    r = pullback_shear({Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    CHECK(r.continuous_on_ray);
    CHECK(!r.joint_affine);

    CHECK(shear_ray_section_dim() == 3);
    CHECK(shear_disk_section_dim() == 2);
    IntMat2 m = {{{1, 1}, {0, 1}}};
    CHECK(shear_disk_section_dim_via_monodromy(m) == 2);
    CHECK(shear_disk_section_dim() == shear_disk_section_dim_via_monodromy(m));
    // and the basis straightens correctly
    for (const auto& f : shear_disk_section_basis()) {
        PullbackResult pr = pullback_shear(f, f);
        CHECK(pr.joint_affine);
    }
}

TEST_CASE("section spaces on stars") {
    AffineSurface s = shear_sphere_model();
    SheafModel m = build_sheaf_model(s);

    SectionSpace a1_sing = m.space({0}, SheafTag::A1);
    CHECK(a1_sing.dim() == 2);
    SectionSpace l1_sing = m.space({0}, SheafTag::Lambda1);
    CHECK(l1_sing.dim() == 1);

    SectionSpace a1_reg = m.space({5}, SheafTag::A1);
    CHECK(a1_reg.dim() == 3);
    CHECK(m.space({5}, SheafTag::Lambda1).dim() == 2);

    CHECK(m.space({0}, SheafTag::Lambda2).dim() == 1);
    CHECK(m.space({5}, SheafTag::Lambda2).dim() == 1);
    CHECK(m.space({1, 5}, SheafTag::Lambda2).dim() >= 1);

    // restriction functoriality on a chain of stars
    SectionSpace edge = m.space({1, 5}, SheafTag::A1);
    SectionSpace tri = m.space({1, 4, 5}, SheafTag::A1);
    RatMat r1 = m.restriction(a1_reg, edge);
    RatMat r2 = m.restriction(edge, tri);
    RatMat direct = m.restriction(a1_reg, tri);
    CHECK(mat_mul(r2, r1) == direct);

    // star-level exactness everywhere
    for (int dim = 0; dim <= 2; ++dim)
        for (const auto& simplex : s.cx.simplices(dim)) {
            size_t dA = m.space(simplex, SheafTag::A1).dim();
            size_t dL = m.space(simplex, SheafTag::Lambda1).dim();
            CHECK(dA == 1 + dL);
        }

    // the (2,0)-germ obstruction at the shear vertex
    CHECK(germ20_dim(m, 0) == 0);
    CHECK(germ20_dim(m, 5) == 1);
}

TEST_CASE("modification: construction and morphism") {
    AffineSurface s = shear_sphere_model();
    ModifiedSurface M = build_modification(s);
    CHECK(M.fins.size() == 1);
    const Fin& f = M.fins[0];
    CHECK(f.i == 0);
    CHECK(f.j == 2);
    CHECK(f.kappa == Rat(1));
    // V+1 vertices and F+1 triangles before the subdivision bookkeeping:
    // after it, the two flanking triangles split and the fin has two cells
    CHECK(M.cx.verts.size() == 6 + 2);
    CHECK(M.cx.tris.size() == 8 + 2 + 2);

    MatroidalFanChart fan;
    CHECK(fan.balanced());

    SheafModel mm = build_sheaf_model(M);
    CHECK(mm.space({f.m}, SheafTag::A1).dim() == 4);
    CHECK(mm.space({f.m}, SheafTag::Lambda1).dim() == 3);
    CHECK(mm.space({f.m}, SheafTag::Lambda2).dim() == 2);
    CHECK(mm.space({f.e}, SheafTag::A1).dim() == 0);
    CHECK(mm.space({f.i}, SheafTag::A1).dim() == 2);
    CHECK(mm.space({f.j}, SheafTag::A1).dim() == 3);
    // free edge stars carry the pullback sections of the glued triangle
    std::vector<int> ie = {std::min(f.i, f.e), std::max(f.i, f.e)};
    CHECK(mm.space(ie, SheafTag::A1).dim() == 2);

    MorphismReport rep = check_morphism(M);
    for (const auto& msg : rep.failures) MESSAGE(msg);
    CHECK(rep.pass);

    // negative control: corrupt the fan chart
    ModifiedSurface bad = M;
    corrupt_fan_chart(bad);
    MorphismReport rep2 = check_morphism(bad);
    CHECK(!rep2.pass);

    // trivial case: no singular vertices -> no fins, morphism trivially holds
    ModifiedSurface M0 = build_modification(octahedron_model());
    CHECK(M0.fins.empty());
    CHECK(check_morphism(M0).pass);
}
