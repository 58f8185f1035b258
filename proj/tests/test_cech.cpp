#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sf/cech.hpp"
#include "sf/models.hpp"
#include "sf/modification.hpp"

using namespace sf;

namespace {

bool delta_squared_zero(const CechComplex& c) {
    RatMat dd = mat_mul(c.delta[1], c.delta[0]);
    for (const auto& row : dd)
        for (const Rat& x : row)
            if (x != 0) return false;
    return true;
}

} // namespace

TEST_CASE("octahedron: constant sheaf gives sphere cohomology") {
    SheafModel m = build_sheaf_model(octahedron_model());
    CechComplex c = build_cech(m, SheafTag::R);
    CHECK(c.dims[0] == 6);
    CHECK(c.dims[1] == 12);
    CHECK(c.dims[2] == 8);
    CHECK(delta_squared_zero(c));
    auto h = cohomology_ranks(c);
    CHECK(h[0] == 1);
    CHECK(h[1] == 0);
    CHECK(h[2] == 1);
}

TEST_CASE("shear sphere: R and Lambda2 ranks") {
    SheafModel m = build_sheaf_model(shear_sphere_model());
    auto hR = cohomology_ranks(build_cech(m, SheafTag::R));
    CHECK(hR == std::array<size_t, 3>{1, 0, 1});
    CechComplex l2 = build_cech(m, SheafTag::Lambda2);
    CHECK(delta_squared_zero(l2));
    auto h2 = cohomology_ranks(l2);
    CHECK(h2[0] == 1);   // the constant-sheaf behaviour of parallel 2-forms
}

TEST_CASE("delta squared vanishes for all sheaves on both models") {
    for (auto s : {octahedron_model(), shear_sphere_model()}) {
        SheafModel m = build_sheaf_model(s);
        for (auto tag : {SheafTag::R, SheafTag::A1, SheafTag::Lambda1, SheafTag::Lambda2})
            CHECK(delta_squared_zero(build_cech(m, tag)));
    }
}

TEST_CASE("les_check on the bundled models") {
    for (auto s : {octahedron_model(), shear_sphere_model()}) {
        SheafModel m = build_sheaf_model(s);
        LESReport rep = les_check(m);
        for (const auto& n : rep.notes) MESSAGE(n);
        CHECK(rep.star_exactness);
        CHECK(rep.composite_zero);
        CHECK(rep.exact_at_A1);
        CHECK(rep.connecting_consistent);
        CHECK(rep.alternating_sum == 0);
        CHECK(rep.h_R == std::array<size_t, 3>{1, 0, 1});
    }
}

TEST_CASE("refinement invariance of ranks") {
    for (auto s : {octahedron_model(), shear_sphere_model()}) {
        SheafModel m = build_sheaf_model(s);
        SheafModel fine = refine_sheaf_model(m);
        for (auto tag : {SheafTag::R, SheafTag::A1, SheafTag::Lambda1, SheafTag::Lambda2}) {
            auto h0 = cohomology_ranks(build_cech(m, tag));
            auto h1 = cohomology_ranks(build_cech(fine, tag));
            CHECK(h0 == h1);
        }
    }
}

TEST_CASE("modified surface cohomology and refinement invariance") {
    ModifiedSurface M = build_modification(shear_sphere_model());
    SheafModel m = build_sheaf_model(M);
    for (auto tag : {SheafTag::R, SheafTag::A1, SheafTag::Lambda1, SheafTag::Lambda2}) {
        CechComplex c = build_cech(m, tag);
        CHECK(delta_squared_zero(c));
        auto h = cohomology_ranks(c);
        auto hf = cohomology_ranks(build_cech(refine_sheaf_model(m), tag));
        CHECK(h == hf);
        MESSAGE(sheaf_name(tag), ": ", h[0], " ", h[1], " ", h[2]);
    }
    auto hR = cohomology_ranks(build_cech(m, SheafTag::R));
    CHECK(hR == std::array<size_t, 3>{1, 0, 1});
}

TEST_CASE("les_check on the modification with constants at the apex") {
    ModifiedSurface M = build_modification(shear_sphere_model());
    M.constants_at_e = true;
    SheafModel m = build_sheaf_model(M);
    LESReport rep = les_check(m);
    CHECK(rep.star_exactness);
    CHECK(rep.exact_at_A1);
    CHECK(rep.connecting_consistent);
    CHECK(rep.alternating_sum == 0);
    MESSAGE("A1 ranks: ", rep.h_A1[0], " ", rep.h_A1[1], " ", rep.h_A1[2]);
    MESSAGE("L1 ranks: ", rep.h_L1[0], " ", rep.h_L1[1], " ", rep.h_L1[2]);
    MESSAGE("H1(A1) -> H1(L1) injective: ", rep.a1_to_l1_injective_on_h1);
}

TEST_CASE("serre pairing on the modification") {
    ModifiedSurface M = build_modification(shear_sphere_model());
    SheafModel m = build_sheaf_model(M);

    SerrePairing p00 = serre_pairing(m, 0, 0);
    MESSAGE("h2(Lambda2) = ", p00.h2_lambda2);
    CHECK(p00.defined);
    CHECK(p00.gram.size() == 1);
    CHECK(p00.gram[0][0] != 0);

    SerrePairing p11 = serre_pairing(m, 1, 1);
    CHECK(p11.defined);
    MESSAGE("H1(Lambda1) dim = ", p11.gram.size());
    CHECK(p11.nondegenerate);
}
