#pragma once

#include "sf/sections.hpp"

#include <array>

namespace sf {

/*
 * Cech complex over the cover by open vertex stars.  Intersections of stars
 * are stars of the spanning simplices, so k-cochains are products of section
 * spaces over k-simplices and the differential is assembled from the
 * restriction maps with the usual alternating signs (vertices carry a fixed
 * total order).
 */
struct CechComplex {
    SheafTag tag = SheafTag::R;
    std::vector<std::vector<std::vector<int>>> simplices;  // [k][i]
    std::vector<std::vector<SectionSpace>> spaces;         // [k][i]
    std::vector<std::vector<size_t>> offsets;              // [k][i] block start
    std::vector<size_t> dims;                              // dim C^k, k = 0,1,2
    std::vector<RatMat> delta;                             // delta[k]: C^k -> C^{k+1}
};

CechComplex build_cech(const SheafModel& m, SheafTag tag);

std::array<size_t, 3> cohomology_ranks(const CechComplex& c);

// basis of H^k as cocycle representatives (coordinate vectors in C^k)
std::vector<RatVec> cohomology_basis(const CechComplex& c, int k);

// rank of the map induced on H^k by a sheaf map F -> G given blockwise on
// every simplex
struct SheafMapBlocks {
    // per degree k, per simplex i: matrix taking F-coordinates to
    // G-coordinates over the same star
    std::vector<std::vector<RatMat>> blocks;
};

SheafMapBlocks map_R_to_A1(const SheafModel& m, const CechComplex& cr, const CechComplex& ca);
SheafMapBlocks map_A1_to_Lambda1(const SheafModel& m, const CechComplex& ca,
                                 const CechComplex& cl);

size_t induced_rank(const CechComplex& src, const CechComplex& dst,
                    const SheafMapBlocks& f, int k);

struct LESReport {
    bool star_exactness = true;              // dim A1 = dim R + dim Lambda1 per star
    std::array<size_t, 3> h_R{}, h_A1{}, h_L1{};
    std::array<size_t, 3> rank_RA{}, rank_AL{};   // induced map ranks per degree
    bool composite_zero = true;              // rank of (A1->L1) o (R->A1) on H is 0
    bool exact_at_A1 = true;                 // h_A1[q] = rank_RA[q] + rank_AL[q]
    bool connecting_consistent = true;       // two derivations of rank(delta_q) agree
    long alternating_sum = 0;                // of all nine ranks with LES signs
    std::array<long, 3> delta_rank{};        // inferred connecting ranks
    bool a1_to_l1_injective_on_h1 = false;
    std::vector<std::string> notes;
};

LESReport les_check(const SheafModel& m);

struct SerrePairing {
    bool defined = false;        // H^2(Lambda2) is one-dimensional
    size_t h2_lambda2 = 0;
    RatMat gram;                 // pairing matrix on chosen bases
    bool nondegenerate = false;
    std::string note;
};

// Cup-product pairing H^q(Lambda^p) x H^{2-q}(Lambda^{2-p}) -> H^2(Lambda2)
// followed by the orientation-normalized trace; p,q in {0,1} here.
SerrePairing serre_pairing(const SheafModel& m, int p, int q);

// trace functional on C^2(Lambda2) vanishing on coboundaries (empty if
// h^2 != 1)
RatVec serre_trace_functional(const CechComplex& l2, bool& ok);

} // namespace sf
