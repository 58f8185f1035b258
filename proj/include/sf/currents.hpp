#pragma once

#include "sf/matrix.hpp"
#include "sf/polynomial.hpp"
#include "sf/superform.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace sf {

// Constant-coefficient (1,1)-form on a 2d chart: sum G_ij d'x_i ^ d''x_j.
struct ConstForm11 {
    RatMat g = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
};

bool is_symmetric(const ConstForm11& f);
// exact PSD test on the symmetric part's minors
bool is_positive11(const ConstForm11& f);

// congruence transport under a chart change with linear part L (covectors pull
// back): G -> L^{-T} G L^{-1}
ConstForm11 transport_form(const ConstForm11& f, const RatMat& lin);

// Piecewise-linear function on a triangulated chart region.
struct PLChartFunction {
    std::vector<std::array<Rat, 2>> pts;
    std::vector<std::array<int, 3>> tris;
    std::vector<Rat> values;

    std::array<Rat, 2> gradient(size_t tri) const;
    Rat value_at(const std::array<Rat, 2>& p) const;   // linear search over cells
};

// One weighted bending edge with rank-one density nu (x) nu; pairing uses the
// primitive tangent tau = rot90(nu).
struct CurrentEdge {
    std::array<Rat, 2> p, q;     // q = p + len * tau
    std::array<long, 2> tau;     // primitive integer tangent
    std::array<long, 2> nu;      // rot90(tau), oriented toward the + side
    Rat len;
    Rat weight;
};

struct CornerCurrent {
    std::vector<CurrentEdge> edges;
};

// d'd'' of a continuous PL potential: edge-supported representation.  Throws
// on discontinuous input (gradient jumps with a tangential component).
CornerCurrent corner_current(const PLChartFunction& f);

// (1,1)-test form on the chart with polynomial coefficients H[i][j] (n = 2).
struct TestForm11 {
    std::array<std::array<Polynomial, 2>, 2> h;
    static TestForm11 zero();
    Superform as_superform() const;
    static TestForm11 from_superform(const Superform& a);
};

// pairing <T, eta> = sum_E w_E int_0^len tau^T H(p + t tau) tau dt
Rat pair_current(const CornerCurrent& t, const TestForm11& eta);

// integration-by-parts oracle: <d'd''f, eta> = sum_cells int f * density(d'd''eta)
Rat pair_oracle(const PLChartFunction& f, const TestForm11& eta);

// d'' gamma for gamma = g1 d'x_1 + g2 d'x_2
TestForm11 d2_of_oneform(const Polynomial& g1, const Polynomial& g2);

struct ClosednessReport {
    bool combinatorial = false;   // vertex balancing at interior vertices
    bool oracle = false;          // <T, d''gamma> = 0 on the seeded family
    bool agree = false;
};

// interior_verts: positions at which balancing must hold (support vertices
// away from the region boundary)
ClosednessReport is_d2_closed(const CornerCurrent& t,
                              const std::vector<std::array<Rat, 2>>& interior_verts,
                              uint64_t seed, int trials);

bool balanced_at(const CornerCurrent& t, const std::array<Rat, 2>& v);

// pi_* for the fin collapse (x,y) -> (0,y); edges with collapsed tangents are
// dropped, others transported with the lattice-stretch factor.
CornerCurrent pushforward_collapse(const CornerCurrent& t);

std::array<long, 2> primitive_direction(const std::array<Rat, 2>& d, Rat& len);

} // namespace sf
