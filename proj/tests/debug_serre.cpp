#include "sf/cech.hpp"
#include "sf/models.hpp"
#include "sf/modification.hpp"

#include <iostream>
#include <random>

using namespace sf;

namespace {

Rat cup_trace_pair(const SheafModel& m, const CechComplex& cl, const CechComplex& cr,
                   const CechComplex& l2, const RatVec& trace, const RatVec& alpha,
                   const RatVec& beta, int q) {
    Rat total(0);
    for (size_t ti = 0; ti < l2.simplices[2].size(); ++ti) {
        const auto& tau = l2.simplices[2][ti];
        std::vector<int> front(tau.begin(), tau.begin() + q + 1);
        std::vector<int> back(tau.begin() + q, tau.end());
        auto fi = std::lower_bound(cl.simplices[q].begin(), cl.simplices[q].end(), front) -
                  cl.simplices[q].begin();
        auto bi = std::lower_bound(cr.simplices[2 - q].begin(), cr.simplices[2 - q].end(), back) -
                  cr.simplices[2 - q].begin();
        const SectionSpace& fs = cl.spaces[q][fi];
        const SectionSpace& bs = cr.spaces[2 - q][bi];
        RatVec aval(fs.sites.size(), Rat(0));
        for (size_t r = 0; r < fs.dim(); ++r)
            for (size_t c2 = 0; c2 < fs.sites.size(); ++c2)
                aval[c2] += alpha[cl.offsets[q][fi] + r] * fs.basis[r][c2];
        RatVec bval(bs.sites.size(), Rat(0));
        for (size_t r = 0; r < bs.dim(); ++r)
            for (size_t c2 = 0; c2 < bs.sites.size(); ++c2)
                bval[c2] += beta[cr.offsets[2 - q][bi] + r] * bs.basis[r][c2];
        const auto& tr = m.cx.tris[l2.spaces[2][ti].sites.at(0)];
        auto value_at = [&](const RatVec& vals, const std::vector<int>& sites, int vert) -> Rat {
            auto it = std::lower_bound(sites.begin(), sites.end(), vert);
            return vals[static_cast<size_t>(it - sites.begin())];
        };
        Rat a1 = value_at(aval, fs.sites, tr[1]) - value_at(aval, fs.sites, tr[0]);
        Rat a2 = value_at(aval, fs.sites, tr[2]) - value_at(aval, fs.sites, tr[0]);
        Rat b1 = value_at(bval, bs.sites, tr[1]) - value_at(bval, bs.sites, tr[0]);
        Rat b2 = value_at(bval, bs.sites, tr[2]) - value_at(bval, bs.sites, tr[0]);
        Rat coef = a1 * b2 - a2 * b1;
        const SectionSpace& l2s = l2.spaces[2][ti];
        if (l2s.dim() == 1) {
            Rat base = l2s.basis[0][0];
            if (base != 0) total += trace[l2.offsets[2][ti]] * coef / base;
        }
    }
    return total;
}

} // namespace

int main() {
    ModifiedSurface M = build_modification(shear_sphere_model());
    SheafModel m = build_sheaf_model(M);
    CechComplex l1 = build_cech(m, SheafTag::Lambda1);
    CechComplex l2 = build_cech(m, SheafTag::Lambda2);

    auto h1 = cohomology_ranks(l1);
    auto h2 = cohomology_ranks(l2);
    std::cout << "Lambda1 ranks: " << h1[0] << " " << h1[1] << " " << h1[2] << "\n";
    std::cout << "Lambda2 ranks: " << h2[0] << " " << h2[1] << " " << h2[2] << "\n";
    std::cout << "C(L1): " << l1.dims[0] << " " << l1.dims[1] << " " << l1.dims[2] << "\n";
    std::cout << "C(L2): " << l2.dims[0] << " " << l2.dims[1] << " " << l2.dims[2] << "\n";

    bool ok = false;
    RatVec trace = serre_trace_functional(l2, ok);
    std::cout << "trace ok: " << ok << "\n";

    // well-definedness: coboundary cup cocycle must vanish under the trace
    std::vector<RatVec> hbasis = cohomology_basis(l1, 1);
    std::cout << "H1 basis size " << hbasis.size() << "\n";
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(-2, 2);
    int bad = 0;
    for (int t = 0; t < 40; ++t) {
        RatVec c0(l1.dims[0]);
        for (auto& x : c0) x = pick(rng);
        RatVec db = mat_apply(l1.delta[0], c0);
        RatVec z = hbasis[t % hbasis.size()];
        Rat v1 = cup_trace_pair(m, l1, l1, l2, trace, db, z, 1);
        Rat v2 = cup_trace_pair(m, l1, l1, l2, trace, z, db, 1);
        if (v1 != 0 || v2 != 0) bad++;
    }
    std::cout << "coboundary pairings nonzero: " << bad << "/80\n";

    RatMat gram = mat_zero(hbasis.size(), hbasis.size());
    for (size_t i = 0; i < hbasis.size(); ++i) {
        for (size_t j = 0; j < hbasis.size(); ++j) {
            gram[i][j] = cup_trace_pair(m, l1, l1, l2, trace, hbasis[i], hbasis[j], 1);
            std::cout << rat_str(gram[i][j]) << "\t";
        }
        std::cout << "\n";
    }
    std::cout << "gram rank: " << mat_rank(gram) << "\n";

    // compare with the base surface
    SheafModel mb = build_sheaf_model(shear_sphere_model());
    auto hb = cohomology_ranks(build_cech(mb, SheafTag::Lambda1));
    std::cout << "base Lambda1 ranks: " << hb[0] << " " << hb[1] << " " << hb[2] << "\n";
    return 0;
}
