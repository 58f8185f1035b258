#include "sf/sections.hpp"

#include <algorithm>
#include <stdexcept>

namespace sf {

SheafTag sheaf_from_string(const std::string& s) {
    if (s == "R" || s == "r") return SheafTag::R;
    if (s == "A1" || s == "a1") return SheafTag::A1;
    if (s == "Lambda1" || s == "lambda1" || s == "L1") return SheafTag::Lambda1;
    if (s == "Lambda2" || s == "lambda2" || s == "L2") return SheafTag::Lambda2;
    throw std::invalid_argument("unknown sheaf tag: " + s);
}

std::string sheaf_name(SheafTag t) {
    switch (t) {
        case SheafTag::R: return "R";
        case SheafTag::A1: return "A1";
        case SheafTag::Lambda1: return "Lambda1";
        case SheafTag::Lambda2: return "Lambda2";
    }
    return "?";
}

namespace {

size_t site_index(const std::vector<int>& sites, int s) {
    auto it = std::lower_bound(sites.begin(), sites.end(), s);
    if (it == sites.end() || *it != s) throw std::runtime_error("missing site");
    return static_cast<size_t>(it - sites.begin());
}

RatVec project_sites(const std::vector<int>& from_sites, const RatVec& row,
                     const std::vector<int>& to_sites) {
    RatVec out(to_sites.size(), Rat(0));
    for (size_t k = 0; k < to_sites.size(); ++k)
        out[k] = row[site_index(from_sites, to_sites[k])];
    return out;
}

void normalize_at_base(RatVec& row) {
    if (row.empty()) return;
    Rat b = row[0];   // sites sorted, first = smallest vertex
    if (b == 0) return;
    for (Rat& x : row) x -= b;
}

} // namespace

SectionSpace SheafModel::space(const std::vector<int>& simplex, SheafTag tag) const {
    auto key = std::make_pair(simplex, tag);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;

    SectionSpace sp;
    sp.simplex = simplex;
    sp.tag = tag;
    bool tri_sites = (tag == SheafTag::Lambda2);
    sp.sites = tri_sites ? cx.star_tris(simplex) : cx.star_verts(simplex);
    if (tri_sites) std::sort(sp.sites.begin(), sp.sites.end());

    auto vertex_rows = [&](int v) -> RatMat {
        const RatMat& src = tri_sites ? l2_vertex.at(v) : a1_vertex.at(v);
        std::vector<int> vsites = tri_sites ? cx.star_tris({v}) : cx.star_verts({v});
        if (tri_sites) std::sort(vsites.begin(), vsites.end());
        RatMat rows;
        for (const auto& r : src) rows.push_back(project_sites(vsites, r, sp.sites));
        return rows;
    };

    RatMat rows;
    if (tag == SheafTag::R) {
        rows.push_back(RatVec(sp.sites.size(), Rat(1)));
    } else {
        for (int v : simplex)
            for (auto& r : vertex_rows(v)) rows.push_back(std::move(r));
        if (tag == SheafTag::Lambda1)
            for (auto& r : rows) normalize_at_base(r);
    }
    sp.basis = row_basis(rows);
    cache_.emplace(key, sp);
    return sp;
}

RatVec SheafModel::restrict_values(const SectionSpace& from, const RatVec& row,
                                   const std::vector<int>& to_simplex) const {
    bool tri_sites = (from.tag == SheafTag::Lambda2);
    std::vector<int> to_sites = tri_sites ? cx.star_tris(to_simplex) : cx.star_verts(to_simplex);
    if (tri_sites) std::sort(to_sites.begin(), to_sites.end());
    RatVec out = project_sites(from.sites, row, to_sites);
    if (from.tag == SheafTag::Lambda1) normalize_at_base(out);
    return out;
}

RatMat SheafModel::restriction(const SectionSpace& from, const SectionSpace& to) const {
    // columns: coordinates of each restricted source basis row in `to`'s basis
    RatMat cols = mat_zero(to.dim(), from.dim());
    if (to.dim() == 0 || from.dim() == 0) return cols;
    RatMat tb = mat_transpose(to.basis);
    for (size_t i = 0; i < from.dim(); ++i) {
        RatVec v = restrict_values(from, from.basis[i], to.simplex);
        auto sol = mat_solve(tb, v);
        if (!sol) throw std::runtime_error("restriction does not land in the target space");
        for (size_t r = 0; r < to.dim(); ++r) cols[r][i] = (*sol)[r];
    }
    return cols;
}

namespace {

Rat tri_det(const std::map<int, std::array<Rat, 2>>& chart, const std::array<int, 3>& tr) {
    const auto& p0 = chart.at(tr[0]);
    const auto& p1 = chart.at(tr[1]);
    const auto& p2 = chart.at(tr[2]);
    return (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
}

} // namespace

SheafModel build_sheaf_model(const AffineSurface& s) {
    SheafModel m;
    m.cx = s.cx;
    for (int v : s.cx.verts) {
        std::vector<int> sv = s.cx.star_verts({v});
        const auto& chart = s.charts.at(v);
        RatMat rows;
        rows.push_back(RatVec(sv.size(), Rat(1)));
        if (!s.is_marked(v)) {
            RatVec xs, ys;
            for (int u : sv) {
                xs.push_back(chart.at(u)[0]);
                ys.push_back(chart.at(u)[1]);
            }
            rows.push_back(xs);
            rows.push_back(ys);
        } else {
            auto base = chart.at(v);
            for (const auto& xi : invariant_covectors(monodromy(s, v))) {
                RatVec r;
                for (int u : sv) {
                    auto p = chart.at(u);
                    r.push_back(xi[0] * (p[0] - base[0]) + xi[1] * (p[1] - base[1]));
                }
                rows.push_back(r);
            }
        }
        m.a1_vertex[v] = row_basis(rows);

        std::vector<int> st = s.cx.star_tris({v});
        std::sort(st.begin(), st.end());
        RatVec dets;
        for (int t : st) dets.push_back(tri_det(chart, s.cx.tris[t]));
        m.l2_vertex[v] = {dets};
    }
    return m;
}

SheafModel refine_sheaf_model(const SheafModel& coarse) {
    Refinement ref = refine_midpoint(coarse.cx);
    SheafModel fine;
    fine.cx = ref.fine;

    for (int v : ref.fine.verts) {
        const std::vector<int>& carrier = ref.vert_carrier.at(v);
        SectionSpace src = coarse.space(carrier, SheafTag::A1);

        std::vector<int> sv = ref.fine.star_verts({v});
        RatMat rows;
        for (const auto& row : src.basis) {
            RatVec r;
            for (int w : sv) {
                auto mid = ref.midpoint_of.find(w);
                if (mid == ref.midpoint_of.end()) {
                    r.push_back(row[site_index(src.sites, w)]);
                } else {
                    Rat a = row[site_index(src.sites, mid->second.first)];
                    Rat b = row[site_index(src.sites, mid->second.second)];
                    r.push_back((a + b) / 2);
                }
            }
            rows.push_back(std::move(r));
        }
        fine.a1_vertex[v] = row_basis(rows);

        SectionSpace l2 = coarse.space(carrier, SheafTag::Lambda2);
        std::vector<int> st = ref.fine.star_tris({v});
        std::sort(st.begin(), st.end());
        RatMat l2rows;
        for (const auto& row : l2.basis) {
            RatVec r;
            for (int t : st) {
                Rat parent = row[site_index(l2.sites, ref.tri_parent[t])];
                r.push_back(parent / 4);
            }
            l2rows.push_back(std::move(r));
        }
        fine.l2_vertex[v] = row_basis(l2rows);
    }
    return fine;
}

int germ20_dim(const SheafModel& m, int v) {
    SectionSpace l1 = m.space({v}, SheafTag::Lambda1);
    return l1.dim() >= 2 ? 1 : 0;
}

} // namespace sf
