#include "sf/modification.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace sf {

using nlohmann::json;

bool MatroidalFanChart::balanced() const {
    for (int k = 0; k < 3; ++k) {
        if (rays[0][k] + rays[1][k] + rays[2][k] != 0) return false;
        if (rays[3][k] + rays[4][k] != 0) return false;
    }
    return true;
}

bool ModifiedSurface::is_fin_vertex(int v) const {
    for (const auto& f : fins)
        if (f.e == v) return true;
    return false;
}

const Fin* ModifiedSurface::fin_of(int v) const {
    for (const auto& f : fins)
        if (f.i == v || f.j == v || f.m == v || f.e == v) return &f;
    return nullptr;
}

int ModifiedSurface::project_vertex(int v) const {
    for (const auto& f : fins)
        if (f.e == v) return f.m;
    return v;
}

namespace {

// midpoint in a chart
std::array<Rat, 2> midpoint(const std::array<Rat, 2>& a, const std::array<Rat, 2>& b) {
    return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
}

void split_triangle(std::vector<std::array<int, 3>>& tris, int i, int j, int m) {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris) {
        int k = -1;
        for (int c = 0; c < 3; ++c)
            if ((t[c] == i && t[(c + 1) % 3] == j) || (t[c] == j && t[(c + 1) % 3] == i)) k = c;
        if (k < 0) {
            out.push_back(t);
            continue;
        }
        int u = t[k], w = t[(k + 1) % 3], o = t[(k + 2) % 3];
        out.push_back({u, m, o});
        out.push_back({m, w, o});
    }
    tris = out;
}

} // namespace

ModifiedSurface build_modification(const AffineSurface& s) {
    ModifiedSurface M;
    M.base = s;
    AffineSurface sub = s;   // will gain midpoints
    int next = s.cx.verts.empty() ? 0 : s.cx.verts.back() + 1;

    struct Planned {
        int i, j, m, e, a, b;
        Rat kappa;
    };
    std::vector<Planned> plans;

    for (const auto& [i, ms] : s.marks) {
        if (ms.empty()) continue;
        IntMat2 mono = monodromy(s, i);
        auto inv = invariant_covectors(mono);
        if (inv.size() != 1)
            throw std::runtime_error("modification expects a single-shear monodromy at vertex " +
                                     std::to_string(i));
        const auto& chart = s.charts.at(i);
        auto origin = chart.at(i);
        // pick j among link vertices: unmarked, the edge (i,j) transverse to
        // the invariant covector, and the flanking a, b collinear with the
        // midpoint (the paper's x(j)=0, y(j)=1 normalization).
        int j = -1, a = -1, b = -1;
        Rat kappa;
        for (int cand : s.link_cycle(i)) {
            if (s.is_marked(cand)) continue;
            auto pj = chart.at(cand);
            Rat y = inv[0][0] * (pj[0] - origin[0]) + inv[0][1] * (pj[1] - origin[1]);
            if (y == 0) continue;   // edge along the ray direction
            auto ts = s.cx.edge_tris.at(Complex2::ekey(i, cand));
            if (ts.size() != 2) continue;
            std::vector<int> flank;
            for (int t : ts)
                for (int v : s.cx.tris[t])
                    if (v != i && v != cand) flank.push_back(v);
            if (flank.size() != 2) continue;
            auto pa = chart.at(flank[0]), pb = chart.at(flank[1]);
            auto pm = midpoint(origin, pj);
            std::array<Rat, 2> da = {pa[0] - pm[0], pa[1] - pm[1]};
            std::array<Rat, 2> db = {pb[0] - pm[0], pb[1] - pm[1]};
            // collinear and opposite: db = -kappa da, kappa > 0
            Rat cross = da[0] * db[1] - da[1] * db[0];
            if (cross != 0) continue;
            Rat k = (da[0] != 0) ? -db[0] / da[0] : -db[1] / da[1];
            if (k <= 0) continue;
            j = cand;
            a = flank[0];
            b = flank[1];
            kappa = k;
            break;
        }
        if (j < 0)
            throw std::runtime_error("no realizable j next to marked vertex " + std::to_string(i) +
                                     " (needs flanking vertices collinear with the midpoint)");
        plans.push_back({i, j, next, next + 1, a, b, kappa});
        next += 2;
    }

    // subdivide the (i,j) edges and extend all charts with the midpoints
    for (const auto& p : plans) {
        split_triangle(sub.cx.tris, p.i, p.j, p.m);
        sub.cx.verts.push_back(p.m);
        for (auto& [v, chart] : sub.charts) {
            if (chart.count(p.i) && chart.count(p.j))
                chart[p.m] = midpoint(chart.at(p.i), chart.at(p.j));
        }
        // the midpoint's own chart: taken from i's chart (it is interior to
        // the edge, a regular point)
        std::map<int, std::array<Rat, 2>> mchart;
        for (const auto& [u, pos] : sub.charts.at(p.i)) mchart[u] = pos;
        mchart[p.m] = midpoint(mchart.at(p.i), mchart.at(p.j));
        sub.charts[p.m] = mchart;
    }
    sub.cx.finalize();
    M.base_sub = sub;

    // assemble the modified complex
    M.cx = sub.cx;
    for (const auto& p : plans) {
        M.cx.verts.push_back(p.e);
        M.cx.tris.push_back({p.m, p.i, p.e});
        M.cx.tris.push_back({p.j, p.m, p.e});
        Fin f;
        f.i = p.i;
        f.j = p.j;
        f.m = p.m;
        f.e = p.e;
        f.a = p.a;
        f.b = p.b;
        f.kappa = p.kappa;
        M.fins.push_back(f);
    }
    M.cx.finalize();

    // charts: 2d charts for all sphere vertices (from sub), the glued-triangle
    // chart for each e, the fan chart for each m
    M.charts2d = sub.charts;
    for (const auto& f : M.fins) {
        // glued triangle developed: i=(0,0), j=(0,1), m=(0,1/2), e=(1,1/2)
        std::map<int, std::array<Rat, 2>> ec;
        ec[f.i] = {Rat(0), Rat(0)};
        ec[f.j] = {Rat(0), Rat(1)};
        ec[f.m] = {Rat(0), Rat(1, 2)};
        ec[f.e] = {Rat(1), Rat(1, 2)};
        M.charts2d[f.e] = ec;

        std::map<int, std::array<Rat, 3>> fc;
        fc[f.m] = {Rat(0), Rat(0), Rat(0)};
        fc[f.i] = {Rat(0), Rat(0), Rat(1)};
        fc[f.j] = {Rat(0), Rat(0), Rat(-1)};
        fc[f.a] = {Rat(1), Rat(0), Rat(0)};
        fc[f.b] = {Rat(0), f.kappa, Rat(0)};
        fc[f.e] = {Rat(-1), Rat(-1), Rat(0)};
        M.fan3d[f.m] = fc;
    }
    return M;
}

void corrupt_fan_chart(ModifiedSurface& m) {
    for (auto& [mv, fc] : m.fan3d)
        for (auto& [v, pos] : fc)
            if (pos[0] < 0 && pos[1] < 0) pos = {Rat(-1), Rat(0), Rat(0)};
}

namespace {

Rat tri_det2(const std::map<int, std::array<Rat, 2>>& chart, const std::array<int, 3>& tr) {
    const auto& p0 = chart.at(tr[0]);
    const auto& p1 = chart.at(tr[1]);
    const auto& p2 = chart.at(tr[2]);
    return (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
}

// value of a constant 2-form (given on basis pairs du^dv, du^dw, dv^dw) on
// the stored frame of a triangle placed in R^3
Rat form2_value(const std::array<Rat, 3>& w12, const std::map<int, std::array<Rat, 3>>& pos,
                const std::array<int, 3>& tr) {
    std::array<Rat, 3> u{}, v{};
    for (int k = 0; k < 3; ++k) {
        u[k] = pos.at(tr[1])[k] - pos.at(tr[0])[k];
        v[k] = pos.at(tr[2])[k] - pos.at(tr[0])[k];
    }
    Rat duv = u[0] * v[1] - u[1] * v[0];
    Rat duw = u[0] * v[2] - u[2] * v[0];
    Rat dvw = u[1] * v[2] - u[2] * v[1];
    return w12[0] * duv + w12[1] * duw + w12[2] * dvw;
}

} // namespace

SheafModel build_sheaf_model(const ModifiedSurface& M) {
    SheafModel m;
    m.cx = M.cx;

    // base-sub sheaf model supplies the pullback spaces at i and j
    SheafModel base = build_sheaf_model(M.base_sub);

    for (int v : M.cx.verts) {
        std::vector<int> sv = M.cx.star_verts({v});
        std::vector<int> st = M.cx.star_tris({v});
        std::sort(st.begin(), st.end());

        const Fin* f = M.fin_of(v);
        RatMat a1rows, l2rows;

        if (f && v == f->m) {
            // matroidal fan star: ambient affine functions of R^3
            const auto& fc = M.fan3d.at(v);
            RatVec ones(sv.size(), Rat(1));
            a1rows.push_back(ones);
            for (int coord = 0; coord < 3; ++coord) {
                RatVec r;
                for (int u : sv) r.push_back(fc.at(u)[coord]);
                a1rows.push_back(r);
            }
            // ambient 2-form classes du^dw, dv^dw (du^dv vanishes on every
            // cone; kept out so the basis is exact)
            for (auto cls : {std::array<Rat, 3>{Rat(0), Rat(1), Rat(0)},
                             std::array<Rat, 3>{Rat(0), Rat(0), Rat(1)}}) {
                RatVec r;
                for (int t : st) r.push_back(form2_value(cls, fc, M.cx.tris[t]));
                l2rows.push_back(r);
            }
        } else if (f && v == f->e) {
            // no sections of A1 near e (or constants, behind the switch);
            // 2-form germs vanish here too: the evaluation model at the apex
            // is a point, so the apex star carries no parallel 2-forms
            if (M.constants_at_e) a1rows.push_back(RatVec(sv.size(), Rat(1)));
        } else if (f && (v == f->i || v == f->j)) {
            // pullback along the collapse: sections are f o pi for base
            // sections f near the image star
            SectionSpace src = base.space({v}, SheafTag::A1);
            for (const auto& row : src.basis) {
                RatVec r;
                for (int u : sv) {
                    int pu = M.project_vertex(u);
                    auto it = std::lower_bound(src.sites.begin(), src.sites.end(), pu);
                    if (it == src.sites.end() || *it != pu)
                        throw std::runtime_error("pullback star misses a projected vertex");
                    r.push_back(row[static_cast<size_t>(it - src.sites.begin())]);
                }
                a1rows.push_back(r);
            }
            // 2-forms pull back: base star value on sphere triangles, zero on
            // the collapsed fin sheets
            const auto& chart = M.charts2d.at(v);
            RatVec dets;
            for (int t : st) {
                const auto& tr = M.cx.tris[t];
                bool is_fin = (tr[0] == f->e || tr[1] == f->e || tr[2] == f->e);
                dets.push_back(is_fin ? Rat(0) : tri_det2(chart, tr));
            }
            l2rows.push_back(dets);
        } else {
            // ordinary sphere star (possibly marked): reuse the base model
            SectionSpace src = base.space({v}, SheafTag::A1);
            std::vector<int> bsites = src.sites;
            for (const auto& row : src.basis) {
                RatVec r;
                for (int u : sv) {
                    auto it = std::lower_bound(bsites.begin(), bsites.end(), u);
                    if (it == bsites.end() || *it != u)
                        throw std::runtime_error("sphere star misses a vertex in the base");
                    r.push_back(row[static_cast<size_t>(it - bsites.begin())]);
                }
                a1rows.push_back(r);
            }
            const auto& chart = M.charts2d.at(v);
            RatVec dets;
            for (int t : st) dets.push_back(tri_det2(chart, M.cx.tris[t]));
            l2rows.push_back(dets);
        }

        m.a1_vertex[v] = row_basis(a1rows);
        m.l2_vertex[v] = row_basis(l2rows);
    }
    return m;
}

MorphismReport check_morphism(const ModifiedSurface& M) {
    MorphismReport rep;
    SheafModel mod = build_sheaf_model(M);
    SheafModel base = build_sheaf_model(M.base_sub);

    for (int dim = 0; dim <= 2; ++dim) {
        for (const auto& simplex : M.cx.simplices(dim)) {
            // The apex star is excluded: its sheaf has no sections by fiat, so
            // the collapse cannot pull anything into it.  Every star that
            // merely touches the apex is still checked.
            if (dim == 0 && M.is_fin_vertex(simplex[0])) continue;
            // image simplex under the collapse
            std::set<int> img;
            for (int v : simplex) img.insert(M.project_vertex(v));
            std::vector<int> image(img.begin(), img.end());

            SectionSpace up = mod.space(simplex, SheafTag::A1);
            SectionSpace down = base.space(image, SheafTag::A1);

            // pull each base section back and test containment
            std::vector<int> sv = mod.cx.star_verts(simplex);
            RatMat pulled;
            bool missing = false;
            for (const auto& row : down.basis) {
                RatVec r;
                for (int u : sv) {
                    int pu = M.project_vertex(u);
                    auto it = std::lower_bound(down.sites.begin(), down.sites.end(), pu);
                    if (it == down.sites.end() || *it != pu) { missing = true; break; }
                    r.push_back(row[static_cast<size_t>(it - down.sites.begin())]);
                }
                if (missing) break;
                pulled.push_back(std::move(r));
            }
            rep.stars_checked++;
            if (missing) {
                rep.pass = false;
                rep.failures.push_back("projected star not covered at simplex");
                continue;
            }
            if (!span_contains_all(up.basis, pulled)) {
                rep.pass = false;
                std::string name = "{";
                for (int v : simplex) name += std::to_string(v) + " ";
                name += "}";
                rep.failures.push_back("pullback sections escape A1 at star " + name);
            }
        }
    }
    return rep;
}

std::string ModifiedSurface::to_json() const {
    json j;
    j["format"] = "modified-surface/1";
    j["base"] = json::parse(base.to_json());
    j["base_sub"] = json::parse(base_sub.to_json());
    j["constants_at_e"] = constants_at_e;
    j["vertices"] = cx.verts;
    j["triangles"] = json::array();
    for (const auto& t : cx.tris) j["triangles"].push_back({t[0], t[1], t[2]});
    j["fins"] = json::array();
    for (const auto& f : fins)
        j["fins"].push_back({{"i", f.i}, {"j", f.j}, {"m", f.m}, {"e", f.e},
                             {"a", f.a}, {"b", f.b}, {"kappa", rat_str(f.kappa)}});
    json ch = json::object();
    for (const auto& [v, c] : charts2d) {
        json cc = json::object();
        for (const auto& [u, p] : c) cc[std::to_string(u)] = {rat_str(p[0]), rat_str(p[1])};
        ch[std::to_string(v)] = cc;
    }
    j["charts"] = ch;
    json fc = json::object();
    for (const auto& [v, c] : fan3d) {
        json cc = json::object();
        for (const auto& [u, p] : c)
            cc[std::to_string(u)] = {rat_str(p[0]), rat_str(p[1]), rat_str(p[2])};
        fc[std::to_string(v)] = cc;
    }
    j["fan_charts"] = fc;
    json pr = json::object();
    for (const auto& f : fins) pr[std::to_string(f.e)] = f.m;
    j["projection"] = pr;
    return j.dump(2);
}

ModifiedSurface ModifiedSurface::from_json(const std::string& text) {
    json j = json::parse(text);
    ModifiedSurface M;
    M.base = AffineSurface::from_json(j.at("base").dump());
    M.base_sub = AffineSurface::from_json(j.at("base_sub").dump());
    M.constants_at_e = j.value("constants_at_e", false);
    for (int v : j.at("vertices")) M.cx.verts.push_back(v);
    for (const auto& t : j.at("triangles"))
        M.cx.tris.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    M.cx.finalize();
    for (const auto& f : j.at("fins")) {
        Fin fin;
        fin.i = f.at("i").get<int>();
        fin.j = f.at("j").get<int>();
        fin.m = f.at("m").get<int>();
        fin.e = f.at("e").get<int>();
        fin.a = f.at("a").get<int>();
        fin.b = f.at("b").get<int>();
        fin.kappa = parse_rat(f.at("kappa").get<std::string>());
        M.fins.push_back(fin);
    }
    for (const auto& [vs, c] : j.at("charts").items()) {
        int v = std::stoi(vs);
        for (const auto& [us, p] : c.items())
            M.charts2d[v][std::stoi(us)] = {parse_rat(p.at(0).get<std::string>()),
                                            parse_rat(p.at(1).get<std::string>())};
    }
    for (const auto& [vs, c] : j.at("fan_charts").items()) {
        int v = std::stoi(vs);
        for (const auto& [us, p] : c.items())
            M.fan3d[v][std::stoi(us)] = {parse_rat(p.at(0).get<std::string>()),
                                         parse_rat(p.at(1).get<std::string>()),
                                         parse_rat(p.at(2).get<std::string>())};
    }
    return M;
}

} // namespace sf
