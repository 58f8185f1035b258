#include "sf/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sf {

using nlohmann::json;

IntMat2 imat_mul(const IntMat2& a, const IntMat2& b) {
    IntMat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

IntMat2 imat_identity() { return {{{1, 0}, {0, 1}}}; }

bool imat_unipotent(const IntMat2& m) {
    long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    long tr = m[0][0] + m[1][1];
    if (det != 1 || tr != 2) return false;
    IntMat2 d = {{{m[0][0] - 1, m[0][1]}, {m[1][0], m[1][1] - 1}}};
    IntMat2 dd = imat_mul(d, d);
    return dd[0][0] == 0 && dd[0][1] == 0 && dd[1][0] == 0 && dd[1][1] == 0;
}

bool unipotent_primitive(const IntMat2& m) {
    if (!imat_unipotent(m)) return false;
    long a = m[0][0] - 1, b = m[0][1], c = m[1][0], d = m[1][1] - 1;
    long g = 0;
    for (long v : {a, b, c, d}) g = std::__gcd(g, std::abs(v));
    return g == 1;
}

std::vector<std::array<Rat, 2>> invariant_covectors(const IntMat2& m) {
    // xi M = xi  <=>  (M^T - I) xi^T = 0
    RatMat a = {{Rat(m[0][0] - 1), Rat(m[1][0])}, {Rat(m[0][1]), Rat(m[1][1] - 1)}};
    std::vector<std::array<Rat, 2>> out;
    for (const auto& v : mat_nullspace(a)) out.push_back({v[0], v[1]});
    return out;
}

void Complex2::finalize() {
    std::sort(verts.begin(), verts.end());
    edge_tris.clear();
    vert_tris.clear();
    for (size_t t = 0; t < tris.size(); ++t) {
        const auto& tr = tris[t];
        for (int k = 0; k < 3; ++k) {
            vert_tris[tr[k]].push_back(static_cast<int>(t));
            edge_tris[ekey(tr[k], tr[(k + 1) % 3])].push_back(static_cast<int>(t));
        }
    }
}

bool Complex2::has_vert(int v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
}

long Complex2::euler_characteristic() const {
    return static_cast<long>(verts.size()) - static_cast<long>(edge_tris.size()) +
           static_cast<long>(tris.size());
}

std::vector<int> Complex2::star_tris(const std::vector<int>& simplex) const {
    std::vector<int> out;
    if (simplex.empty()) return out;
    auto it = vert_tris.find(simplex[0]);
    if (it == vert_tris.end()) return out;
    for (int t : it->second) {
        bool all = true;
        for (int v : simplex) {
            const auto& tr = tris[t];
            if (tr[0] != v && tr[1] != v && tr[2] != v) { all = false; break; }
        }
        if (all) out.push_back(t);
    }
    return out;
}

std::vector<int> Complex2::star_verts(const std::vector<int>& simplex) const {
    std::set<int> vs;
    for (int t : star_tris(simplex))
        for (int v : tris[t]) vs.insert(v);
    return std::vector<int>(vs.begin(), vs.end());
}

std::vector<std::vector<int>> Complex2::simplices(int dim) const {
    std::vector<std::vector<int>> out;
    if (dim == 0) {
        for (int v : verts) out.push_back({v});
    } else if (dim == 1) {
        for (const auto& [e, ts] : edge_tris) out.push_back({e.first, e.second});
    } else if (dim == 2) {
        for (const auto& tr : tris) {
            std::vector<int> s(tr.begin(), tr.end());
            std::sort(s.begin(), s.end());
            out.push_back(s);
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

const std::array<Rat, 2>& AffineSurface::chart_pos(int chart, int v) const {
    return charts.at(chart).at(v);
}

bool AffineSurface::chart_has(int chart, int v) const {
    auto it = charts.find(chart);
    return it != charts.end() && it->second.count(v);
}

std::vector<int> AffineSurface::link_cycle(int v) const {
    // each triangle (a,b,c) containing v, rotated to (v,x,y), contributes the
    // directed link edge x -> y; the cycle follows successors
    std::map<int, int> succ;
    auto it = cx.vert_tris.find(v);
    if (it == cx.vert_tris.end()) return {};
    for (int t : it->second) {
        auto tr = cx.tris[t];
        int i = (tr[0] == v) ? 0 : (tr[1] == v ? 1 : 2);
        int x = tr[(i + 1) % 3], y = tr[(i + 2) % 3];
        if (succ.count(x)) throw std::runtime_error("non-manifold link at vertex");
        succ[x] = y;
    }
    if (succ.empty()) return {};
    int start = succ.begin()->first;
    if (is_marked(v)) {
        int r = marks.at(v).front().ray_edge[1];
        if (succ.count(r)) start = r;
    }
    std::vector<int> cyc;
    int cur = start;
    for (size_t k = 0; k < succ.size(); ++k) {
        cyc.push_back(cur);
        auto s = succ.find(cur);
        if (s == succ.end()) throw std::runtime_error("open link at vertex");
        cur = s->second;
    }
    if (cur != start) throw std::runtime_error("link is not a single cycle");
    return cyc;
}

IntMat2 monodromy(const AffineSurface& s, int v) {
    IntMat2 m = imat_identity();
    if (!s.is_marked(v)) return m;
    std::vector<int> cyc = s.link_cycle(v);
    const std::vector<ShearMark>& ms = s.marks.at(v);
    for (int u : cyc) {
        for (const auto& mark : ms)
            if (mark.ray_edge[1] == u) m = imat_mul(mark.monodromy, m);
    }
    return m;
}

namespace {

bool affine_from_triangle(const std::array<Rat, 2>& a0, const std::array<Rat, 2>& a1,
                          const std::array<Rat, 2>& a2, const std::array<Rat, 2>& b0,
                          const std::array<Rat, 2>& b1, const std::array<Rat, 2>& b2,
                          RatMat& lin, std::array<Rat, 2>& off) {
    RatMat src = {{a1[0] - a0[0], a2[0] - a0[0]}, {a1[1] - a0[1], a2[1] - a0[1]}};
    Rat det = src[0][0] * src[1][1] - src[0][1] * src[1][0];
    if (det == 0) return false;
    RatMat inv = {{src[1][1] / det, -src[0][1] / det}, {-src[1][0] / det, src[0][0] / det}};
    RatMat dst = {{b1[0] - b0[0], b2[0] - b0[0]}, {b1[1] - b0[1], b2[1] - b0[1]}};
    lin = mat_mul(dst, inv);
    off = {b0[0] - (lin[0][0] * a0[0] + lin[0][1] * a0[1]),
           b0[1] - (lin[1][0] * a0[0] + lin[1][1] * a0[1])};
    return true;
}

bool is_integral_unimodular(const RatMat& lin) {
    for (const auto& row : lin)
        for (const Rat& x : row)
            if (x.get_den() != 1) return false;
    Rat det = lin[0][0] * lin[1][1] - lin[0][1] * lin[1][0];
    return det == 1 || det == -1;
}

} // namespace

Diagnostics validate(const AffineSurface& s) {
    Diagnostics d;
    auto fail = [&](const std::string& m) {
        d.valid = false;
        d.errors.push_back(m);
    };

    std::set<int> vset(s.cx.verts.begin(), s.cx.verts.end());
    if (vset.size() != s.cx.verts.size()) fail("duplicate vertex ids");
    for (const auto& tr : s.cx.tris) {
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2]) fail("degenerate triangle");
        for (int v : tr)
            if (!vset.count(v)) fail("triangle references unknown vertex");
    }
    for (const auto& [e, ts] : s.cx.edge_tris) {
        if (ts.size() != 2) {
            fail("edge not shared by exactly two triangles");
            continue;
        }
        int dir = 0;
        for (int t : ts) {
            const auto& tr = s.cx.tris[t];
            for (int k = 0; k < 3; ++k)
                if (tr[k] == e.first && tr[(k + 1) % 3] == e.second) dir++;
        }
        if (dir != 1) fail("incoherent triangle orientations across an edge");
    }
    if (!s.cx.tris.empty()) {
        std::set<int> seen;
        std::vector<int> stack = {s.cx.tris[0][0]};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!seen.insert(v).second) continue;
            auto it = s.cx.vert_tris.find(v);
            if (it == s.cx.vert_tris.end()) continue;
            for (int t : it->second)
                for (int u : s.cx.tris[t]) stack.push_back(u);
        }
        if (seen.size() != s.cx.verts.size()) fail("complex is not connected");
    }
    d.euler = s.cx.euler_characteristic();
    if (s.declared_sphere && d.euler != 2) fail("declared sphere but Euler characteristic != 2");

    for (int v : s.cx.verts) {
        try {
            (void)s.link_cycle(v);
        } catch (const std::exception& e) {
            fail(std::string("bad link at vertex ") + std::to_string(v) + ": " + e.what());
        }
    }

    for (int v : s.cx.verts) {
        if (!s.charts.count(v)) {
            fail("missing chart for vertex " + std::to_string(v));
            continue;
        }
        for (int u : s.cx.star_verts({v}))
            if (!s.chart_has(v, u))
                fail("chart of " + std::to_string(v) + " misses vertex " + std::to_string(u));
        for (int t : s.cx.star_tris({v})) {
            const auto& tr = s.cx.tris[t];
            if (!s.chart_has(v, tr[0]) || !s.chart_has(v, tr[1]) || !s.chart_has(v, tr[2]))
                continue;
            auto p0 = s.chart_pos(v, tr[0]), p1 = s.chart_pos(v, tr[1]), p2 = s.chart_pos(v, tr[2]);
            Rat det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
            if (det <= 0)
                fail("chart of " + std::to_string(v) + " has a degenerate or flipped triangle");
        }
    }

    for (const auto& [v, ms] : s.marks) {
        if (!vset.count(v)) fail("singular mark on unknown vertex");
        for (const auto& mk : ms) {
            if (mk.ray_edge[0] != v) fail("ray edge must start at its vertex");
            if (!s.cx.edge_tris.count(Complex2::ekey(mk.ray_edge[0], mk.ray_edge[1])))
                fail("ray edge is not an edge of the complex");
            if (!imat_unipotent(mk.monodromy)) fail("declared shear matrix is not unipotent");
        }
        if (s.charts.count(v) && s.chart_has(v, v)) {
            auto p = s.chart_pos(v, v);
            if (p[0] != 0 || p[1] != 0) d.warnings.push_back("marked vertex not at its chart origin");
        }
    }
    for (int v : s.cx.verts) {
        IntMat2 m;
        try {
            m = monodromy(s, v);
        } catch (const std::exception&) {
            continue;
        }
        bool uni = imat_unipotent(m);
        d.monodromy_unipotent[v] = uni;
        d.monodromy_primitive[v] = unipotent_primitive(m);
        if (s.is_marked(v) && !uni) fail("loop monodromy not unipotent at marked vertex");
    }

    // Transition diagnostics.  A closed surface cannot be integral-affine
    // around every vertex, so these are reported, not enforced; the bundled
    // models confine the defect to overlaps whose shared triangles touch a
    // marked vertex.
    for (const auto& [e, ts] : s.cx.edge_tris) {
        if (ts.size() != 2) continue;
        int u = e.first, w = e.second;
        if (!s.charts.count(u) || !s.charts.count(w)) continue;
        bool overlap_ok = true, first = true;
        RatMat lin0;
        for (int t : ts) {
            const auto& tr = s.cx.tris[t];
            bool have = true;
            for (int vv : tr) have = have && s.chart_has(u, vv) && s.chart_has(w, vv);
            if (!have) { overlap_ok = false; continue; }
            RatMat lin;
            std::array<Rat, 2> off;
            if (!affine_from_triangle(s.chart_pos(u, tr[0]), s.chart_pos(u, tr[1]),
                                      s.chart_pos(u, tr[2]), s.chart_pos(w, tr[0]),
                                      s.chart_pos(w, tr[1]), s.chart_pos(w, tr[2]), lin, off)) {
                overlap_ok = false;
                continue;
            }
            d.transition_checked++;
            if (is_integral_unimodular(lin)) d.transition_integral++;
            if (first) { lin0 = lin; first = false; }
            else if (lin != lin0) overlap_ok = false;
        }
        d.overlap_checked++;
        if (overlap_ok) d.overlap_consistent++;
    }
    return d;
}

Refinement refine_midpoint(const Complex2& cx) {
    Refinement r;
    int next = cx.verts.empty() ? 0 : cx.verts.back() + 1;
    std::map<std::pair<int, int>, int> mid;
    for (int v : cx.verts) {
        r.fine.verts.push_back(v);
        r.vert_carrier[v] = {v};
    }
    for (const auto& [e, ts] : cx.edge_tris) {
        mid[e] = next;
        r.fine.verts.push_back(next);
        r.vert_carrier[next] = {e.first, e.second};
        r.midpoint_of[next] = e;
        ++next;
    }
    for (size_t t = 0; t < cx.tris.size(); ++t) {
        auto [a, b, c] = cx.tris[t];
        int mab = mid[Complex2::ekey(a, b)];
        int mbc = mid[Complex2::ekey(b, c)];
        int mca = mid[Complex2::ekey(c, a)];
        std::array<std::array<int, 3>, 4> subs = {{{a, mab, mca},
                                                   {mab, b, mbc},
                                                   {mca, mbc, c},
                                                   {mab, mbc, mca}}};
        for (const auto& sub : subs) {
            r.fine.tris.push_back(sub);
            r.tri_parent.push_back(static_cast<int>(t));
        }
    }
    r.fine.finalize();
    return r;
}

namespace {

std::array<Rat, 2> pos_from_json(const json& j) {
    return {parse_rat(j.at(0).get<std::string>()), parse_rat(j.at(1).get<std::string>())};
}

} // namespace

std::string AffineSurface::to_json() const {
    json j;
    j["format"] = "affine-surface/1";
    j["sphere"] = declared_sphere;
    j["vertices"] = json::array();
    for (int v : cx.verts) j["vertices"].push_back({{"id", v}, {"singular", is_marked(v)}});
    j["triangles"] = json::array();
    for (const auto& t : cx.tris) j["triangles"].push_back({t[0], t[1], t[2]});
    json ch = json::object();
    for (const auto& [v, m] : charts) {
        json c = json::object();
        for (const auto& [u, p] : m) c[std::to_string(u)] = {rat_str(p[0]), rat_str(p[1])};
        ch[std::to_string(v)] = c;
    }
    j["charts"] = ch;
    json sing = json::object();
    for (const auto& [v, ms] : marks) {
        json arr = json::array();
        for (const auto& mk : ms)
            arr.push_back({{"ray_edge", {mk.ray_edge[0], mk.ray_edge[1]}},
                           {"monodromy", {{mk.monodromy[0][0], mk.monodromy[0][1]},
                                          {mk.monodromy[1][0], mk.monodromy[1][1]}}}});
        sing[std::to_string(v)] = arr;
    }
    j["singular"] = sing;
    return j.dump(2);
}

AffineSurface AffineSurface::from_json(const std::string& text) {
    json j = json::parse(text);
    AffineSurface s;
    s.declared_sphere = j.value("sphere", true);
    for (const auto& v : j.at("vertices")) s.cx.verts.push_back(v.at("id").get<int>());
    for (const auto& t : j.at("triangles"))
        s.cx.tris.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    s.cx.finalize();
    for (const auto& [vs, c] : j.at("charts").items()) {
        int v = std::stoi(vs);
        for (const auto& [us, p] : c.items()) s.charts[v][std::stoi(us)] = pos_from_json(p);
    }
    if (j.contains("singular")) {
        for (const auto& [vs, arr0] : j.at("singular").items()) {
            int v = std::stoi(vs);
            json arr = arr0.is_array() ? arr0 : json::array({arr0});
            for (const auto& mk : arr) {
                ShearMark m;
                m.ray_edge = {mk.at("ray_edge").at(0).get<int>(),
                              mk.at("ray_edge").at(1).get<int>()};
                for (int i = 0; i < 2; ++i)
                    for (int k = 0; k < 2; ++k)
                        m.monodromy[i][k] = mk.at("monodromy").at(i).at(k).get<long>();
                s.marks[v].push_back(m);
            }
        }
    }
    return s;
}

uint64_t AffineSurface::content_hash() const {
    std::string body = to_json();
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : body) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace sf
