#include "sf/kahler.hpp"

#include "sf/lp.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sf {

using nlohmann::json;

SubVert SubVert::corner(int v) {
    SubVert s;
    s.w[v] = 1;
    return s;
}

SubVert SubVert::mid(const SubVert& a, const SubVert& b) {
    SubVert s;
    for (const auto& [v, x] : a.w) s.w[v] += x / 2;
    for (const auto& [v, x] : b.w) s.w[v] += x / 2;
    for (auto it = s.w.begin(); it != s.w.end();)
        it = (it->second == 0) ? s.w.erase(it) : std::next(it);
    return s;
}

std::string SubVert::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, x] : w) {
        if (!first) os << "+";
        first = false;
        os << v << "*" << rat_str(x);
    }
    return os.str();
}

SubVert SubVert::parse(const std::string& s) {
    SubVert out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t star = s.find('*', pos);
        size_t plus = s.find('+', star);
        int v = std::stoi(s.substr(pos, star - pos));
        std::string num = s.substr(star + 1, (plus == std::string::npos ? s.size() : plus) - star - 1);
        out.w[v] = parse_rat(num);
        pos = (plus == std::string::npos) ? s.size() : plus + 1;
    }
    return out;
}

std::array<Rat, 2> SubVert::position(const std::map<int, std::array<Rat, 2>>& chart) const {
    std::array<Rat, 2> p = {Rat(0), Rat(0)};
    for (const auto& [v, x] : w) {
        const auto& q = chart.at(v);
        p[0] += x * q[0];
        p[1] += x * q[1];
    }
    return p;
}

size_t Subdivision::index_of(const SubVert& v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || !(*it == v)) throw std::runtime_error("unknown subdivision vertex");
    return static_cast<size_t>(it - verts.begin());
}

Subdivision subdivide_surface(const AffineSurface& s, int level) {
    Subdivision sub;
    for (size_t t = 0; t < s.cx.tris.size(); ++t) {
        SubCell c;
        for (int k = 0; k < 3; ++k) c.v[k] = SubVert::corner(s.cx.tris[t][k]);
        c.parent = static_cast<int>(t);
        sub.cells.push_back(c);
    }
    for (int round = 0; round < level; ++round) {
        std::vector<SubCell> next;
        for (const auto& c : sub.cells) {
            SubVert m01 = SubVert::mid(c.v[0], c.v[1]);
            SubVert m12 = SubVert::mid(c.v[1], c.v[2]);
            SubVert m02 = SubVert::mid(c.v[0], c.v[2]);
            next.push_back({{c.v[0], m01, m02}, c.parent});
            next.push_back({{m01, c.v[1], m12}, c.parent});
            next.push_back({{m02, m12, c.v[2]}, c.parent});
            next.push_back({{m01, m12, m02}, c.parent});
        }
        sub.cells = std::move(next);
    }
    std::set<SubVert> vs;
    for (const auto& c : sub.cells)
        for (const auto& v : c.v) vs.insert(v);
    sub.verts.assign(vs.begin(), vs.end());
    return sub;
}

std::map<int, ConstForm11> reference_form(const AffineSurface& s) {
    std::map<int, ConstForm11> psi;
    for (size_t t = 0; t < s.cx.tris.size(); ++t) {
        ConstForm11 f;
        f.g = mat_identity(2);
        psi[static_cast<int>(t)] = f;
    }
    return psi;
}

namespace {

struct EdgeKey {
    SubVert a, b;
    bool operator<(const EdgeKey& o) const {
        if (a < o.a) return true;
        if (o.a < a) return false;
        return b < o.b;
    }
};

EdgeKey make_edge(const SubVert& x, const SubVert& y) {
    return (x < y) ? EdgeKey{x, y} : EdgeKey{y, x};
}

std::set<int> carrier(const SubVert& v) {
    std::set<int> c;
    for (const auto& [u, x] : v.w) c.insert(u);
    return c;
}

struct EdgeInfo {
    EdgeKey key;
    std::array<size_t, 2> cells;   // flank cell indices
    int chart = -1;                // designated chart vertex
    bool seam = false;             // lies on a marked ray edge
    int seam_vertex = -1;          // the marked vertex
    IntMat2 seam_m = imat_identity();
    size_t bside_cell = 0;         // index into `cells` of the transported side
};

struct LinearRow {
    std::map<SubVert, Rat> coef;
    Rat offset = Rat(0);    // constant contribution from the twist
};

std::array<Rat, 2> apply_m(const IntMat2& m, const std::array<Rat, 2>& p) {
    return {Rat(m[0][0]) * p[0] + Rat(m[0][1]) * p[1],
            Rat(m[1][0]) * p[0] + Rat(m[1][1]) * p[1]};
}

// gradient of the affine interpolant as a linear map of the three values
std::array<RatVec, 2> gradient_coeffs(const std::array<std::array<Rat, 2>, 3>& p) {
    Rat det = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) -
              (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]);
    if (det == 0) throw std::runtime_error("degenerate subdivision cell");
    // grad_x = [ (f1-f0)(p2-p0)_y - (f2-f0)(p1-p0)_y ] / det
    RatVec gx = {((p[1][1] - p[0][1]) - (p[2][1] - p[0][1])) / det, (p[2][1] - p[0][1]) / det,
                 -(p[1][1] - p[0][1]) / det};
    RatVec gy = {((p[2][0] - p[0][0]) - (p[1][0] - p[0][0])) / det, -(p[2][0] - p[0][0]) / det,
                 (p[1][0] - p[0][0]) / det};
    return {gx, gy};
}

struct KahlerContext {
    const AffineSurface* s = nullptr;
    Subdivision sub;
    std::map<EdgeKey, std::vector<size_t>> edge_cells;
    std::vector<EdgeInfo> edges;
    std::map<int, ConstForm11> psi;

    const std::map<int, std::array<Rat, 2>>& chart(int v) const { return s->charts.at(v); }

    void build(const AffineSurface& surf, int level) {
        s = &surf;
        sub = subdivide_surface(surf, level);
        for (size_t ci = 0; ci < sub.cells.size(); ++ci) {
            const auto& c = sub.cells[ci];
            for (int k = 0; k < 3; ++k)
                edge_cells[make_edge(c.v[k], c.v[(k + 1) % 3])].push_back(ci);
        }
        psi = reference_form(surf);
        for (const auto& [key, cells] : edge_cells) {
            if (cells.size() != 2)
                throw std::runtime_error("subdivided surface is not closed at an edge");
            EdgeInfo e;
            e.key = key;
            e.cells = {cells[0], cells[1]};
            std::set<int> carr = carrier(key.a);
            for (int u : carrier(key.b)) carr.insert(u);
            if (carr.size() > 3) throw std::runtime_error("edge crosses original simplices");
            if (carr.size() <= 2) {
                // on an original edge
                auto it = carr.begin();
                int u = *it;
                int w = (carr.size() == 2) ? *std::next(it) : u;
                e.chart = std::min(u, w);
                // marked ray edge?
                for (int mv : {u, w}) {
                    if (!surf.is_marked(mv)) continue;
                    for (const auto& mk : surf.marks.at(mv)) {
                        if (Complex2::ekey(mk.ray_edge[0], mk.ray_edge[1]) ==
                            Complex2::ekey(u, w)) {
                            e.seam = true;
                            e.seam_vertex = mv;
                            e.seam_m = mk.monodromy;
                            e.chart = mv;
                        }
                    }
                }
            } else {
                e.chart = *carr.begin();
            }
            if (e.seam) {
                // transported side: the flank whose parent triangle contains
                // the directed edge (marked -> ray vertex)
                int mv = e.seam_vertex;
                int rv = -1;
                for (const auto& mk : surf.marks.at(mv))
                    if (e.seam_m == mk.monodromy) rv = mk.ray_edge[1];
                for (size_t k = 0; k < 2; ++k) {
                    const auto& tr = surf.cx.tris[sub.cells[e.cells[k]].parent];
                    for (int c2 = 0; c2 < 3; ++c2)
                        if (tr[c2] == mv && tr[(c2 + 1) % 3] == rv) e.bside_cell = k;
                }
            }
            edges.push_back(e);
        }
    }

    // bending weight as a linear functional of the vertex values, plus the
    // twist offset; also produces nu, tau and the psi mass
    LinearRow edge_row(const EdgeInfo& e, const TwistData& twist, Rat& mass,
                       std::array<long, 2>* tau_out = nullptr) const {
        const auto& ch = chart(e.chart);
        std::array<std::array<std::array<Rat, 2>, 3>, 2> pos;
        std::array<std::array<const SubVert*, 3>, 2> vp;
        std::array<std::array<Rat, 3>, 2> twist_offsets{};
        for (int side = 0; side < 2; ++side) {
            const SubCell& cell = sub.cells[e.cells[side]];
            bool transported = e.seam && (static_cast<size_t>(side) == e.bside_cell);
            for (int k = 0; k < 3; ++k) {
                vp[side][k] = &cell.v[k];
                auto p = cell.v[k].position(ch);
                if (transported) {
                    p = apply_m(e.seam_m, p);
                    auto off = twist.offsets.find(e.seam_vertex);
                    if (off != twist.offsets.end())
                        twist_offsets[side][k] =
                            off->second[0] + off->second[1] * p[0] + off->second[2] * p[1];
                }
                pos[side][k] = p;
            }
        }
        // edge endpoints in the chart (seam edges sit on the M-fixed ray)
        auto pa = e.key.a.position(ch);
        auto pb = e.key.b.position(ch);
        std::array<Rat, 2> d = {pb[0] - pa[0], pb[1] - pa[1]};
        Rat len;
        std::array<long, 2> tau = primitive_direction(d, len);
        if (len < 0) {
            tau = {-tau[0], -tau[1]};
            len = -len;
        }
        std::array<long, 2> nu = {-tau[1], tau[0]};
        // orient toward side 1
        std::array<Rat, 2> bc1 = {Rat(0), Rat(0)};
        for (int k = 0; k < 3; ++k) {
            bc1[0] += pos[1][k][0];
            bc1[1] += pos[1][k][1];
        }
        Rat side_val = Rat(nu[0]) * (bc1[0] / 3 - pa[0]) + Rat(nu[1]) * (bc1[1] / 3 - pa[1]);
        if (side_val == 0) throw std::runtime_error("flank barycenter on the edge");
        if (side_val < 0) nu = {-nu[0], -nu[1]};
        Rat nn(nu[0] * nu[0] + nu[1] * nu[1]);

        LinearRow row;
        for (int side = 0; side < 2; ++side) {
            Rat sgn = (side == 1) ? Rat(1) : Rat(-1);
            auto g = gradient_coeffs(pos[side]);
            for (int k = 0; k < 3; ++k) {
                Rat c = sgn * (Rat(nu[0]) * g[0][k] + Rat(nu[1]) * g[1][k]) / nn;
                row.coef[*vp[side][k]] += c;
                row.offset += c * twist_offsets[side][k];
            }
        }

        // psi mass: transported density times a third of the flank areas
        mass = 0;
        for (int side = 0; side < 2; ++side) {
            const SubCell& cell = sub.cells[e.cells[side]];
            const auto& tr = s->cx.tris[cell.parent];
            int pchart = std::min({tr[0], tr[1], tr[2]});
            // linear part of (psi chart -> edge chart) on the parent triangle
            const auto& cp = chart(pchart);
            RatMat src = {{cp.at(tr[1])[0] - cp.at(tr[0])[0], cp.at(tr[2])[0] - cp.at(tr[0])[0]},
                          {cp.at(tr[1])[1] - cp.at(tr[0])[1], cp.at(tr[2])[1] - cp.at(tr[0])[1]}};
        const auto& ce = ch;
            std::array<std::array<Rat, 2>, 3> dstp;
            for (int k = 0; k < 3; ++k) {
                dstp[k] = {ce.at(tr[k])[0], ce.at(tr[k])[1]};
                if (e.seam && static_cast<size_t>(side) == e.bside_cell)
                    dstp[k] = apply_m(e.seam_m, dstp[k]);
            }
            RatMat dst = {{dstp[1][0] - dstp[0][0], dstp[2][0] - dstp[0][0]},
                          {dstp[1][1] - dstp[0][1], dstp[2][1] - dstp[0][1]}};
            Rat det = src[0][0] * src[1][1] - src[0][1] * src[1][0];
            RatMat inv = {{src[1][1] / det, -src[0][1] / det},
                          {-src[1][0] / det, src[0][0] / det}};
            RatMat lin = mat_mul(dst, inv);
            ConstForm11 g = transport_form(psi.at(cell.parent), lin);
            Rat q = Rat(nu[0]) * (g.g[0][0] * Rat(nu[0]) + g.g[0][1] * Rat(nu[1])) +
                    Rat(nu[1]) * (g.g[1][0] * Rat(nu[0]) + g.g[1][1] * Rat(nu[1]));
            Rat area = ((pos[side][1][0] - pos[side][0][0]) * (pos[side][2][1] - pos[side][0][1]) -
                        (pos[side][1][1] - pos[side][0][1]) * (pos[side][2][0] - pos[side][0][0]));
            if (area < 0) area = -area;
            area = area / 2;
            mass += (q / nn) * area / 3;
        }
        if (tau_out) *tau_out = tau;
        return row;
    }
};

} // namespace

KahlerOutcome kahler_feasibility(const AffineSurface& s, const KahlerOptions& opt) {
    KahlerOutcome out;
    KahlerContext ctx;
    ctx.build(s, opt.level);

    size_t n = ctx.sub.verts.size();
    RatMat A;
    RatVec b;
    for (const auto& e : ctx.edges) {
        Rat mass;
        LinearRow row = ctx.edge_row(e, opt.twist, mass);
        RatVec r(n, Rat(0));
        for (const auto& [v, c] : row.coef) r[ctx.sub.index_of(v)] += c;
        A.push_back(r);
        b.push_back(opt.epsilon * mass - row.offset);
    }
    // gauge: pin the first vertex value to zero
    {
        RatVec r(n, Rat(0));
        r[0] = 1;
        A.push_back(r);
        b.push_back(Rat(0));
        RatVec r2(n, Rat(0));
        r2[0] = -1;
        A.push_back(r2);
        b.push_back(Rat(0));
    }

    LPResult lp = lp_feasible(A, b);
    if (!lp.feasible) {
        out.note = "LP infeasible at subdivision level " + std::to_string(opt.level) +
                   " (refinement may still succeed)";
        return out;
    }
    out.feasible = true;
    KahlerCertificate cert;
    cert.model_hash = s.content_hash();
    cert.level = opt.level;
    cert.epsilon = opt.epsilon;
    cert.twist = opt.twist;
    for (size_t i = 0; i < n; ++i) cert.values[ctx.sub.verts[i]] = lp.x[i];
    for (const auto& e : ctx.edges) {
        Rat mass;
        LinearRow row = ctx.edge_row(e, opt.twist, mass);
        Rat lambda = row.offset;
        for (const auto& [v, c] : row.coef) lambda += c * cert.values.at(v);
        CertEdge ce;
        ce.a = e.key.a;
        ce.b = e.key.b;
        ce.chart = e.chart;
        ce.lambda = lambda;
        ce.mass = mass;
        cert.edges.push_back(ce);
    }
    out.cert = std::move(cert);
    return out;
}

VerifyResult verify_certificate(const AffineSurface& s, const KahlerCertificate& cert) {
    VerifyResult res;
    if (cert.model_hash != s.content_hash()) {
        res.reasons.push_back("model hash mismatch");
        return res;
    }
    KahlerContext ctx;
    ctx.build(s, cert.level);
    if (ctx.sub.verts.size() != cert.values.size()) {
        res.reasons.push_back("certificate value table does not match the subdivision");
        return res;
    }

    std::map<EdgeKey, Rat> stored;
    for (const auto& e : cert.edges) stored[make_edge(e.a, e.b)] = e.lambda;

    bool ok = true;
    std::map<EdgeKey, Rat> lambdas;
    for (const auto& e : ctx.edges) {
        Rat mass;
        LinearRow row = ctx.edge_row(e, cert.twist, mass);
        Rat lambda = row.offset;
        for (const auto& [v, c] : row.coef) lambda += c * cert.values.at(v);
        lambdas[e.key] = lambda;
        if (lambda < cert.epsilon * mass) {
            ok = false;
            res.reasons.push_back("edge bending below the psi bound");
        }
        auto it = stored.find(e.key);
        if (it != stored.end() && it->second != lambda) {
            ok = false;
            res.reasons.push_back("stored edge weight disagrees with the re-derived one");
        }
    }

    // balancing at every subdivision vertex (invariant-covector balance at
    // the marked vertices, full balance elsewhere; the B side of a cut is
    // developed through the monodromy)
    for (const auto& v : ctx.sub.verts) {
        std::set<int> carr = carrier(v);
        int cvert = *carr.begin();
        bool on_marked_ray = false;
        int mv = -1;
        IntMat2 mono = imat_identity();
        for (int u : carr)
            if (s.is_marked(u) && ctx.s->marks.count(u)) {
                for (const auto& mk : s.marks.at(u)) {
                    std::set<int> ray = {mk.ray_edge[0], mk.ray_edge[1]};
                    if (std::includes(ray.begin(), ray.end(), carr.begin(), carr.end())) {
                        on_marked_ray = true;
                        mv = u;
                        mono = mk.monodromy;
                    }
                }
            }
        if (on_marked_ray) cvert = mv;
        const auto& ch = ctx.chart(cvert);
        bool covered = true;
        for (const auto& e : ctx.edges) {
            if (!(e.key.a == v) && !(e.key.b == v)) continue;
            for (int u : carrier(e.key.a)) covered = covered && ch.count(u);
            for (int u : carrier(e.key.b)) covered = covered && ch.count(u);
        }
        if (!covered) continue;

        Rat sx(0), sy(0);
        for (const auto& e : ctx.edges) {
            bool at_a = (e.key.a == v), at_b = (e.key.b == v);
            if (!at_a && !at_b) continue;
            auto pa = e.key.a.position(ch);
            auto pb = e.key.b.position(ch);
            if (on_marked_ray) {
                // spokes into the transported side develop through M
                const auto& trB =
                    s.cx.tris[ctx.sub.cells[e.cells[e.bside_cell]].parent];
                (void)trB;
                // an incident edge lies on the B side iff both its flank
                // parents contain the directed (mv -> ray) edge's sector; we
                // detect it by the flank parents not containing the A side
                int rv = -1;
                for (const auto& mk : s.marks.at(mv))
                    if (mk.monodromy == mono) rv = mk.ray_edge[1];
                auto side_of = [&](const EdgeInfo& ee) {
                    // +1 = B side, -1 = A side, 0 = on the ray
                    bool hasB = false, hasA = false;
                    for (size_t k = 0; k < 2; ++k) {
                        const auto& tr = s.cx.tris[ctx.sub.cells[ee.cells[k]].parent];
                        for (int c2 = 0; c2 < 3; ++c2) {
                            if (tr[c2] == mv && tr[(c2 + 1) % 3] == rv) hasB = true;
                            if (tr[c2] == rv && tr[(c2 + 1) % 3] == mv) hasA = true;
                        }
                    }
                    if (hasB && hasA) return 0;
                    if (hasB) return 1;
                    if (hasA) return -1;
                    return 0;
                };
                int sd = side_of(e);
                if (sd == 1) {
                    pa = apply_m(mono, pa);
                    pb = apply_m(mono, pb);
                }
            }
            std::array<Rat, 2> d = at_a ? std::array<Rat, 2>{pb[0] - pa[0], pb[1] - pa[1]}
                                        : std::array<Rat, 2>{pa[0] - pb[0], pa[1] - pb[1]};
            Rat len;
            auto tau = primitive_direction(d, len);
            if (len < 0) tau = {-tau[0], -tau[1]};
            sx += lambdas.at(e.key) * Rat(tau[0]);
            sy += lambdas.at(e.key) * Rat(tau[1]);
        }
        bool balanced;
        if (carr.size() == 1 && s.is_marked(*carr.begin())) {
            balanced = true;
            for (const auto& xi : invariant_covectors(monodromy(s, *carr.begin())))
                if (xi[0] * sx + xi[1] * sy != 0) balanced = false;
        } else {
            balanced = (sx == 0 && sy == 0);
        }
        if (!balanced) {
            ok = false;
            res.reasons.push_back("vertex balance fails at " + v.str());
        }
    }

    res.accept = ok;
    return res;
}

CornerCurrent certificate_current(const AffineSurface& s, const KahlerCertificate& cert,
                                  std::vector<int>* edge_charts) {
    KahlerContext ctx;
    ctx.build(s, cert.level);
    CornerCurrent out;
    for (const auto& e : ctx.edges) {
        Rat mass;
        std::array<long, 2> tau;
        LinearRow row = ctx.edge_row(e, cert.twist, mass, &tau);
        Rat lambda = row.offset;
        for (const auto& [v, c] : row.coef) lambda += c * cert.values.at(v);
        const auto& ch = ctx.chart(e.chart);
        CurrentEdge ce;
        ce.p = e.key.a.position(ch);
        ce.q = e.key.b.position(ch);
        ce.tau = tau;
        ce.nu = {-tau[1], tau[0]};
        Rat len;
        std::array<Rat, 2> d = {ce.q[0] - ce.p[0], ce.q[1] - ce.p[1]};
        primitive_direction(d, len);
        ce.len = len < 0 ? -len : len;
        ce.weight = lambda;
        out.edges.push_back(ce);
        if (edge_charts) edge_charts->push_back(e.chart);
    }
    return out;
}

LiftedCurrent lift_certificate_current(const ModifiedSurface& M, const KahlerCertificate& cert) {
    LiftedCurrent lift;
    lift.sphere = certificate_current(M.base, cert);
    for (const auto& f : M.fins) {
        // restriction of the potential to the glued edge (i -> j), pulled
        // back over the fin as a function of the e-chart y coordinate
        int level = cert.level;
        int segs = 1 << level;
        std::vector<Rat> g(segs + 1);
        for (int k = 0; k <= segs; ++k) {
            Rat t(k, segs);
            t.canonicalize();
            SubVert v;
            if (t == 0) v = SubVert::corner(f.i);
            else if (t == 1) v = SubVert::corner(f.j);
            else {
                v.w[f.i] = Rat(1) - t;
                v.w[f.j] = t;
            }
            auto it = cert.values.find(v);
            if (it == cert.values.end())
                throw std::runtime_error("certificate misses a glued-edge vertex");
            g[k] = it->second;
        }
        // fin strip in the e chart: x in [0,1] along the collapse fiber,
        // y along the edge; bends of g produce horizontal edges
        PLChartFunction pf;
        for (int k = 0; k <= segs; ++k) {
            Rat y(k, segs);
            y.canonicalize();
            pf.pts.push_back({Rat(0), y});
            pf.pts.push_back({Rat(1), y});
            pf.values.push_back(g[k]);
            pf.values.push_back(g[k]);
        }
        for (int k = 0; k < segs; ++k) {
            int a = 2 * k, b = 2 * k + 1, c = 2 * k + 2, d = 2 * k + 3;
            pf.tris.push_back({a, b, c});
            pf.tris.push_back({b, d, c});
        }
        lift.fin[f.e] = corner_current(pf);
    }
    return lift;
}

CornerCurrent pushforward_lifted(const LiftedCurrent& t) {
    CornerCurrent out = t.sphere;
    for (const auto& [e, cur] : t.fin) {
        CornerCurrent img = pushforward_collapse(cur);
        for (const auto& ce : img.edges) out.edges.push_back(ce);
    }
    return out;
}

// ---- JSON ----

std::string TwistData::to_json() const {
    json j = json::object();
    for (const auto& [v, o] : offsets)
        j[std::to_string(v)] = {{"const", rat_str(o[0])},
                                {"dx", rat_str(o[1])},
                                {"dy", rat_str(o[2])}};
    return j.dump(2);
}

TwistData TwistData::from_json(const std::string& text) {
    TwistData t;
    json j = json::parse(text);
    for (const auto& [vs, o] : j.items())
        t.offsets[std::stoi(vs)] = {parse_rat(o.at("const").get<std::string>()),
                                    parse_rat(o.at("dx").get<std::string>()),
                                    parse_rat(o.at("dy").get<std::string>())};
    return t;
}

std::string KahlerCertificate::to_json() const {
    json j;
    j["format"] = "kahler-certificate/1";
    j["model_hash"] = model_hash;
    j["level"] = level;
    j["epsilon"] = rat_str(epsilon);
    j["twist"] = json::parse(twist.to_json());
    json vals = json::object();
    for (const auto& [v, x] : values) vals[v.str()] = rat_str(x);
    j["values"] = vals;
    json edges_j = json::array();
    for (const auto& e : edges)
        edges_j.push_back({{"a", e.a.str()},
                           {"b", e.b.str()},
                           {"chart", e.chart},
                           {"lambda", rat_str(e.lambda)},
                           {"mass", rat_str(e.mass)}});
    j["edges"] = edges_j;
    return j.dump(2);
}

KahlerCertificate KahlerCertificate::from_json(const std::string& text) {
    json j = json::parse(text);
    KahlerCertificate c;
    c.model_hash = j.at("model_hash").get<uint64_t>();
    c.level = j.at("level").get<int>();
    c.epsilon = parse_rat(j.at("epsilon").get<std::string>());
    c.twist = TwistData::from_json(j.at("twist").dump());
    for (const auto& [vs, x] : j.at("values").items())
        c.values[SubVert::parse(vs)] = parse_rat(x.get<std::string>());
    for (const auto& e : j.at("edges")) {
        CertEdge ce;
        ce.a = SubVert::parse(e.at("a").get<std::string>());
        ce.b = SubVert::parse(e.at("b").get<std::string>());
        ce.chart = e.at("chart").get<int>();
        ce.lambda = parse_rat(e.at("lambda").get<std::string>());
        ce.mass = parse_rat(e.at("mass").get<std::string>());
        c.edges.push_back(ce);
    }
    return c;
}

} // namespace sf
