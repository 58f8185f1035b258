#include "sf/integrate.hpp"

#include <stdexcept>

namespace sf {

Polynomial top_coefficient(const Superform& a) {
    int n = a.vars();
    if (a.p() != n || a.q() != n)
        throw std::invalid_argument("top_coefficient requires bidegree (n,n)");
    MultiIndex full;
    for (int i = 1; i <= n; ++i) full.push_back(i);
    Polynomial g(n);
    auto it = a.terms().find(std::make_pair(full, full));
    if (it != a.terms().end()) g = it->second;
    // Interleaving d'x_1 d''x_1 ... vs the canonical d'x_{1..n} ^ d''x_{1..n}
    // order costs (-1)^{n(n-1)/2}.
    int s = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
    return g * Rat(s);
}

namespace {

// integral over the standard simplex {x >= 0, sum x <= 1} of x^m:
// (prod m_i!) / (n + sum m_i)!
Rat std_simplex_monomial(const Monomial& m) {
    mpz_class num(1);
    long total = 0;
    for (auto e : m) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), e);
        num *= f;
        total += e;
    }
    mpz_class den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(total + m.size()));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat det_of(const RatMat& cols_as_rows) {
    RatMat m = cols_as_rows;
    size_t n = m.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

} // namespace

Rat integrate_poly_simplex(const Polynomial& g, const std::vector<RatVec>& verts,
                           int orientation) {
    int n = g.vars();
    if (static_cast<int>(verts.size()) != n + 1)
        throw std::invalid_argument("simplex needs n+1 vertices");
    // x = v0 + sum t_i (v_i - v0)
    RatMat edge(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) edge[i][j] = verts[i + 1][j] - verts[0][j];
    Rat det = det_of(edge);
    if (det == 0) throw std::invalid_argument("degenerate simplex");
    std::vector<Polynomial> subs;
    for (int j = 0; j < n; ++j) {
        Polynomial s(n, verts[0][j]);
        for (int i = 0; i < n; ++i)
            s += Polynomial::variable(n, i + 1) * edge[i][j];
        subs.push_back(s);
    }
    Polynomial h = g.substitute(subs);
    Rat total(0);
    for (const auto& [m, c] : h.terms()) total += c * std_simplex_monomial(m);
    Rat vol = det;
    if (vol < 0) vol = -vol;
    return total * vol * Rat(orientation);
}

Rat integrate_poly_box(const Polynomial& g, const RatVec& lo, const RatVec& hi) {
    int n = g.vars();
    Rat total(0);
    for (const auto& [m, c] : g.terms()) {
        Rat t = c;
        for (int i = 0; i < n; ++i) {
            unsigned long e = m[i];
            Rat hp(1), lp(1);
            for (unsigned long k = 0; k <= e; ++k) { hp *= hi[i]; }
            for (unsigned long k = 0; k <= e; ++k) { lp *= lo[i]; }
            Rat div(1, e + 1);
            div.canonicalize();
            t *= (hp - lp) * div;
        }
        total += t;
    }
    return total;
}

Rat integrate_poly_polygon(const Polynomial& g, const std::vector<RatVec>& pts) {
    if (g.vars() != 2) throw std::invalid_argument("polygon integration is 2D");
    if (pts.size() < 3) throw std::invalid_argument("degenerate polygon");
    Rat total(0);
    for (size_t k = 1; k + 1 < pts.size(); ++k) {
        RatMat edge = {{pts[k][0] - pts[0][0], pts[k][1] - pts[0][1]},
                       {pts[k + 1][0] - pts[0][0], pts[k + 1][1] - pts[0][1]}};
        Rat det = det_of(edge);
        if (det == 0) continue;
        int orient = det > 0 ? 1 : -1;
        total += integrate_poly_simplex(g, {pts[0], pts[k], pts[k + 1]}, orient);
    }
    return total;
}

Rat integrate_simplex(const Superform& a, const std::vector<RatVec>& verts, int orientation) {
    return integrate_poly_simplex(top_coefficient(a), verts, orientation);
}

Rat integrate_box(const Superform& a, const RatVec& lo, const RatVec& hi) {
    return integrate_poly_box(top_coefficient(a), lo, hi);
}

Rat integrate_polygon(const Superform& a, const std::vector<RatVec>& pts) {
    return integrate_poly_polygon(top_coefficient(a), pts);
}

} // namespace sf
