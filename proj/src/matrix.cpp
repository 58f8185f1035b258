#include "sf/matrix.hpp"

#include <stdexcept>

namespace sf {

RatMat mat_zero(size_t rows, size_t cols) {
    return RatMat(rows, RatVec(cols, Rat(0)));
}

RatMat mat_identity(size_t n) {
    RatMat m = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    if (a.empty() || b.empty()) return {};
    size_t r = a.size(), k = b.size(), c = b[0].size();
    RatMat m = mat_zero(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
        }
    return m;
}

RatVec mat_apply(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

RatMat mat_transpose(const RatMat& a) {
    if (a.empty()) return {};
    RatMat t = mat_zero(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

size_t mat_rank(const RatMat& a) {
    if (a.empty() || a[0].empty()) return 0;
    size_t rows = a.size(), cols = a[0].size();
    // Clear denominators per row, then Bareiss.
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i) {
        mpz_class l(1);
        for (size_t j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].get_den().get_mpz_t());
        for (size_t j = 0; j < cols; ++j) {
            mpq_class v = a[i][j] * Rat(l);
            v.canonicalize();
            m[i][j] = v.get_num();
        }
    }
    size_t rank = 0;
    mpz_class prev(1);
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                mpz_class t = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

std::vector<size_t> mat_rref(RatMat& a) {
    std::vector<size_t> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = r;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Rat inv = Rat(1) / a[r][col];
        for (size_t j = col; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

std::vector<RatVec> mat_nullspace(const RatMat& a) {
    if (a.empty() || a[0].empty()) return {};
    RatMat m = a;
    std::vector<size_t> pivots = mat_rref(m);
    size_t cols = a[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> mat_solve(const RatMat& a, const RatVec& b) {
    if (a.empty()) {
        for (const Rat& x : b)
            if (x != 0) return std::nullopt;
        return RatVec{};
    }
    size_t rows = a.size(), cols = a[0].size();
    RatMat aug = a;
    for (size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<size_t> pivots = mat_rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;   // 0 = 1 row
    RatVec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

bool span_contains(const RatMat& rows, const RatVec& v) {
    bool vzero = true;
    for (const Rat& x : v)
        if (x != 0) { vzero = false; break; }
    if (vzero) return true;
    if (rows.empty()) return false;
    RatMat m = rows;
    size_t r0 = mat_rank(m);
    m.push_back(v);
    return mat_rank(m) == r0;
}

bool span_contains_all(const RatMat& rows, const RatMat& sub) {
    if (sub.empty()) return true;
    RatMat m = rows;
    size_t r0 = mat_rank(m);
    for (const auto& v : sub) m.push_back(v);
    return mat_rank(m) == r0;
}

RatMat row_basis(const RatMat& rows) {
    RatMat basis;
    for (const auto& v : rows) {
        if (!span_contains(basis, v)) basis.push_back(v);
    }
    return basis;
}

} // namespace sf
