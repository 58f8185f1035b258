#include "sf/lp.hpp"

#include <stdexcept>

namespace sf {

/*
 * Phase-I simplex on the standard form obtained from A x >= b by writing
 * x = xp - xm, subtracting surplus variables and adding one artificial per
 * row: minimize the artificial sum; feasible iff the optimum is zero.
 * Bland's rule keeps the exact pivoting finite.
 */
LPResult lp_feasible(const RatMat& A, const RatVec& b) {
    LPResult out;
    size_t m = A.size();
    size_t n = A.empty() ? 0 : A[0].size();
    if (m == 0) {
        out.feasible = true;
        out.x.assign(n, Rat(0));
        return out;
    }
    size_t nv = 2 * n + m;        // xp, xm, surplus
    size_t total = nv + m;        // + artificials
    // tableau rows: [coefs | rhs], all rhs >= 0
    RatMat T(m, RatVec(total + 1, Rat(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        int sign = (b[i] >= 0) ? 1 : -1;
        for (size_t j = 0; j < n; ++j) {
            T[i][j] = Rat(sign) * A[i][j];
            T[i][n + j] = Rat(-sign) * A[i][j];
        }
        T[i][2 * n + i] = Rat(-sign);   // surplus: A x - s = b
        T[i][nv + i] = 1;               // artificial
        T[i][total] = Rat(sign) * b[i];
        basis[i] = nv + i;
    }
    // reduced costs for min sum(artificials): z_j - c_j with c = e_{art}
    RatVec cost(total, Rat(0));
    Rat obj(0);
    for (size_t j = 0; j < total; ++j) {
        Rat s(0);
        for (size_t i = 0; i < m; ++i) s += T[i][j];
        cost[j] = s - Rat(j >= nv ? 1 : 0);
    }
    for (size_t i = 0; i < m; ++i) obj += T[i][total];

    auto pivot = [&](size_t pr, size_t pc) {
        Rat pv = T[pr][pc];
        for (size_t j = 0; j <= total; ++j) T[pr][j] /= pv;
        for (size_t i = 0; i < m; ++i) {
            if (i == pr || T[i][pc] == 0) continue;
            Rat f = T[i][pc];
            for (size_t j = 0; j <= total; ++j) T[i][j] -= f * T[pr][j];
        }
        Rat f = cost[pc];
        if (f != 0) {
            for (size_t j = 0; j < total; ++j) cost[j] -= f * T[pr][j];
            obj -= f * T[pr][total];
        }
        basis[pr] = pc;
    };

    while (true) {
        size_t pc = total;
        for (size_t j = 0; j < total; ++j)
            if (cost[j] > 0) { pc = j; break; }   // Bland: smallest index
        if (pc == total) break;
        size_t pr = m;
        for (size_t i = 0; i < m; ++i) {
            if (T[i][pc] <= 0) continue;
            if (pr == m) { pr = i; continue; }
            Rat cand = T[i][total] / T[i][pc];
            Rat best = T[pr][total] / T[pr][pc];
            if (cand < best || (cand == best && basis[i] < basis[pr])) pr = i;
        }
        if (pr == m) throw std::runtime_error("phase-I unbounded; malformed tableau");
        pivot(pr, pc);
    }

    if (obj != 0) return out;   // infeasible
    out.feasible = true;
    out.x.assign(n, Rat(0));
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < n) out.x[basis[i]] += T[i][total];
        else if (basis[i] < 2 * n) out.x[basis[i] - n] -= T[i][total];
    }
    return out;
}

} // namespace sf
