#pragma once

#include <stdexcept>
#include <vector>

namespace sf {

// Strictly increasing list of variable indices in 1..n.
using MultiIndex = std::vector<int>;

// Position sign of i inside I: (-1)^(l-1) where i is the l-th smallest element.
inline int sgn_in(int i, const MultiIndex& I) {
    for (size_t l = 0; l < I.size(); ++l)
        if (I[l] == i) return (l % 2 == 0) ? 1 : -1;
    throw std::domain_error("sgn: index not a member of the multi-index");
}

inline bool contains(const MultiIndex& I, int i) {
    for (int v : I) if (v == i) return true;
    return false;
}

// I u {i} assuming i not in I; `sign` receives the shuffle sign of moving
// the new factor from the front into its sorted slot.
inline MultiIndex insert_index(const MultiIndex& I, int i, int& sign) {
    MultiIndex r;
    r.reserve(I.size() + 1);
    size_t l = 0;
    while (l < I.size() && I[l] < i) r.push_back(I[l++]);
    sign = (l % 2 == 0) ? 1 : -1;
    r.push_back(i);
    while (l < I.size()) r.push_back(I[l++]);
    return r;
}

inline MultiIndex remove_index(const MultiIndex& I, int i) {
    MultiIndex r;
    r.reserve(I.size() - 1);
    for (int v : I) if (v != i) r.push_back(v);
    return r;
}

// Sign of merging two disjoint ascending lists (A then B) into one ascending
// list, 0 if they intersect.
inline int merge_sign(const MultiIndex& A, const MultiIndex& B, MultiIndex& out) {
    out.clear();
    out.reserve(A.size() + B.size());
    size_t a = 0, b = 0;
    int inversions = 0;
    while (a < A.size() && b < B.size()) {
        if (A[a] == B[b]) return 0;
        if (A[a] < B[b]) {
            out.push_back(A[a++]);
        } else {
            inversions += static_cast<int>(A.size() - a);
            out.push_back(B[b++]);
        }
    }
    while (a < A.size()) out.push_back(A[a++]);
    while (b < B.size()) out.push_back(B[b++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

} // namespace sf
