#pragma once

#include "sf/rational.hpp"

#include <optional>
#include <vector>

namespace sf {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;   // row-major

RatMat mat_zero(size_t rows, size_t cols);
RatMat mat_identity(size_t n);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_apply(const RatMat& a, const RatVec& x);
RatMat mat_transpose(const RatMat& a);

// Exact rank via fraction-free (Bareiss) elimination on a cleared-denominator
// copy.
size_t mat_rank(const RatMat& a);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> mat_rref(RatMat& a);

// Basis of the right kernel, one vector per free column.
std::vector<RatVec> mat_nullspace(const RatMat& a);

// One solution of A x = b if consistent.
std::optional<RatVec> mat_solve(const RatMat& a, const RatVec& b);

// Is v in the row span of `rows`?
bool span_contains(const RatMat& rows, const RatVec& v);

// Are all rows of `sub` in the row span of `rows`?
bool span_contains_all(const RatMat& rows, const RatMat& sub);

// Row basis (subset of rows forming a basis of the row span).
RatMat row_basis(const RatMat& rows);

} // namespace sf
