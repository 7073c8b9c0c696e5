#pragma once

#include <optional>
#include <vector>

#include "lgm/rational.hpp"

namespace lgm {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>; // row-major, rectangular

Rat mat_det(RatMat a);                       // square
std::optional<RatMat> mat_inverse(RatMat a); // nullopt when singular
size_t mat_rank(RatMat a);

// Solves A x = b; nullopt when inconsistent. For underdetermined systems
// returns one particular solution (free variables set to zero).
std::optional<RatVec> mat_solve(RatMat a, RatVec b);

// Basis of the right kernel of A.
std::vector<RatVec> mat_nullspace(RatMat a);

// Minimal-norm style canonical solution: x = A^T y with (A A^T) y = b.
// Requires the system A x = b to be consistent; the result is the unique
// solution lying in the row space of A. nullopt when inconsistent.
std::optional<RatVec> mat_solve_rowspace(const RatMat& a, const RatVec& b);

RatVec mat_apply(const RatMat& a, const RatVec& x);
RatMat mat_transpose(const RatMat& a);
RatMat mat_mul(const RatMat& a, const RatMat& b);

} // namespace lgm
