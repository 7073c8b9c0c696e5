#include "lgm/linalg.hpp"

#include <cassert>

namespace lgm {

namespace {

// Row echelon with partial pivoting by first nonzero; returns pivot columns.
// `rhs` (optional, same row count) is carried along.
std::vector<int> echelon(RatMat& a, RatMat* rhs) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
        Rat inv = Rat(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        if (rhs)
            for (auto& x : (*rhs)[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            if (rhs)
                for (size_t j = 0; j < (*rhs)[i].size(); ++j)
                    (*rhs)[i][j] -= f * (*rhs)[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

} // namespace

Rat mat_det(RatMat a) {
    const size_t n = a.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Rat inv = Rat(1) / a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::optional<RatMat> mat_inverse(RatMat a) {
    const size_t n = a.size();
    RatMat id(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    auto pivots = echelon(a, &id);
    if (pivots.size() != n) return std::nullopt;
    return id;
}

size_t mat_rank(RatMat a) { return echelon(a, nullptr).size(); }

std::optional<RatVec> mat_solve(RatMat a, RatVec b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    RatMat rhs(rows, RatVec(1));
    for (size_t i = 0; i < rows; ++i) rhs[i][0] = b[i];
    auto pivots = echelon(a, &rhs);
    RatVec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r][0];
    // Inconsistent when a zero row has nonzero rhs.
    for (size_t r = pivots.size(); r < rows; ++r)
        if (rhs[r][0] != 0) return std::nullopt;
    return x;
}

std::vector<RatVec> mat_nullspace(RatMat a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    auto pivots = echelon(a, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVec> out;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVec v(cols, Rat(0));
        v[fc] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][fc];
        out.push_back(std::move(v));
    }
    return out;
}

RatVec mat_apply(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

RatMat mat_transpose(const RatMat& a) {
    if (a.empty()) return {};
    RatMat t(a[0].size(), RatVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    const size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    RatMat c(n, RatVec(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

std::optional<RatVec> mat_solve_rowspace(const RatMat& a, const RatVec& b) {
    RatMat at = mat_transpose(a);
    auto y = mat_solve(mat_mul(a, at), b);
    if (!y) return std::nullopt;
    RatVec x = mat_apply(at, *y);
    // A x = b must hold; A A^T y = b alone does not imply it when b is
    // outside the column space.
    RatVec check = mat_apply(a, x);
    for (size_t i = 0; i < b.size(); ++i)
        if (check[i] != b[i]) return std::nullopt;
    return x;
}

} // namespace lgm
