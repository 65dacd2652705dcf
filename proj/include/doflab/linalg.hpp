#pragma once

#include <doflab/matrix.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace doflab {

namespace detail {

// Row-scale a rational matrix to integers (multiply each row by the lcm of
// its denominators). Row scaling by nonzero constants preserves rank.
inline std::vector<std::vector<Integer>> integer_rows(const Matrix& m) {
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            l = lcm(l, den(m(r, c)));
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = num(m(r, c)) * (l / den(m(r, c)));
    }
    return out;
}

}  // namespace detail

// Exact rank by fraction-free (Bareiss) elimination. Entries stay integral
// throughout, which bounds coefficient growth to minors of the input.
inline std::size_t rank_of(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = detail::integer_rows(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Reduced row echelon form; returns the reduced matrix and pivot columns.
inline std::pair<Matrix, std::vector<std::size_t>> rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(r, pivot);
        const Rational inv = a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) /= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

// Basis of the row space, as the nonzero rows of the RREF.
inline Matrix rowspace_basis(const Matrix& m) {
    auto [red, pivots] = rref(m);
    return red.top_rows(pivots.size());
}

// Basis of {x : M x = 0}, one basis vector per row of the result.
inline Matrix nullspace_basis(const Matrix& m) {
    const std::size_t c = m.cols();
    if (m.rows() == 0) return Matrix::identity(c);
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(c, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    Matrix basis(c - pivots.size(), c);
    std::size_t row = 0;
    for (std::size_t f = 0; f < c; ++f) {
        if (is_pivot[f]) continue;
        basis(row, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis(row, pivots[i]) = -red(i, f);
        ++row;
    }
    return basis;
}

inline Rational determinant(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    Matrix a = m;
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a(pivot, c) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != c) {
            a.swap_rows(c, pivot);
            det = -det;
        }
        det *= a(c, c);
        const Rational inv = a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

// Exact solution of a square system A x = b, if A is nonsingular.
inline std::optional<std::vector<Rational>> solve_square(const Matrix& a,
                                                         const std::vector<Rational>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw std::invalid_argument("solve_square: shape mismatch");
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    auto [red, pivots] = rref(aug);
    if (pivots.size() != n || (!pivots.empty() && pivots.back() == n))
        return std::nullopt;  // singular (or inconsistent)
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = red(r, n);
    return x;
}

// Full-row-rank N with cols(M) - rows(M) rows such that M N^T = 0 and
// [M; N] has full rank cols(M). M itself must have full row rank.
inline Matrix orthogonal_complement(const Matrix& m) {
    if (m.rows() > 0 && rank_of(m) != m.rows())
        throw std::domain_error("orthogonal_complement: degenerate input (not full row rank)");
    return nullspace_basis(m);
}

// rank[A ; B] - rank[B]; the marginal row-space dimension A adds over B.
inline std::size_t conditional_rank(const Matrix& a, const Matrix& b) {
    const bool a_dimless = a.rows() == 0 && a.cols() == 0;
    const bool b_dimless = b.rows() == 0 && b.cols() == 0;
    if (!a_dimless && !b_dimless && a.cols() != b.cols())
        throw std::invalid_argument("conditional_rank: column count mismatch");
    return rank_of(vstack(a, b)) - rank_of(b);
}

// Dimension of {w in rowspan(M) : w restricted to zero_cols is zero}.
// Computed from a row-space basis and the rank of its restriction, not from
// any rank-difference identity, so it can serve as an independent check of
// the latter.
inline std::size_t coordinate_intersection_dim(const Matrix& m,
                                               const std::vector<std::size_t>& zero_cols) {
    for (std::size_t c : zero_cols)
        if (c >= m.cols())
            throw std::invalid_argument("coordinate_intersection_dim: column index out of range");
    Matrix basis = rowspace_basis(m);
    return basis.rows() - rank_of(basis.columns(zero_cols));
}

}  // namespace doflab
