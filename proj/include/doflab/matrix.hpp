#pragma once

#include <doflab/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace doflab {

// Dense rational matrix, row-major. Empty shapes (0 rows and/or 0 columns)
// are legal everywhere and have rank 0.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    // Row-major initializer, e.g. Matrix(2, 3, {1,2,3, 4,5,6}).
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<long> entries)
        : rows_(rows), cols_(cols) {
        if (entries.size() != rows * cols)
            throw std::invalid_argument("matrix initializer size mismatch");
        data_.reserve(entries.size());
        for (long v : entries) data_.emplace_back(v);
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Rational& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    // Leading-rows view: the submatrix of the first `count` rows.
    Matrix top_rows(std::size_t count) const {
        if (count > rows_) throw std::invalid_argument("top_rows: count > rows");
        Matrix m(count, cols_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        return m;
    }

    Matrix row(std::size_t r) const {
        Matrix m(1, cols_);
        for (std::size_t c = 0; c < cols_; ++c) m(0, c) = (*this)(r, c);
        return m;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < idx.size(); ++j) {
                if (idx[j] >= cols_) throw std::invalid_argument("column index out of range");
                m(r, j) = (*this)(r, idx[j]);
            }
        return m;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_) throw std::invalid_argument("row index out of range");
            for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
        }
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

// Columns of A followed by columns of B.
inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0 && a.rows() == 0) {
        // dimensionless empty acts as a left identity
        return b;
    }
    if (b.cols() == 0 && b.rows() == 0) return a;
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row count mismatch (" +
                                    std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

// Rows of A followed by rows of B.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column count mismatch (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.cols()) + ")");
    Matrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(a.rows() + r, c) = b(r, c);
    return m;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    Matrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(r, k) == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                if (b(k, c) == 0) continue;
                m(r, c) += a(r, k) * b(k, c);
            }
        }
    return m;
}

inline Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = s * a(r, c);
    return m;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c) + b(r, c);
    return m;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c) - b(r, c);
    return m;
}

inline bool is_zero(const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) return false;
    return true;
}

}  // namespace doflab
