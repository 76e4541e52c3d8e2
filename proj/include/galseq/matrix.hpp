#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "rational.hpp"

namespace galseq {

// Dense matrix over an arbitrary commutative ring T.  Division-based
// routines (solve, det, kernel) additionally require the free functions
// inv(T) and is_zero(T), found by argument-dependent lookup; inv must throw
// on non-invertible input.  Pivoting always takes the first non-zero entry
// in column order so that every run of the library performs the identical
// sequence of exact operations.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw error("Matrix: shape mismatch in addition");
        Matrix m = a;
        for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] += b.e_[k];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw error("Matrix: shape mismatch in subtraction");
        Matrix m = a;
        for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] -= b.e_[k];
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw error("Matrix: shape mismatch in product");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<T> e_;
};

namespace detail {

// Reduce [M | B] to echelon form in place.  Returns the pivot column of each
// pivot row; rows beyond the returned count are zero in the M block.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, std::size_t lhsCols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < lhsCols && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && is_zero(m(pr, col))) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(row, j));
        T pivInv = inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * pivInv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            T factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

// Solve M X = B for square invertible M.  Throws singular_matrix_error when
// M is rank deficient.
template <class T>
Matrix<T> mat_solve(const Matrix<T>& m, const Matrix<T>& b) {
    if (m.rows() != m.cols()) throw error("mat_solve: matrix must be square");
    if (b.rows() != m.rows()) throw error("mat_solve: right-hand side shape mismatch");
    const std::size_t n = m.rows();
    Matrix<T> aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    auto pivots = detail::row_reduce(aug, n);
    if (pivots.size() != n)
        throw singular_matrix_error("mat_solve: matrix is singular (rank " +
                                    std::to_string(pivots.size()) + " of " +
                                    std::to_string(n) + ")");
    Matrix<T> x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

template <class T>
Matrix<T> mat_inverse(const Matrix<T>& m, const T& one) {
    return mat_solve(m, Matrix<T>::identity(m.rows(), one));
}

// Determinant by Gaussian elimination over a field.
template <class T>
T mat_det(Matrix<T> m) {
    if (m.rows() != m.cols()) throw error("mat_det: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) throw error("mat_det: empty matrix");
    T det = m(0, 0) - m(0, 0); // additive zero of T
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && is_zero(m(pr, col))) ++pr;
        if (pr == n) return det; // zero
        if (pr != col) {
            negate = !negate;
            for (std::size_t j = col; j < n; ++j) std::swap(m(pr, j), m(col, j));
        }
        T pivInv = inv(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col))) continue;
            T factor = m(i, col) * pivInv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
        }
    }
    det = m(0, 0);
    for (std::size_t i = 1; i < n; ++i) det = det * m(i, i);
    if (negate) det = det - det - det; // -det without requiring unary minus
    return det;
}

// A non-zero vector in the kernel of M (columns as unknowns), or nullopt if
// the columns are linearly independent.  The reported vector corresponds to
// the first free column and has that coordinate equal to one.
template <class T>
std::optional<std::vector<T>> mat_kernel_vector(Matrix<T> m, const T& one) {
    auto pivots = detail::row_reduce(m, m.cols());
    if (pivots.size() == m.cols()) return std::nullopt;
    // First column that is not a pivot column.
    std::size_t freeCol = 0;
    {
        std::vector<bool> isPivot(m.cols(), false);
        for (std::size_t c : pivots) isPivot[c] = true;
        while (freeCol < m.cols() && isPivot[freeCol]) ++freeCol;
    }
    std::vector<T> v(m.cols(), one - one);
    v[freeCol] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= freeCol) break;
        v[pivots[r]] = (one - one) - m(r, freeCol);
    }
    return v;
}

// Basis of the kernel of M (columns as unknowns); one vector per free
// column, with that coordinate set to one.
template <class T>
std::vector<std::vector<T>> mat_kernel_basis(Matrix<T> m, const T& one) {
    auto pivots = detail::row_reduce(m, m.cols());
    std::vector<bool> isPivot(m.cols(), false);
    for (std::size_t c : pivots) isPivot[c] = true;
    std::vector<std::vector<T>> basis;
    const T zero = one - one;
    for (std::size_t freeCol = 0; freeCol < m.cols(); ++freeCol) {
        if (isPivot[freeCol]) continue;
        std::vector<T> v(m.cols(), zero);
        v[freeCol] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= freeCol) break;
            v[pivots[r]] = zero - m(r, freeCol);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Fraction-free determinant of an integer matrix (Bareiss).  Every division
// below is exact, so the computation stays in Integer throughout.
inline Integer mat_det_bareiss(Matrix<Integer> m) {
    if (m.rows() != m.cols()) throw error("mat_det_bareiss: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) throw error("mat_det_bareiss: empty matrix");
    Integer prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t pr = k + 1;
            while (pr < n && m(pr, k) == 0) ++pr;
            if (pr == n) return Integer(0);
            negate = !negate;
            for (std::size_t j = k; j < n; ++j) std::swap(m(pr, j), m(k, j));
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = int_divexact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    Integer det = m(n - 1, n - 1);
    return negate ? Integer(-det) : det;
}

// Determinant of a rational matrix, done fraction-free after clearing row
// denominators.
inline Rational mat_det_exact(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw error("mat_det_exact: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) throw error("mat_det_exact: empty matrix");
    Matrix<Integer> mi(n, n);
    Rational scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) l = int_lcm(l, m(i, j).den());
        scale *= Rational(Integer(1), l);
        for (std::size_t j = 0; j < n; ++j)
            mi(i, j) = (m(i, j) * Rational(l)).to_integer();
    }
    return Rational(mat_det_bareiss(std::move(mi))) * scale;
}

} // namespace galseq
