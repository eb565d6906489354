#pragma once

#include "gradecat/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gradecat {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& factor) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }
    // col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const T& factor) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix c = a;
        for (std::size_t n = 0; n < c.data_.size(); ++n) c.data_[n] += b.data_[n];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalVector = std::vector<Rational>;

// Incrementally maintained row-echelon basis of a subspace of Q^n.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<RationalVector>& rows() const noexcept { return rows_; }

    // Reduces v against the basis; returns the residual.
    RationalVector reduce(RationalVector v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& c = v[pivots_[r]];
            if (c == 0) continue;
            Rational factor = c;
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[r][j] != 0) v[j] -= factor * rows_[r][j];
        }
        return v;
    }

    bool contains(const RationalVector& v) const {
        auto res = reduce(v);
        return std::all_of(res.begin(), res.end(), [](const Rational& x) { return x == 0; });
    }

    // Returns true if v was independent and has been added.
    bool insert(RationalVector v) {
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0) ++p;
        if (p == dim_) return false;
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        // keep rows fully reduced so reduce() stays a single pass
        for (auto& row : rows_) {
            if (row[p] == 0) continue;
            Rational f = row[p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (v[j] != 0) row[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    std::size_t dim_;
    std::vector<RationalVector> rows_;
    std::vector<std::size_t> pivots_;
};

// Solves A x = b exactly; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<RationalVector> solve_linear(Matrix<Rational> a, RationalVector b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw std::invalid_argument("solve_linear: rhs size mismatch");
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a(sel, col) == 0) ++sel;
        if (sel == m) continue;
        a.swap_rows(sel, row);
        std::swap(b[sel], b[row]);
        Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = col; j < n; ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
            b[i] -= f * b[row];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    RationalVector x(n, Rational(0));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) x[pivot_cols[r]] = b[r];
    return x;
}

// Basis of { x : A x = 0 }.
inline std::vector<RationalVector> nullspace(Matrix<Rational> a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a(sel, col) == 0) ++sel;
        if (sel == m) continue;
        a.swap_rows(sel, row);
        Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = col; j < n; ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(n, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace gradecat
