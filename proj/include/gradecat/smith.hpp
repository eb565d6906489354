#pragma once

#include "gradecat/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gradecat {

using IntMatrix = Matrix<Integer>;

struct SmithForm {
    IntMatrix D;  // same shape as the input
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix V;  // cols x cols, unimodular
    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

inline IntMatrix to_int_matrix(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

namespace detail {

// floor division for possibly negative operands
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

// Returns U, V unimodular with U * M * V = D, D diagonal, nonnegative, d_1 | d_2 | ...
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithForm s{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
    IntMatrix& d = s.D;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        d.swap_rows(a, b);
        s.U.swap_rows(a, b);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        d.swap_cols(a, b);
        s.V.swap_cols(a, b);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
        d.add_row(dst, src, f);
        s.U.add_row(dst, src, f);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f) {
        d.add_col(dst, src, f);
        s.V.add_col(dst, src, f);
    };

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        // pick the smallest nonzero entry in the remaining block as pivot
        bool found = false;
        std::size_t pr = t, pc = t;
        Integer best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d(i, j) == 0) continue;
                Integer a = abs(d(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (!found) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                add_row(i, t, -detail::floor_div(d(i, t), d(t, t)));
                if (d(i, t) != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                add_col(j, t, -detail::floor_div(d(t, j), d(t, t)));
                if (d(t, j) != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // enforce divisibility of the rest of the block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(t, i, Integer(1));
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j) s.U(t, j) = -s.U(t, j);
        }
    }
    return s;
}

inline Integer determinant(IntMatrix a) {
    // fraction-free Bareiss elimination
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace gradecat
