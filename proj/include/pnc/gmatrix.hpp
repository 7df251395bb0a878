#pragma once

#include <vector>

#include "pnc/gint.hpp"

namespace pnc {

// Dense matrix over Z[i], row-major.
struct GMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<GaussInt> a;

    GMatrix() = default;
    GMatrix(int rows_, int cols_) : rows(rows_), cols(cols_), a(static_cast<std::size_t>(rows_) * cols_) {}

    GaussInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const GaussInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool is_square() const { return rows == cols; }

    static GMatrix identity(int n);
    static GMatrix diagonal(const std::vector<GaussInt>& d);
    static GMatrix scalar(int n, const GaussInt& s);

    friend GMatrix operator*(const GMatrix& x, const GMatrix& y);
    friend GMatrix operator+(const GMatrix& x, const GMatrix& y);
    friend GMatrix operator-(const GMatrix& x, const GMatrix& y);
    friend bool operator==(const GMatrix&, const GMatrix&) = default;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    // row i -= q * row j  /  col i -= q * col j
    void row_axpy(int i, int j, const GaussInt& q);
    void col_axpy(int i, int j, const GaussInt& q);
    void scale_row(int i, const GaussInt& u);
    void scale_col(int j, const GaussInt& u);
    // (row_a, row_b) <- (x row_a + y row_b, u row_a + v row_b); caller keeps xv - yu a unit
    void row_pair_transform(int a, int b, const GaussInt& x, const GaussInt& y, const GaussInt& u,
                            const GaussInt& v);
    void col_pair_transform(int a, int b, const GaussInt& x, const GaussInt& y, const GaussInt& u,
                            const GaussInt& v);
};

// Exact determinant: cofactor expansion for n <= 4, fraction-free Bareiss above.
GaussInt det(const GMatrix& m);

// Inverse of a matrix whose determinant is a unit of Z[i]; exact. Throws
// not_invertible_error otherwise.
GMatrix unimodular_inverse(const GMatrix& m);

bool is_diagonal(const GMatrix& m);

}  // namespace pnc
