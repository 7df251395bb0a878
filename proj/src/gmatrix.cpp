#include "pnc/gmatrix.hpp"

#include <stdexcept>
#include <utility>

#include "pnc/errors.hpp"

namespace pnc {

GMatrix GMatrix::identity(int n) {
    GMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = {1, 0};
    return m;
}

GMatrix GMatrix::diagonal(const std::vector<GaussInt>& d) {
    GMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

GMatrix GMatrix::scalar(int n, const GaussInt& s) {
    GMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
}

GMatrix operator*(const GMatrix& x, const GMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("GMatrix: dimension mismatch in *");
    GMatrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const GaussInt& v = x.at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

GMatrix operator+(const GMatrix& x, const GMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("GMatrix: dimension mismatch in +");
    GMatrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
    return out;
}

GMatrix operator-(const GMatrix& x, const GMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("GMatrix: dimension mismatch in -");
    GMatrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
    return out;
}

void GMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
}

void GMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
}

void GMatrix::row_axpy(int i, int j, const GaussInt& q) {
    for (int c = 0; c < cols; ++c) at(i, c) -= q * at(j, c);
}

void GMatrix::col_axpy(int i, int j, const GaussInt& q) {
    for (int r = 0; r < rows; ++r) at(r, i) -= q * at(r, j);
}

void GMatrix::scale_row(int i, const GaussInt& u) {
    for (int c = 0; c < cols; ++c) at(i, c) = u * at(i, c);
}

void GMatrix::scale_col(int j, const GaussInt& u) {
    for (int r = 0; r < rows; ++r) at(r, j) = u * at(r, j);
}

void GMatrix::row_pair_transform(int a, int b, const GaussInt& x, const GaussInt& y,
                                 const GaussInt& u, const GaussInt& v) {
    for (int c = 0; c < cols; ++c) {
        GaussInt ra = at(a, c), rb = at(b, c);
        at(a, c) = x * ra + y * rb;
        at(b, c) = u * ra + v * rb;
    }
}

void GMatrix::col_pair_transform(int a, int b, const GaussInt& x, const GaussInt& y,
                                 const GaussInt& u, const GaussInt& v) {
    for (int r = 0; r < rows; ++r) {
        GaussInt ca = at(r, a), cb = at(r, b);
        at(r, a) = x * ca + y * cb;
        at(r, b) = u * ca + v * cb;
    }
}

bool is_diagonal(const GMatrix& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j && !m.at(i, j).is_zero()) return false;
    return true;
}

namespace {

GaussInt det_cofactor(const GMatrix& m, std::vector<int> cols_left, int row) {
    if (cols_left.size() == 1) return m.at(row, cols_left[0]);
    GaussInt sum;
    for (std::size_t k = 0; k < cols_left.size(); ++k) {
        const GaussInt& pivot = m.at(row, cols_left[k]);
        if (pivot.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(cols_left.size() - 1);
        for (std::size_t t = 0; t < cols_left.size(); ++t)
            if (t != k) rest.push_back(cols_left[t]);
        GaussInt sub = det_cofactor(m, std::move(rest), row + 1);
        GaussInt term = pivot * sub;
        sum = (k % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
}

GaussInt det_bareiss(GMatrix w) {
    const int n = w.rows;
    GaussInt sign{1, 0};
    GaussInt prev{1, 0};
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k).is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return {0, 0};
            w.swap_rows(k, swap_row);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                GaussInt num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = div_exact(num, prev);
            }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

}  // namespace

GaussInt det(const GMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det: matrix not square");
    if (m.rows == 0) return {1, 0};
    if (m.rows <= 4) {
        std::vector<int> cols(static_cast<std::size_t>(m.cols));
        for (int j = 0; j < m.cols; ++j) cols[static_cast<std::size_t>(j)] = j;
        return det_cofactor(m, std::move(cols), 0);
    }
    return det_bareiss(m);
}

GMatrix unimodular_inverse(const GMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("unimodular_inverse: matrix not square");
    const int n = m.rows;
    GMatrix w = m;
    GMatrix e = GMatrix::identity(n);

    // Euclidean row reduction to upper triangular form.
    for (int t = 0; t < n; ++t) {
        while (true) {
            int pivot = -1;
            for (int i = t; i < n; ++i) {
                if (w.at(i, t).is_zero()) continue;
                if (pivot < 0 || norm(w.at(i, t)) < norm(w.at(pivot, t))) pivot = i;
            }
            if (pivot < 0) throw not_invertible_error("unimodular_inverse: singular matrix");
            if (pivot != t) {
                w.swap_rows(t, pivot);
                e.swap_rows(t, pivot);
            }
            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (w.at(i, t).is_zero()) continue;
                GaussInt q = divmod(w.at(i, t), w.at(t, t)).q;
                if (!q.is_zero()) {
                    w.row_axpy(i, t, q);
                    e.row_axpy(i, t, q);
                }
                if (!w.at(i, t).is_zero()) clean = false;
            }
            if (clean) break;
        }
    }
    // Determinant is the product of diagonal entries (up to the swaps' sign);
    // it is a unit iff every diagonal entry is.
    for (int t = 0; t < n; ++t) {
        if (!w.at(t, t).is_unit())
            throw not_invertible_error("unimodular_inverse: determinant is not a unit of Z[i]");
        GaussInt u = w.at(t, t).conj();  // inverse of a unit
        w.scale_row(t, u);
        e.scale_row(t, u);
    }
    // Back substitution; diagonal is 1.
    for (int t = n - 1; t >= 0; --t)
        for (int i = 0; i < t; ++i) {
            GaussInt q = w.at(i, t);
            if (!q.is_zero()) {
                w.row_axpy(i, t, q);
                e.row_axpy(i, t, q);
            }
        }
    return e;
}

}  // namespace pnc
