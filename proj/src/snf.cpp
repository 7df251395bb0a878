#include "pnc/snf.hpp"

#include <stdexcept>

#include "pnc/errors.hpp"

namespace pnc {

SnfResult smith_normal_form(const GMatrix& j) {
    if (!j.is_square()) throw std::invalid_argument("smith_normal_form: matrix not square");
    const int n = j.rows;

    GMatrix w = j;
    GMatrix p = GMatrix::identity(n);
    GMatrix q = GMatrix::identity(n);

    // Kannan-Bachem style: pivot on the minimal-norm nonzero entry of the
    // trailing block, clear its row and column by Euclidean reduction, and
    // repair divisibility violations by folding the offending row into the
    // pivot row. Entry growth is checked, never silent: adversarial dense
    // inputs beyond the tested scales fail loudly with a range error.
    for (int t = 0; t < n; ++t) {
        while (true) {
            int pi = -1, pj = -1;
            std::uint64_t best = 0;
            for (int i = t; i < n; ++i)
                for (int c = t; c < n; ++c) {
                    const GaussInt& v = w.at(i, c);
                    if (v.is_zero()) continue;
                    std::uint64_t nv = norm(v);
                    if (pi < 0 || nv < best) {
                        pi = i;
                        pj = c;
                        best = nv;
                    }
                }
            if (pi < 0)
                throw singular_error("smith_normal_form: singular matrix (partition index would be infinite)");
            if (pi != t) {
                w.swap_rows(t, pi);
                p.swap_rows(t, pi);
            }
            if (pj != t) {
                w.swap_cols(t, pj);
                q.swap_cols(t, pj);
            }

            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (w.at(i, t).is_zero()) continue;
                GaussInt quo = divmod(w.at(i, t), w.at(t, t)).q;
                if (!quo.is_zero()) {
                    w.row_axpy(i, t, quo);
                    p.row_axpy(i, t, quo);
                }
                if (!w.at(i, t).is_zero()) clean = false;
            }
            for (int c = t + 1; c < n; ++c) {
                if (w.at(t, c).is_zero()) continue;
                GaussInt quo = divmod(w.at(t, c), w.at(t, t)).q;
                if (!quo.is_zero()) {
                    w.col_axpy(c, t, quo);
                    q.col_axpy(c, t, quo);
                }
                if (!w.at(t, c).is_zero()) clean = false;
            }
            if (!clean) continue;  // a smaller remainder became the next pivot candidate

            int bad_row = -1;
            for (int i = t + 1; i < n && bad_row < 0; ++i)
                for (int c = t + 1; c < n; ++c)
                    if (!divmod(w.at(i, c), w.at(t, t)).r.is_zero()) {
                        bad_row = i;
                        break;
                    }
            if (bad_row >= 0) {
                // the next reduction pass strictly shrinks the pivot norm
                w.row_axpy(t, bad_row, GaussInt{-1, 0});
                p.row_axpy(t, bad_row, GaussInt{-1, 0});
                continue;
            }
            break;
        }
        GaussInt u = canonical_unit(w.at(t, t));
        if (!u.is_one()) {
            w.scale_row(t, u);
            p.scale_row(t, u);
        }
    }

    SnfResult out;
    out.P = std::move(p);
    out.Q = std::move(q);
    out.D = std::move(w);
    for (int t = 0; t < n; ++t) {
        const GaussInt& d = out.D.at(t, t);
        if (!d.is_unit()) out.invariant_factors.push_back(d);
    }
    return out;
}

GaussInt annihilator(const SnfResult& s) {
    if (s.invariant_factors.empty()) return {1, 0};
    return s.invariant_factors.back();
}

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Signed 192-bit accumulator (two's complement over three 64-bit limbs);
// wide enough for (P J) Q with arbitrary int64 witness entries.
struct I192 {
    std::uint64_t l0 = 0, l1 = 0, l2 = 0;

    void add(const I192& o) {
        u128 s0 = static_cast<u128>(l0) + o.l0;
        u128 s1 = static_cast<u128>(l1) + o.l1 + static_cast<std::uint64_t>(s0 >> 64);
        l0 = static_cast<std::uint64_t>(s0);
        l1 = static_cast<std::uint64_t>(s1);
        l2 = l2 + o.l2 + static_cast<std::uint64_t>(s1 >> 64);
    }

    void negate() {
        l0 = ~l0;
        l1 = ~l1;
        l2 = ~l2;
        u128 s0 = static_cast<u128>(l0) + 1;
        l0 = static_cast<std::uint64_t>(s0);
        u128 s1 = static_cast<u128>(l1) + static_cast<std::uint64_t>(s0 >> 64);
        l1 = static_cast<std::uint64_t>(s1);
        l2 += static_cast<std::uint64_t>(s1 >> 64);
    }

    static I192 product(i128 a, std::int64_t b) {
        bool neg = false;
        u128 ua;
        if (a < 0) {
            ua = static_cast<u128>(-a);
            neg = !neg;
        } else {
            ua = static_cast<u128>(a);
        }
        std::uint64_t ub;
        if (b < 0) {
            ub = static_cast<std::uint64_t>(-(b + 1)) + 1;
            neg = !neg;
        } else {
            ub = static_cast<std::uint64_t>(b);
        }
        std::uint64_t a0 = static_cast<std::uint64_t>(ua);
        std::uint64_t a1 = static_cast<std::uint64_t>(ua >> 64);
        u128 p0 = static_cast<u128>(a0) * ub;
        u128 p1 = static_cast<u128>(a1) * ub;
        I192 r;
        r.l0 = static_cast<std::uint64_t>(p0);
        u128 mid = (p0 >> 64) + static_cast<std::uint64_t>(p1);
        r.l1 = static_cast<std::uint64_t>(mid);
        r.l2 = static_cast<std::uint64_t>(p1 >> 64) + static_cast<std::uint64_t>(mid >> 64);
        if (neg) r.negate();
        return r;
    }

    bool equals_i64(std::int64_t v) const {
        std::uint64_t sign_ext = (l0 & 0x8000000000000000ULL) ? ~0ULL : 0ULL;
        return l0 == static_cast<std::uint64_t>(v) && l1 == sign_ext && l2 == sign_ext &&
               ((v < 0) == (sign_ext == ~0ULL));
    }
};

struct WideGauss {
    i128 re = 0;
    i128 im = 0;
};

struct Wide192Gauss {
    I192 re, im;
    void add(const Wide192Gauss& o) {
        re.add(o.re);
        im.add(o.im);
    }
};

// (a.re + i a.im)(b.re + i b.im) with 192-bit exact parts.
Wide192Gauss wide_product(const WideGauss& a, const GaussInt& b) {
    Wide192Gauss out;
    out.re = I192::product(a.re, b.re);
    I192 t = I192::product(a.im, b.im);
    t.negate();
    out.re.add(t);
    out.im = I192::product(a.re, b.im);
    out.im.add(I192::product(a.im, b.re));
    return out;
}

}  // namespace

bool verify_snf(const GMatrix& j, const SnfResult& s) {
    const int n = j.rows;
    if (s.P.rows != n || s.Q.rows != n || s.D.rows != n) return false;
    // Unimodularity without touching the (possibly huge) witness entries:
    // P J Q = D below gives det(P) det(Q) = det(D)/det(J), and a product of
    // Gaussian integers is a unit iff both factors are. So matching norms of
    // det(D) and det(J) certify both witnesses at once.
    if (norm(det(j)) == 0 || norm(det(j)) != norm(det(s.D))) return false;
    // (P J) Q == D exactly: P J fits in 128 bits per part, the second product
    // is accumulated in 192 bits.
    std::vector<WideGauss> pj(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) {
            WideGauss acc;
            for (int k = 0; k < n; ++k) {
                const GaussInt& x = s.P.at(i, k);
                const GaussInt& y = j.at(k, c);
                acc.re += static_cast<i128>(x.re) * y.re - static_cast<i128>(x.im) * y.im;
                acc.im += static_cast<i128>(x.re) * y.im + static_cast<i128>(x.im) * y.re;
            }
            pj[static_cast<std::size_t>(i) * n + c] = acc;
        }
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) {
            Wide192Gauss acc;
            for (int k = 0; k < n; ++k)
                acc.add(wide_product(pj[static_cast<std::size_t>(i) * n + k], s.Q.at(k, c)));
            if (!acc.re.equals_i64(s.D.at(i, c).re) || !acc.im.equals_i64(s.D.at(i, c).im))
                return false;
        }
    return true;
}

}  // namespace pnc
