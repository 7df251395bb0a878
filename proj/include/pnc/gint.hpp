#pragma once

#include <cstdint>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pnc/errors.hpp"

namespace pnc {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("GaussInt: integer overflow in +");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("GaussInt: integer overflow in -");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("GaussInt: integer overflow in *");
    return r;
}

}  // namespace detail

// Exact element of Z[i], the ring R used throughout.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(std::int64_t re_, std::int64_t im_ = 0) : re(re_), im(im_) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_unit() const { return (re == 0 && (im == 1 || im == -1)) || (im == 0 && (re == 1 || re == -1)); }

    GaussInt conj() const { return {re, -im}; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
        return {detail::checked_add(a.re, b.re), detail::checked_add(a.im, b.im)};
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
        return {detail::checked_sub(a.re, b.re), detail::checked_sub(a.im, b.im)};
    }
    GaussInt operator-() const { return {detail::checked_sub(0, re), detail::checked_sub(0, im)}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        using detail::checked_add;
        using detail::checked_mul;
        using detail::checked_sub;
        return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
                checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
    }
    GaussInt& operator+=(const GaussInt& b) { return *this = *this + b; }
    GaussInt& operator-=(const GaussInt& b) { return *this = *this - b; }
    GaussInt& operator*=(const GaussInt& b) { return *this = *this * b; }

    friend bool operator==(const GaussInt& a, const GaussInt& b) = default;

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// norm(a+bi) = a^2 + b^2; multiplicative, zero iff the element is zero.
std::uint64_t norm(const GaussInt& g);

struct DivModResult {
    GaussInt q;
    GaussInt r;
};

// Euclidean division: a = q*b + r with norm(r) <= norm(b)/2. Each coordinate
// of a/b is rounded to the nearest integer, ties to even.
DivModResult divmod(const GaussInt& a, const GaussInt& b);

// Quotient of an exact division; throws std::domain_error when b does not divide a.
GaussInt div_exact(const GaussInt& a, const GaussInt& b);

bool divides(const GaussInt& d, const GaussInt& a);

// The unit u such that u*g lies in the canonical (first) quadrant: re > 0, im >= 0.
GaussInt canonical_unit(const GaussInt& g);
GaussInt canonical_associate(const GaussInt& g);

// gcd canonicalized to the first-quadrant associate. Throws std::invalid_argument
// when both arguments are zero.
GaussInt gcd(const GaussInt& a, const GaussInt& b);

struct ExtGcdResult {
    GaussInt g;  // canonical associate
    GaussInt x;  // x*a + y*b = g
    GaussInt y;
};
ExtGcdResult extended_gcd(const GaussInt& a, const GaussInt& b);

// Gaussian primality: norm is a rational prime, or the element is an associate
// of a rational prime p = 3 (mod 4).
bool is_prime(const GaussInt& g);

bool is_rational_prime(std::uint64_t n);

struct PrimePower {
    GaussInt prime;  // canonical-quadrant
    int exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    GaussInt unit;
    std::vector<PrimePower> factors;  // ordered by (norm, re, im)
    GaussInt product() const;
};

// Trial division over Gaussian primes ordered by norm. Inputs with
// norm > factor_norm_bound() fail loudly with capacity_error.
Factorization factor(const GaussInt& g);
constexpr std::uint64_t factor_norm_bound() { return 1'000'000; }

// Canonical residue of g modulo a nonzero d: minimal norm in the coset,
// ties broken by (re, im). For d = p an odd rational prime this is the
// coordinate-wise balanced residue with coordinates in [-(p-1)/2, (p-1)/2].
GaussInt canonical_residue(const GaussInt& g, const GaussInt& d);

// All canonical residues mod d, sorted by (norm, re, im); exactly norm(d) of them.
std::vector<GaussInt> residue_system(const GaussInt& d);

// "a+bi" / "a-bi" with no spaces; degenerate cases render as "0", "a", "bi".
std::string to_string(const GaussInt& g);
std::ostream& operator<<(std::ostream& os, const GaussInt& g);

struct GaussIntHash {
    std::size_t operator()(const GaussInt& g) const {
        std::uint64_t h = static_cast<std::uint64_t>(g.re) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(g.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Deterministic ordering by (norm, re, im).
bool norm_lex_less(const GaussInt& a, const GaussInt& b);

}  // namespace pnc
