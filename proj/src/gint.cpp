#include "pnc/gint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <ostream>
#include <unordered_set>

namespace pnc {

std::uint64_t norm(const GaussInt& g) {
    using u128 = unsigned __int128;
    u128 re = g.re < 0 ? -static_cast<u128>(g.re) : static_cast<u128>(g.re);
    u128 im = g.im < 0 ? -static_cast<u128>(g.im) : static_cast<u128>(g.im);
    u128 n = re * re + im * im;
    if (n > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("GaussInt: norm out of range");
    return static_cast<std::uint64_t>(n);
}

namespace {

using i128 = __int128;

// Nearest integer to num/den (den > 0), ties to even.
std::int64_t round_half_even(i128 num, i128 den) {
    i128 f = num / den;
    i128 rem = num % den;
    if (rem < 0) {
        f -= 1;
        rem += den;
    }
    i128 twice = 2 * rem;
    i128 q = f;
    if (twice > den) {
        q = f + 1;
    } else if (twice == den) {
        q = (f % 2 == 0) ? f : f + 1;
    }
    if (q > INT64_MAX || q < INT64_MIN) throw std::overflow_error("GaussInt: quotient out of range");
    return static_cast<std::int64_t>(q);
}

}  // namespace

DivModResult divmod(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw std::domain_error("GaussInt: division by zero");
    // a/b = a*conj(b)/norm(b), rounded coordinate-wise.
    i128 nre = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
    i128 nim = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
    i128 den = static_cast<i128>(b.re) * b.re + static_cast<i128>(b.im) * b.im;
    GaussInt q{round_half_even(nre, den), round_half_even(nim, den)};
    GaussInt r = a - q * b;
    return {q, r};
}

GaussInt div_exact(const GaussInt& a, const GaussInt& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("GaussInt: inexact division");
    return q;
}

bool divides(const GaussInt& d, const GaussInt& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).r.is_zero();
}

GaussInt canonical_unit(const GaussInt& g) {
    if (g.is_zero()) return {1, 0};
    if (g.re > 0 && g.im >= 0) return {1, 0};
    if (g.re <= 0 && g.im > 0) return {0, -1};  // -i * (0<im quadrant) -> first
    if (g.re < 0 && g.im <= 0) return {-1, 0};
    return {0, 1};
}

GaussInt canonical_associate(const GaussInt& g) { return canonical_unit(g) * g; }

GaussInt gcd(const GaussInt& a, const GaussInt& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0,0) undefined");
    GaussInt x = a, y = b;
    while (!y.is_zero()) {
        GaussInt r = divmod(x, y).r;
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

ExtGcdResult extended_gcd(const GaussInt& a, const GaussInt& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0,0) undefined");
    GaussInt r0 = a, r1 = b;
    GaussInt x0{1, 0}, x1{0, 0}, y0{0, 0}, y1{1, 0};
    while (!r1.is_zero()) {
        GaussInt q = divmod(r0, r1).q;
        GaussInt r2 = r0 - q * r1;
        GaussInt x2 = x0 - q * x1;
        GaussInt y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    GaussInt u = canonical_unit(r0);
    return {u * r0, u * x0, u * y0};
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_rational_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const GaussInt& g) {
    std::uint64_t n = norm(g);
    if (n < 2) return false;
    if (is_rational_prime(n)) return true;
    GaussInt c = canonical_associate(g);
    if (c.im != 0) return false;
    std::uint64_t p = static_cast<std::uint64_t>(c.re);
    return p % 4 == 3 && is_rational_prime(p);
}

namespace {

// Gaussian primes of norm <= factor_norm_bound(), canonical-quadrant,
// sorted by (norm, re, im). Built once.
const std::vector<GaussInt>& gaussian_prime_table() {
    static std::vector<GaussInt> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const std::uint64_t bound = factor_norm_bound();
        std::vector<bool> sieve(bound + 1, true);
        sieve[0] = sieve[1] = false;
        for (std::uint64_t i = 2; i * i <= bound; ++i)
            if (sieve[i])
                for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;

        table.push_back({1, 1});  // the ramified prime over 2
        for (std::uint64_t p = 3; p <= bound; p += 2) {
            if (!sieve[p]) continue;
            if (p % 4 == 1) {
                // split: find a^2 + b^2 = p
                for (std::int64_t a = 1;; ++a) {
                    std::int64_t bb = static_cast<std::int64_t>(p) - a * a;
                    if (bb < a * a) break;
                    std::int64_t b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(bb))));
                    for (std::int64_t cand = std::max<std::int64_t>(b - 1, 0); cand <= b + 1; ++cand) {
                        if (cand * cand == bb) {
                            table.push_back(canonical_associate({a, cand}));
                            table.push_back(canonical_associate({a, -cand}));
                            goto found;
                        }
                    }
                }
            found:;
            } else if (p * p <= bound) {
                table.push_back({static_cast<std::int64_t>(p), 0});  // inert
            }
        }
        std::sort(table.begin(), table.end(), norm_lex_less);
        table.erase(std::unique(table.begin(), table.end()), table.end());
    });
    return table;
}

}  // namespace

GaussInt Factorization::product() const {
    GaussInt p = unit;
    for (const auto& f : factors)
        for (int i = 0; i < f.exponent; ++i) p = p * f.prime;
    return p;
}

Factorization factor(const GaussInt& g) {
    if (g.is_zero()) throw std::invalid_argument("factor(0) undefined");
    std::uint64_t n = norm(g);
    if (n > factor_norm_bound())
        throw capacity_error("factor: norm " + std::to_string(n) + " exceeds trial-division bound");
    Factorization out;
    GaussInt cur = g;
    for (const auto& pi : gaussian_prime_table()) {
        std::uint64_t rem = norm(cur);
        if (rem == 1) break;
        if (norm(pi) > rem) break;
        int e = 0;
        while (true) {
            auto [q, r] = divmod(cur, pi);
            if (!r.is_zero()) break;
            cur = q;
            ++e;
        }
        if (e > 0) out.factors.push_back({pi, e});
    }
    if (!cur.is_unit()) throw std::logic_error("factor: residual not a unit");
    out.unit = cur;
    return out;
}

bool norm_lex_less(const GaussInt& a, const GaussInt& b) {
    std::uint64_t na = norm(a), nb = norm(b);
    if (na != nb) return na < nb;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

GaussInt canonical_residue(const GaussInt& g, const GaussInt& d) {
    if (d.is_zero()) throw std::domain_error("canonical_residue: zero modulus");
    GaussInt r = divmod(g, d).r;
    // The minimal-norm coset element is within one d-step of any remainder
    // with norm <= norm(d)/2.
    static constexpr std::array<std::pair<int, int>, 9> steps{{
        {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
    }};
    GaussInt best = r;
    for (const auto& [sr, si] : steps) {
        GaussInt cand = r - GaussInt{sr, si} * d;
        if (norm_lex_less(cand, best)) best = cand;
    }
    return best;
}

std::vector<GaussInt> residue_system(const GaussInt& d) {
    if (d.is_zero()) throw std::domain_error("residue_system: zero modulus");
    std::uint64_t count = norm(d);
    if (count > 100'000) throw capacity_error("residue_system: modulus norm too large");
    std::int64_t radius = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(count)))) + 1;
    std::unordered_set<GaussInt, GaussIntHash> seen;
    std::vector<GaussInt> out;
    for (std::int64_t a = -radius; a <= radius; ++a) {
        for (std::int64_t b = -radius; b <= radius; ++b) {
            GaussInt r = canonical_residue({a, b}, d);
            if (seen.insert(r).second) out.push_back(r);
        }
    }
    if (out.size() != count) throw std::logic_error("residue_system: wrong residue count");
    std::sort(out.begin(), out.end(), norm_lex_less);
    return out;
}

std::string to_string(const GaussInt& g) {
    if (g.im == 0) return std::to_string(g.re);
    std::string im_part;
    if (g.im == 1) im_part = "i";
    else if (g.im == -1) im_part = "-i";
    else im_part = std::to_string(g.im) + "i";
    if (g.re == 0) return im_part;
    if (g.im > 0) return std::to_string(g.re) + "+" + im_part;
    return std::to_string(g.re) + im_part;
}

std::ostream& operator<<(std::ostream& os, const GaussInt& g) { return os << to_string(g); }

}  // namespace pnc
