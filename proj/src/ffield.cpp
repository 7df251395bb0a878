#include "pnc/ffield.hpp"

#include <algorithm>
#include <stdexcept>

#include "pnc/errors.hpp"

namespace pnc {

FieldSpec make_field_spec(const GaussInt& pi) {
    if (!is_prime(pi)) throw std::invalid_argument("FieldSpec: modulus is not a Gaussian prime");
    std::uint64_t q = norm(pi);
    if (q == 2)
        throw std::invalid_argument("FieldSpec: ramified prime 1+i not supported");
    return {canonical_associate(pi), q};
}

FieldElem sigma(const GaussInt& g, const FieldSpec& spec) {
    return {canonical_residue(g, spec.pi), spec};
}

GaussInt sigma_inv(const FieldElem& w) { return w.rep; }

FieldVec sigma_vec(const std::vector<GaussInt>& gs, const FieldSpec& spec) {
    FieldVec out;
    out.reserve(gs.size());
    for (const auto& g : gs) out.push_back(sigma(g, spec));
    return out;
}

namespace {

void check_spec(const FieldElem& x, const FieldElem& y) {
    if (!(x.spec == y.spec)) throw std::invalid_argument("FieldElem: mixed field specs");
}

}  // namespace

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
    check_spec(x, y);
    return sigma(x.rep + y.rep, x.spec);
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) {
    check_spec(x, y);
    return sigma(x.rep - y.rep, x.spec);
}

FieldElem operator-(const FieldElem& x) { return sigma(-x.rep, x.spec); }

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
    check_spec(x, y);
    return sigma(x.rep * y.rep, x.spec);
}

FieldElem inv(const FieldElem& x) {
    if (x.is_zero()) throw std::domain_error("FieldElem: division by zero");
    auto e = extended_gcd(x.rep, x.spec.pi);
    // gcd of a nonzero residue and the prime modulus is 1.
    if (!e.g.is_one()) throw std::logic_error("FieldElem: inverse of non-coprime residue");
    return sigma(e.x, x.spec);
}

FieldElem field_zero(const FieldSpec& spec) { return {GaussInt{0, 0}, spec}; }
FieldElem field_one(const FieldSpec& spec) { return {GaussInt{1, 0}, spec}; }

std::vector<FieldElem> field_elements(const FieldSpec& spec) {
    std::vector<FieldElem> out;
    for (const auto& r : residue_system(spec.pi)) out.push_back({r, spec});
    return out;
}

FieldVec operator+(const FieldVec& x, const FieldVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("FieldVec: length mismatch");
    FieldVec out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] + y[i]);
    return out;
}

FieldVec operator*(const FieldElem& c, const FieldVec& v) {
    FieldVec out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(c * e);
    return out;
}

bool all_zero(const FieldVec& v) {
    return std::all_of(v.begin(), v.end(), [](const FieldElem& e) { return e.is_zero(); });
}

std::vector<FieldVec> solve_linear(const std::vector<std::vector<FieldElem>>& a,
                                   const std::vector<FieldVec>& b) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("solve_linear: empty system");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("solve_linear: matrix not square");
    if (b.size() != n) throw std::invalid_argument("solve_linear: rhs length mismatch");

    auto m = a;
    auto rhs = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw singular_error("solve_linear: rank-deficient system");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);

        FieldElem piv_inv = inv(m[col][col]);
        for (std::size_t j = col; j < n; ++j) m[col][j] = piv_inv * m[col][j];
        rhs[col] = piv_inv * rhs[col];

        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            FieldElem f = m[i][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
            rhs[i] = rhs[i] + (-f) * rhs[col];
        }
    }
    return rhs;
}

}  // namespace pnc
