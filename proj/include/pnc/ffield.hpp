#pragma once

#include <cstdint>
#include <vector>

#include "pnc/gint.hpp"

namespace pnc {

// F_q realized as Z[i]/(pi) for a Gaussian prime pi. q = norm(pi) is p^2 for
// an inert prime p = 3 (mod 4) and p for a split prime over p = 1 (mod 4).
// The ramified prime 1+i is rejected.
struct FieldSpec {
    GaussInt pi;
    std::uint64_t q = 0;
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

FieldSpec make_field_spec(const GaussInt& pi);

// Residue class, stored as the canonical (minimal-norm, centered) representative.
struct FieldElem {
    GaussInt rep;
    FieldSpec spec;

    bool is_zero() const { return rep.is_zero(); }
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

using FieldVec = std::vector<FieldElem>;

// The ring homomorphism sigma: Z[i] -> F_q and its canonical lift.
FieldElem sigma(const GaussInt& g, const FieldSpec& spec);
GaussInt sigma_inv(const FieldElem& w);

FieldVec sigma_vec(const std::vector<GaussInt>& gs, const FieldSpec& spec);

FieldElem operator+(const FieldElem& x, const FieldElem& y);
FieldElem operator-(const FieldElem& x, const FieldElem& y);
FieldElem operator-(const FieldElem& x);
FieldElem operator*(const FieldElem& x, const FieldElem& y);
FieldElem inv(const FieldElem& x);  // throws std::domain_error on zero

FieldElem field_zero(const FieldSpec& spec);
FieldElem field_one(const FieldSpec& spec);

// All q elements, sorted by (norm, re, im) of the representative.
std::vector<FieldElem> field_elements(const FieldSpec& spec);

FieldVec operator+(const FieldVec& x, const FieldVec& y);
FieldVec operator*(const FieldElem& c, const FieldVec& v);
bool all_zero(const FieldVec& v);

// Solve A x = b over F_q, elementwise on message vectors. A is L x L,
// b holds L message vectors. Throws singular_error when A is not invertible
// (a network decoding failure event).
std::vector<FieldVec> solve_linear(const std::vector<std::vector<FieldElem>>& a,
                                   const std::vector<FieldVec>& b);

}  // namespace pnc
