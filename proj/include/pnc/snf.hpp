#pragma once

#include "pnc/gmatrix.hpp"

namespace pnc {

// Smith normal form P*J*Q = D with unimodular P, Q. Diagonal of D starts with
// ones (units normalized to 1) followed by the nonunit invariant factors
// d_1 | d_2 | ... | d_k, each the canonical-quadrant associate.
struct SnfResult {
    GMatrix P;
    GMatrix D;
    GMatrix Q;
    std::vector<GaussInt> invariant_factors;
};

// Kannan-Bachem style reduction using Euclidean division as the elementary
// step. Requires square nonsingular J; throws singular_error otherwise.
SnfResult smith_normal_form(const GMatrix& j);

// Largest invariant factor (generator of the annihilator ideal); 1 when the
// quotient is trivial.
GaussInt annihilator(const SnfResult& s);

// Exact check of P*J*Q == D and unimodularity, with 128-bit intermediates so
// large transform entries cannot wrap.
bool verify_snf(const GMatrix& j, const SnfResult& s);

}  // namespace pnc
