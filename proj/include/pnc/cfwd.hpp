#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pnc/ffield.hpp"
#include "pnc/scheme.hpp"

namespace pnc {

// Channel state seen by one relay: fading coefficients plus the (linear)
// per-user transmit power budget.
struct ChannelVector {
    Eigen::VectorXcd h;
    double snr = 1.0;
};

// Integer combination coefficients a in Z[i]^L; a = 0 is never a valid
// decoding target.
struct CoeffVector {
    std::vector<GaussInt> a;

    int size() const { return static_cast<int>(a.size()); }
    bool all_zero() const {
        for (const auto& g : a)
            if (!g.is_zero()) return false;
        return true;
    }
    friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
};

// Nazer-Gastpar computation rate, bits per complex dimension:
//   R = max{ log2( (||a||^2 - SNR |h a^dag|^2 / (1 + SNR ||h||^2))^-1 ), 0 }.
// The squared inner product follows the cited theorem; the README documents
// the discrepancy with the unsquared form displayed in some statements.
double computation_rate(const ChannelVector& ch, const CoeffVector& a);

// MMSE scaling alpha = SNR (h a^dag)^* / (1 + SNR ||h||^2), the unique
// stationary point of E|| alpha y - sum_l a_l x_l ||^2.
std::complex<double> mmse_alpha(const ChannelVector& ch, const CoeffVector& a);

// Exact argmax of the computation rate over nonzero a in Z[i]^L with
// ||a||^2 <= 1 + SNR ||h||^2 (rate is zero outside that ball). Ties broken by
// smaller ||a||^2, then lexicographic on (re, im) coordinate pairs. L <= 4.
CoeffVector select_coefficients(const ChannelVector& ch);

// Componentwise sigma(a_l).
FieldVec map_coeffs_to_field(const CoeffVector& a, const FieldSpec& spec);

struct CombinationDecode {
    FieldVec u;
    bool budget_limited = false;
};

// The relay decoder: g(y) = alpha y - sum_l a_l v_l, quantized to the scheme's
// fine lattice, then sigma of the first k coefficients. y is the raw channel
// output; codeword scaling is derived from ch.snr and the scheme's pilot.
CombinationDecode decode_combination(const Eigen::VectorXcd& y, const ChannelVector& ch,
                                     const CoeffVector& a, const PncScheme& scheme,
                                     const std::vector<Eigen::VectorXcd>& dithers = {});

}  // namespace pnc
