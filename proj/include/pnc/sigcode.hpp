#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pnc/ffield.hpp"

namespace pnc {

// Signal code: the Z[i]-lattice generated by the banded Toeplitz matrix of a
// monic filter 1, f_1, ..., f_m, with Tomlinson-Harashima shaping modulo the
// prime p = 3 (mod 4). Messages are k symbols of F_{p^2}; codewords occupy
// k + m complex dimensions (the tail carries the filter termination, shaped
// like every other position).
struct SignalCode {
    std::vector<std::complex<double>> taps;  // f_1..f_m; implicit f_0 = 1
    int k = 0;
    int p = 0;
    FieldSpec field;

    int m() const { return static_cast<int>(taps.size()); }
    int n() const { return k + m(); }
};

SignalCode make_signal_code(std::vector<std::complex<double>> taps, int k, int p);

// The paper's k x (k+m) generator: row i has 1 at column i and f_j at column i+j.
Eigen::MatrixXcd generator_matrix(const SignalCode& c);

// Square (k+m) x (k+m) variant used by the shaped encoder/decoder pair: the
// final m rows terminate the filter, and their coefficients are constrained
// to pZ[i] so the extra dimensions carry no message content.
Eigen::MatrixXcd extended_generator(const SignalCode& c);

// Sequential encoder with Tomlinson-Harashima shaping: emits
//   x_t = u'_t + sum_j f_j u'_{t-j} + v_t,   u'_t = u_t + p*b_t,
// with b_t in Z[i] placing both coordinates of x_t in [-p/2, p/2).
// u_t = sigma_inv(w_t) for message positions and 0 for the m tail positions.
// The dither v defaults to zero and is retained for framework completeness.
Eigen::VectorXcd encode_th(const SignalCode& c, const FieldVec& w,
                           const Eigen::VectorXcd& dither = Eigen::VectorXcd());

struct StackDecodeOptions {
    int branch_width = 9;            // children per node, around the zero-forcing estimate
    std::size_t heap_capacity = 100'000;
    std::size_t max_expansions = 50'000;
    // Fano-style per-position metric bias. Zero keeps the search uniform-cost
    // (exact over the explored tree); matching it to the per-dimension noise
    // variance keeps deep correct paths competitive on long blocks.
    double metric_bias = 0.0;
    // Depth-first Schnorr-Euchner refinement after the best-first pass: visits
    // tree nodes in nearest-first order with the incumbent as pruning radius,
    // certifying the nearest point when it finishes within the budget.
    // 0 disables refinement.
    std::size_t refine_visits = 0;
    friend bool operator==(const StackDecodeOptions&, const StackDecodeOptions&) = default;
};

struct StackDecodeResult {
    std::vector<GaussInt> coeffs;          // k message-position coefficients
    std::vector<GaussInt> shaping_coeffs;  // m tail coefficients, multiples of p
    double metric = 0.0;                   // squared distance of the decoded point
    bool budget_limited = false;
};

// Heap-based best-first (stack) sequential decoder approximating
// argmin over coefficient vectors of || y - r G ||^2. Exact ML is not
// guaranteed; on search-budget exhaustion the best greedily completed leaf is
// returned, flagged budget_limited.
StackDecodeResult stack_decode(const SignalCode& c, const Eigen::VectorXcd& y,
                               const StackDecodeOptions& opts = {});

}  // namespace pnc
