#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "pnc/ffield.hpp"
#include "pnc/snf.hpp"

namespace pnc {

// Z[i]-lattice: all Z[i]-combinations of the rows of G (n x m, m >= n,
// full row rank).
struct Lattice {
    Eigen::MatrixXcd G;
    int dim() const { return static_cast<int>(G.rows()); }
    int ambient() const { return static_cast<int>(G.cols()); }
};

Lattice make_lattice(const Eigen::MatrixXcd& g);

constexpr double kRankTolerance = 1e-9;
constexpr double kMembershipTolerance = 1e-6;

Eigen::MatrixXcd gmatrix_to_complex(const GMatrix& m);
Eigen::MatrixXcd gmatrix_times_complex(const GMatrix& m, const Eigen::MatrixXcd& g);
Eigen::VectorXcd lattice_point(const Eigen::MatrixXcd& g, const std::vector<GaussInt>& coeffs);

// Lattice partition fine/coarse with cached algebra. Construction rewrites
// the generators into the Smith-normalized form in which the coarse generator
// is Dbar * fine generator with the nonunit invariant factors leading; phi
// and phi_inv then act on the first k coefficients.
struct LatticePartition {
    Lattice fine;
    Lattice coarse;
    GMatrix input_J;
    SnfResult snf;    // of input_J, units-first convention
    GMatrix Dbar;     // nonunits-first diagonal; coarse.G = Dbar * fine.G
    std::optional<FieldSpec> field;  // present when all nonunit factors are one prime
    int k = 0;                       // number of nonunit invariant factors
    std::uint64_t index_value = 1;
    bool index_overflow = false;
    Eigen::MatrixXcd coeff_solver;   // n x m; coeffs = conj((G G^H)^-1 G) * point
};

LatticePartition build_partition(const Eigen::MatrixXcd& g_fine, const GMatrix& j);

// |L : L'| = norm(det J). Throws std::overflow_error when it exceeds 64 bits.
std::uint64_t index(const LatticePartition& p);

struct VectorSpaceInfo {
    std::uint64_t q = 0;  // field size
    int k = 0;            // F_q-dimension of the quotient
    friend bool operator==(const VectorSpaceInfo&, const VectorSpaceInfo&) = default;
};

// Theorem-2 test: present iff the annihilator factors into distinct primes of
// equal residue index q. Trivial partitions report {q = 1, k = 0}.
std::optional<VectorSpaceInfo> is_vector_space(const LatticePartition& p);

// phi: lattice -> F_q^k, sigma applied to the first k exact coefficients.
FieldVec phi(const Eigen::VectorXcd& lambda, const LatticePartition& p);

// phi_inv(w) = sigma_inv(w) [I_k 0] G.
Eigen::VectorXcd phi_inv(const FieldVec& w, const LatticePartition& p);

struct QuantizeResult {
    Eigen::VectorXcd point;
    std::vector<GaussInt> coeffs;
};

// Exact nearest lattice point by sphere search; dimensions above 8 must use a
// code-specific decoder and are rejected with std::domain_error.
QuantizeResult quantize_nearest(const Eigen::VectorXcd& x, const Lattice& lat);
constexpr int kExactQuantizeMaxDim = 8;

// One representative per coset, index(p) of them; bounded at 10^4.
std::vector<Eigen::VectorXcd> enumerate_cosets(const LatticePartition& p);
constexpr std::uint64_t kCosetEnumerationBound = 10'000;

}  // namespace pnc
