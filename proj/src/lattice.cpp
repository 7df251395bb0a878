#include "pnc/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnc/errors.hpp"
#include "sphere_search.hpp"

namespace pnc {

Eigen::MatrixXcd gmatrix_to_complex(const GMatrix& m) {
    Eigen::MatrixXcd out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(i, j) = m.at(i, j).to_complex();
    return out;
}

Eigen::MatrixXcd gmatrix_times_complex(const GMatrix& m, const Eigen::MatrixXcd& g) {
    if (m.cols != g.rows()) throw std::invalid_argument("gmatrix_times_complex: dimension mismatch");
    return gmatrix_to_complex(m) * g;
}

Eigen::VectorXcd lattice_point(const Eigen::MatrixXcd& g, const std::vector<GaussInt>& coeffs) {
    if (static_cast<Eigen::Index>(coeffs.size()) != g.rows())
        throw std::invalid_argument("lattice_point: coefficient length mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g.cols());
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        out += coeffs[static_cast<std::size_t>(i)].to_complex() * g.row(i).transpose();
    return out;
}

Lattice make_lattice(const Eigen::MatrixXcd& g) {
    if (g.rows() == 0 || g.cols() < g.rows())
        throw std::invalid_argument("Lattice: generator must be n x m with m >= n");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(sv.size() - 1) <= kRankTolerance * sv(0))
        throw std::invalid_argument("Lattice: generator is rank-deficient");
    return {g};
}

LatticePartition build_partition(const Eigen::MatrixXcd& g_fine, const GMatrix& j) {
    Lattice fine_in = make_lattice(g_fine);
    if (!j.is_square() || j.rows != fine_in.dim())
        throw std::invalid_argument("build_partition: J must be square with one row per generator");

    LatticePartition p;
    p.input_J = j;
    p.snf = smith_normal_form(j);  // throws singular_error for infinite index
    const int n = j.rows;

    // Permutation putting the nonunit invariant factors first (Example-1 form).
    std::vector<int> order;
    for (int t = 0; t < n; ++t)
        if (!p.snf.D.at(t, t).is_unit()) order.push_back(t);
    p.k = static_cast<int>(order.size());
    for (int t = 0; t < n; ++t)
        if (p.snf.D.at(t, t).is_unit()) order.push_back(t);
    GMatrix perm(n, n);
    for (int i = 0; i < n; ++i) perm.at(i, order[static_cast<std::size_t>(i)]) = {1, 0};

    GMatrix fine_transform = perm * unimodular_inverse(p.snf.Q);
    p.fine = make_lattice(gmatrix_times_complex(fine_transform, g_fine));

    GMatrix perm_t(n, n);
    for (int i = 0; i < n; ++i) perm_t.at(order[static_cast<std::size_t>(i)], i) = {1, 0};
    p.Dbar = perm * p.snf.D * perm_t;
    p.coarse.G = gmatrix_times_complex(p.Dbar, p.fine.G);

    // Same sublattice through the P witness; agreement is a construction check.
    Eigen::MatrixXcd coarse_via_p =
        gmatrix_times_complex(perm * p.snf.P, gmatrix_times_complex(j, g_fine));
    double scale = std::max(1.0, p.coarse.G.cwiseAbs().maxCoeff());
    if ((coarse_via_p - p.coarse.G).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::logic_error("build_partition: normalization mismatch");

    p.index_value = 1;
    for (int t = 0; t < n; ++t) {
        std::uint64_t nd = norm(p.snf.D.at(t, t));
        if (nd != 0 && p.index_value > UINT64_MAX / nd) {
            p.index_overflow = true;
            break;
        }
        p.index_value *= nd;
    }

    if (p.k > 0) {
        const GaussInt& pi = p.Dbar.at(0, 0);
        bool all_same = true;
        for (int t = 1; t < p.k; ++t)
            if (!(p.Dbar.at(t, t) == pi)) all_same = false;
        if (all_same && is_prime(pi)) {
            try {
                p.field = make_field_spec(pi);
            } catch (const std::invalid_argument&) {
                // ramified prime: quotient has no supported field structure
            }
        }
    }

    const Eigen::MatrixXcd& gf = p.fine.G;
    Eigen::MatrixXcd gram = gf * gf.adjoint();
    p.coeff_solver = gram.llt().solve(gf).conjugate();
    return p;
}

std::uint64_t index(const LatticePartition& p) {
    if (p.index_overflow) throw std::overflow_error("index: exceeds 64-bit range");
    return p.index_value;
}

std::optional<VectorSpaceInfo> is_vector_space(const LatticePartition& p) {
    if (p.k == 0) return VectorSpaceInfo{1, 0};
    GaussInt ann = annihilator(p.snf);
    Factorization f = factor(ann);
    std::uint64_t q = 0;
    for (const auto& pp : f.factors) {
        if (pp.exponent != 1) return std::nullopt;
        std::uint64_t nq = norm(pp.prime);
        if (q == 0) q = nq;
        if (nq != q) return std::nullopt;
    }
    int dim = 0;
    for (const auto& d : p.snf.invariant_factors)
        dim += static_cast<int>(factor(d).factors.size());
    return VectorSpaceInfo{q, dim};
}

namespace {

std::vector<GaussInt> recover_coeffs(const Eigen::VectorXcd& lambda, const LatticePartition& p) {
    if (lambda.size() != p.fine.ambient())
        throw std::invalid_argument("phi: point has wrong dimension");
    Eigen::VectorXcd c = p.coeff_solver * lambda;
    std::vector<GaussInt> r(static_cast<std::size_t>(c.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        double re = std::round(c(i).real());
        double im = std::round(c(i).imag());
        if (std::abs(c(i).real() - re) > kMembershipTolerance ||
            std::abs(c(i).imag() - im) > kMembershipTolerance)
            throw not_lattice_point_error("phi: coefficients are not Gaussian integers");
        r[static_cast<std::size_t>(i)] = {static_cast<std::int64_t>(re), static_cast<std::int64_t>(im)};
    }
    Eigen::VectorXcd rebuilt = lattice_point(p.fine.G, r);
    double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    if ((rebuilt - lambda).cwiseAbs().maxCoeff() > kMembershipTolerance * scale)
        throw not_lattice_point_error("phi: point is not on the lattice");
    return r;
}

}  // namespace

FieldVec phi(const Eigen::VectorXcd& lambda, const LatticePartition& p) {
    if (!p.field) throw std::invalid_argument("phi: partition has no field structure");
    std::vector<GaussInt> r = recover_coeffs(lambda, p);
    FieldVec out;
    out.reserve(static_cast<std::size_t>(p.k));
    for (int t = 0; t < p.k; ++t) out.push_back(sigma(r[static_cast<std::size_t>(t)], *p.field));
    return out;
}

Eigen::VectorXcd phi_inv(const FieldVec& w, const LatticePartition& p) {
    if (!p.field) throw std::invalid_argument("phi_inv: partition has no field structure");
    if (static_cast<int>(w.size()) != p.k) throw std::invalid_argument("phi_inv: message length mismatch");
    std::vector<GaussInt> r(static_cast<std::size_t>(p.fine.dim()));
    for (int t = 0; t < p.k; ++t) {
        if (!(w[static_cast<std::size_t>(t)].spec == *p.field))
            throw std::invalid_argument("phi_inv: message from a different field");
        r[static_cast<std::size_t>(t)] = sigma_inv(w[static_cast<std::size_t>(t)]);
    }
    return lattice_point(p.fine.G, r);
}

QuantizeResult quantize_nearest(const Eigen::VectorXcd& x, const Lattice& lat) {
    const int n = lat.dim();
    const int m = lat.ambient();
    if (n > kExactQuantizeMaxDim)
        throw std::domain_error("quantize_nearest: dimension above exact-search bound; use a structured decoder");
    if (x.size() != m) throw std::invalid_argument("quantize_nearest: point has wrong dimension");

    // Real embedding: coefficient (x_i + i y_i) row blocks [Re g; Im g] and [-Im g; Re g].
    const int N = 2 * n, M = 2 * m;
    Eigen::MatrixXd b(N, M);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double re = lat.G(i, j).real(), im = lat.G(i, j).imag();
            b(2 * i, j) = re;
            b(2 * i, j + m) = im;
            b(2 * i + 1, j) = -im;
            b(2 * i + 1, j + m) = re;
        }
    }
    Eigen::VectorXd t(M);
    for (int j = 0; j < m; ++j) {
        t(j) = x(j).real();
        t(j + m) = x(j).imag();
    }

    Eigen::MatrixXd gram = b * b.transpose();
    Eigen::VectorXd c = gram.ldlt().solve(b * t);
    Eigen::MatrixXd chol = gram.llt().matrixL();

    Eigen::VectorXd z = Eigen::VectorXd::Zero(N);
    double best = std::numeric_limits<double>::infinity();
    auto visitor = [&](const Eigen::VectorXd& leaf, double value) {
        if (value < best) {
            best = value;
            z = leaf;
            return true;
        }
        return false;
    };
    detail::SphereEnumerator<decltype(visitor)> search(chol, c, visitor);
    search.run();

    QuantizeResult out;
    out.coeffs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.coeffs[static_cast<std::size_t>(i)] = {static_cast<std::int64_t>(std::llround(z(2 * i))),
                                                   static_cast<std::int64_t>(std::llround(z(2 * i + 1)))};
    out.point = lattice_point(lat.G, out.coeffs);
    return out;
}

std::vector<Eigen::VectorXcd> enumerate_cosets(const LatticePartition& p) {
    if (p.index_overflow || p.index_value > kCosetEnumerationBound)
        throw capacity_error("enumerate_cosets: index exceeds enumeration bound");

    std::vector<std::vector<GaussInt>> residues;
    for (int t = 0; t < p.k; ++t) residues.push_back(residue_system(p.Dbar.at(t, t)));

    std::vector<Eigen::VectorXcd> out;
    out.reserve(static_cast<std::size_t>(p.index_value));
    std::vector<std::size_t> idx(static_cast<std::size_t>(p.k), 0);
    std::vector<GaussInt> r(static_cast<std::size_t>(p.fine.dim()));
    while (true) {
        for (int t = 0; t < p.k; ++t)
            r[static_cast<std::size_t>(t)] = residues[static_cast<std::size_t>(t)][idx[static_cast<std::size_t>(t)]];
        out.push_back(lattice_point(p.fine.G, r));
        int t = p.k - 1;
        while (t >= 0) {
            if (++idx[static_cast<std::size_t>(t)] < residues[static_cast<std::size_t>(t)].size()) break;
            idx[static_cast<std::size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
    }
    if (out.size() != p.index_value) throw std::logic_error("enumerate_cosets: wrong coset count");
    return out;
}

}  // namespace pnc
