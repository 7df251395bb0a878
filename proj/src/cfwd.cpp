#include "pnc/cfwd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphere_search.hpp"

namespace pnc {

namespace {

std::complex<double> inner_h_adag(const ChannelVector& ch, const CoeffVector& a) {
    std::complex<double> ip = 0.0;
    for (int l = 0; l < a.size(); ++l)
        ip += ch.h(l) * std::conj(a.a[static_cast<std::size_t>(l)].to_complex());
    return ip;
}

double coeff_norm2(const CoeffVector& a) {
    double s = 0.0;
    for (const auto& g : a.a) s += static_cast<double>(norm(g));
    return s;
}

void validate_pair(const ChannelVector& ch, const CoeffVector& a) {
    if (ch.h.size() != a.size()) throw std::invalid_argument("cfwd: h and a length mismatch");
    if (ch.snr <= 0.0) throw std::invalid_argument("cfwd: snr must be positive");
}

}  // namespace

double computation_rate(const ChannelVector& ch, const CoeffVector& a) {
    validate_pair(ch, a);
    if (a.all_zero()) throw std::invalid_argument("computation_rate: zero coefficient vector");
    double hn2 = ch.h.squaredNorm();
    double ip2 = std::norm(inner_h_adag(ch, a));
    double val = coeff_norm2(a) - ch.snr * ip2 / (1.0 + ch.snr * hn2);
    if (val <= 0.0 || val >= 1.0) return 0.0;
    return std::log2(1.0 / val);
}

std::complex<double> mmse_alpha(const ChannelVector& ch, const CoeffVector& a) {
    validate_pair(ch, a);
    return ch.snr * std::conj(inner_h_adag(ch, a)) / (1.0 + ch.snr * ch.h.squaredNorm());
}

namespace {

// Real 2L x 2L form of the Hermitian quadratic a M a^dag with
// M = I - c h^* h^T; z interleaves (re, im) per entry.
Eigen::MatrixXd real_quadratic_form(const Eigen::MatrixXcd& m) {
    const int L = static_cast<int>(m.rows());
    Eigen::MatrixXd s(2 * L, 2 * L);
    auto embed = [&](int u) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(L);
        a(u / 2) = (u % 2 == 0) ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
        return a;
    };
    auto form = [&](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
        // a M b^dag with row vectors: sum_lj x_l M_lj conj(y_j)
        std::complex<double> acc = 0.0;
        for (int l = 0; l < L; ++l)
            for (int j = 0; j < L; ++j) acc += x(l) * m(l, j) * std::conj(y(j));
        return acc;
    };
    for (int u = 0; u < 2 * L; ++u)
        for (int v = 0; v < 2 * L; ++v) {
            Eigen::VectorXcd eu = embed(u), ev = embed(v);
            s(u, v) = 0.5 * (form(eu, ev) + form(ev, eu)).real();
        }
    return s;
}

CoeffVector from_real(const Eigen::VectorXd& z) {
    CoeffVector a;
    const int L = static_cast<int>(z.size()) / 2;
    a.a.resize(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l)
        a.a[static_cast<std::size_t>(l)] = {static_cast<std::int64_t>(std::llround(z(2 * l))),
                                            static_cast<std::int64_t>(std::llround(z(2 * l + 1)))};
    return a;
}

// Units preserve the rate, so every candidate comes in a 4-fold orbit
// {a, -a, ia, -ia}; represent each orbit with the first nonzero coordinate in
// the canonical quadrant.
void canonicalize_orbit(CoeffVector& a) {
    for (const auto& g : a.a) {
        if (g.is_zero()) continue;
        GaussInt u = canonical_unit(g);
        if (!u.is_one())
            for (auto& e : a.a) e = u * e;
        return;
    }
}

bool lex_less(const CoeffVector& x, const CoeffVector& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        if (x.a[i].re != y.a[i].re) return x.a[i].re < y.a[i].re;
        if (x.a[i].im != y.a[i].im) return x.a[i].im < y.a[i].im;
    }
    return false;
}

}  // namespace

CoeffVector select_coefficients(const ChannelVector& ch) {
    const int L = static_cast<int>(ch.h.size());
    if (L < 1) throw std::invalid_argument("select_coefficients: empty channel");
    if (L > 4) throw std::invalid_argument("select_coefficients: exhaustive search limited to L <= 4");
    if (ch.snr <= 0.0) throw std::invalid_argument("select_coefficients: snr must be positive");

    const double c = ch.snr / (1.0 + ch.snr * ch.h.squaredNorm());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(L, L) - c * (ch.h.conjugate() * ch.h.transpose());
    Eigen::MatrixXd s = real_quadratic_form(m);
    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(s).matrixL();
    Eigen::VectorXd origin = Eigen::VectorXd::Zero(2 * L);

    // Shortest nonzero vector of the MMSE form: exhaustive sphere enumeration,
    // radius seeded by the best unit vector (form value M_ll <= 1).
    double seed_radius = s(0, 0);
    for (int u = 1; u < 2 * L; ++u) seed_radius = std::min(seed_radius, s(u, u));
    double best = std::numeric_limits<double>::infinity();
    {
        auto visitor = [&](const Eigen::VectorXd& z, double value) {
            if (z.isZero(0.0)) return false;
            if (value < best) {
                best = value;
                return true;
            }
            return false;
        };
        detail::SphereEnumerator<decltype(visitor)> svp(chol, origin, visitor);
        svp.run(seed_radius * (1.0 + 1e-12));
    }

    // All candidates give rate zero: fall back to e_1, a valid target always.
    if (!(best < 1.0)) {
        CoeffVector fallback;
        fallback.a.assign(static_cast<std::size_t>(L), GaussInt{0, 0});
        fallback.a[0] = {1, 0};
        return fallback;
    }

    // Collect every argmin within a relative hair of the optimum and apply the
    // deterministic tie-break.
    std::vector<CoeffVector> ties;
    {
        double bound = best * (1.0 + 1e-9);
        auto visitor = [&](const Eigen::VectorXd& z, double value) {
            if (z.isZero(0.0) || value > bound) return false;
            CoeffVector cand = from_real(z);
            canonicalize_orbit(cand);
            ties.push_back(std::move(cand));
            return false;
        };
        detail::SphereEnumerator<decltype(visitor)> collect(chol, origin, visitor);
        collect.run(bound);
    }
    if (ties.empty()) throw std::logic_error("select_coefficients: empty tie set");
    std::sort(ties.begin(), ties.end(), [](const CoeffVector& x, const CoeffVector& y) {
        double nx = coeff_norm2(x), ny = coeff_norm2(y);
        if (nx != ny) return nx < ny;
        return lex_less(x, y);
    });
    return ties.front();
}

FieldVec map_coeffs_to_field(const CoeffVector& a, const FieldSpec& spec) {
    return sigma_vec(a.a, spec);
}

CombinationDecode decode_combination(const Eigen::VectorXcd& y, const ChannelVector& ch,
                                     const CoeffVector& a, const PncScheme& scheme,
                                     const std::vector<Eigen::VectorXcd>& dithers) {
    validate_pair(ch, a);
    if (a.all_zero()) throw std::invalid_argument("decode_combination: zero coefficient vector");
    if (!dithers.empty() && static_cast<int>(dithers.size()) != a.size())
        throw std::invalid_argument("decode_combination: dither count mismatch");

    const double scale = std::sqrt(ch.snr / scheme.mean_symbol_power());
    std::complex<double> alpha = mmse_alpha(ch, a);
    Eigen::VectorXcd g = (alpha / scale) * y;
    for (std::size_t l = 0; l < dithers.size(); ++l)
        g -= a.a[l].to_complex() * dithers[l];

    // Effective noise variance per complex dimension after MMSE scaling, in
    // the unscaled-codebook domain: (||a||^2 - snr |h a^dag|^2/(1+snr||h||^2))
    // times the codebook power.
    double hn2 = ch.h.squaredNorm();
    double val = coeff_norm2(a) - ch.snr * std::norm(inner_h_adag(ch, a)) / (1.0 + ch.snr * hn2);
    double noise_var = std::max(val, 0.0) * scheme.mean_symbol_power();

    CoeffDecodeResult q = scheme.nearest_coeffs(g, noise_var);
    CombinationDecode out;
    out.budget_limited = q.budget_limited;
    out.u.reserve(q.coeffs.size());
    for (const auto& r : q.coeffs) out.u.push_back(sigma(r, scheme.field()));
    return out;
}

}  // namespace pnc
