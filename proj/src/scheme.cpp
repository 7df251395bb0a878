#include "pnc/scheme.hpp"

#include <random>

namespace pnc {

namespace {

constexpr std::uint64_t kPilotSeed = 0x70696c6f74ULL;  // fixed: pilot runs are reproducible
constexpr int kPilotSymbols = 100'000;

FieldVec random_message(const std::vector<FieldElem>& alphabet, int k, std::mt19937_64& rng) {
    FieldVec w;
    w.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) w.push_back(alphabet[rng() % alphabet.size()]);
    return w;
}

}  // namespace

SignalCodeScheme::SignalCodeScheme(SignalCode code, StackDecodeOptions opts, double bias_scale)
    : code_(std::move(code)), opts_(opts), bias_scale_(bias_scale) {
    // Pilot run fixing the SNR normalization constant for this code.
    std::mt19937_64 rng(kPilotSeed);
    auto alphabet = field_elements(code_.field);
    const int packets = (kPilotSymbols + code_.n() - 1) / code_.n();
    double acc = 0.0;
    for (int i = 0; i < packets; ++i) {
        Eigen::VectorXcd x = encode_th(code_, random_message(alphabet, code_.k, rng));
        acc += x.squaredNorm();
    }
    mean_power_ = acc / (static_cast<double>(packets) * code_.n());
}

Eigen::VectorXcd SignalCodeScheme::encode(const FieldVec& w, const Eigen::VectorXcd& dither) const {
    return encode_th(code_, w, dither);
}

CoeffDecodeResult SignalCodeScheme::nearest_coeffs(const Eigen::VectorXcd& gy,
                                                   double noise_var) const {
    StackDecodeOptions opts = opts_;
    opts.metric_bias += bias_scale_ * noise_var;
    // refinement cannot help once the effective noise is deep in outage
    if (noise_var > 0.25) opts.refine_visits = 0;
    StackDecodeResult r = stack_decode(code_, gy, opts);
    return {std::move(r.coeffs), r.budget_limited};
}

QamScheme::QamScheme(int n, int p) : n_(n), p_(p) {
    if (n < 1) throw std::invalid_argument("QamScheme: block length must be positive");
    field_ = make_field_spec(GaussInt{p, 0});
    double acc = 0.0, peak = 0.0;
    for (const auto& r : residue_system(GaussInt{p, 0})) {
        double pw = static_cast<double>(norm(r));
        acc += pw;
        peak = std::max(peak, pw);
    }
    mean_power_ = acc / static_cast<double>(field_.q);
    peak_power_ = peak;
}

Eigen::VectorXcd QamScheme::encode(const FieldVec& w, const Eigen::VectorXcd& dither) const {
    if (static_cast<int>(w.size()) != n_) throw std::invalid_argument("QamScheme: message length mismatch");
    if (dither.size() != 0 && dither.size() != n_)
        throw std::invalid_argument("QamScheme: dither length mismatch");
    const double p = static_cast<double>(p_);
    Eigen::VectorXcd x(n_);
    for (int t = 0; t < n_; ++t) {
        if (!(w[static_cast<std::size_t>(t)].spec == field_))
            throw std::invalid_argument("QamScheme: message field mismatch");
        std::complex<double> s = sigma_inv(w[static_cast<std::size_t>(t)]).to_complex();
        if (dither.size()) s += dither(t);
        // shaping: per-symbol reduction into the fundamental box of pZ[i]
        x(t) = {s.real() - p * std::floor(s.real() / p + 0.5),
                s.imag() - p * std::floor(s.imag() / p + 0.5)};
    }
    return x;
}

CoeffDecodeResult QamScheme::nearest_coeffs(const Eigen::VectorXcd& gy, double) const {
    if (gy.size() != n_) throw std::invalid_argument("QamScheme: vector length mismatch");
    CoeffDecodeResult out;
    out.coeffs.resize(static_cast<std::size_t>(n_));
    for (int t = 0; t < n_; ++t)
        out.coeffs[static_cast<std::size_t>(t)] = {static_cast<std::int64_t>(std::llround(gy(t).real())),
                                                   static_cast<std::int64_t>(std::llround(gy(t).imag()))};
    return out;
}

ExactLatticeScheme::ExactLatticeScheme(LatticePartition partition) : partition_(std::move(partition)) {
    if (!partition_.field)
        throw std::invalid_argument("ExactLatticeScheme: partition has no field structure");
    if (partition_.fine.dim() > kExactQuantizeMaxDim)
        throw std::invalid_argument("ExactLatticeScheme: dimension above exact quantizer bound");
    std::mt19937_64 rng(kPilotSeed);
    auto alphabet = field_elements(*partition_.field);
    const int packets = 2000;
    double acc = 0.0;
    for (int i = 0; i < packets; ++i) {
        Eigen::VectorXcd x = encode(random_message(alphabet, partition_.k, rng), Eigen::VectorXcd());
        acc += x.squaredNorm();
        for (Eigen::Index t = 0; t < x.size(); ++t) peak_power_ = std::max(peak_power_, std::norm(x(t)));
    }
    mean_power_ = acc / (static_cast<double>(packets) * block_length());
    peak_power_ *= 1.25;  // headroom: the pilot only samples the codebook
}

const FieldSpec& ExactLatticeScheme::field() const { return *partition_.field; }

Eigen::VectorXcd ExactLatticeScheme::encode(const FieldVec& w, const Eigen::VectorXcd& dither) const {
    Eigen::VectorXcd x = phi_inv(w, partition_);
    if (dither.size()) {
        if (dither.size() != x.size()) throw std::invalid_argument("ExactLatticeScheme: dither length mismatch");
        x += dither;
    }
    // shaping: subtract the nearest coarse-lattice point
    QuantizeResult q = quantize_nearest(x, partition_.coarse);
    return x - q.point;
}

CoeffDecodeResult ExactLatticeScheme::nearest_coeffs(const Eigen::VectorXcd& gy, double) const {
    QuantizeResult q = quantize_nearest(gy, partition_.fine);
    CoeffDecodeResult out;
    out.coeffs.assign(q.coeffs.begin(), q.coeffs.begin() + partition_.k);
    return out;
}

}  // namespace pnc
