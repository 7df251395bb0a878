#include "pnc/channel.hpp"

#include <stdexcept>

#include "pnc/errors.hpp"

namespace pnc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = splitmix64(master ^ 0x243f6a8885a308d3ULL);
    x = splitmix64(x ^ a);
    x = splitmix64(x ^ b);
    x = splitmix64(x ^ c);
    return x;
}

Eigen::VectorXcd sample_rayleigh(int count, Rng& rng) {
    Eigen::VectorXcd h(count);
    for (int i = 0; i < count; ++i) h(i) = rng.cgaussian();
    return h;
}

Eigen::VectorXcd transmit(const std::vector<Eigen::VectorXcd>& xs, const Eigen::VectorXcd& h,
                          Rng& rng, const TransmitOptions& opts) {
    if (xs.empty()) throw std::invalid_argument("transmit: no transmitters");
    if (static_cast<Eigen::Index>(xs.size()) != h.size())
        throw std::invalid_argument("transmit: fading vector length mismatch");
    const Eigen::Index n = xs.front().size();
    for (const auto& x : xs) {
        if (x.size() != n) throw std::invalid_argument("transmit: signal length mismatch");
        double mean_power = x.squaredNorm() / static_cast<double>(n);
        if (mean_power > opts.max_mean_power * 1.01)
            throw power_violation_error("transmit: per-packet power constraint violated");
    }
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
    for (std::size_t l = 0; l < xs.size(); ++l) y += h(static_cast<Eigen::Index>(l)) * xs[l];
    if (opts.noise)
        for (Eigen::Index i = 0; i < n; ++i) y(i) += rng.cgaussian();
    return y;
}

}  // namespace pnc
