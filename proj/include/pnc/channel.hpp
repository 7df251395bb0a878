#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace pnc {

// Deterministic seeded stream: same seed, bit-identical draws on every
// platform. Gaussian variates come from a hand-rolled Box-Muller transform so
// the stream does not depend on implementation-defined library distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Circularly-symmetric complex Gaussian, unit variance (1/2 per component).
    std::complex<double> cgaussian() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-std::log(u1));
        double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    double gaussian() { return cgaussian().real() * std::sqrt(2.0); }

  private:
    std::mt19937_64 eng_;
};

// splitmix64 chain for deriving independent per-trial streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

// L i.i.d. CN(0,1) fading coefficients.
Eigen::VectorXcd sample_rayleigh(int count, Rng& rng);

struct TransmitOptions {
    bool noise = true;
    // Per-packet mean-power budget for each transmitted vector; a violation
    // indicates an encoder bug and throws power_violation_error. Checked with
    // 1% tolerance.
    double max_mean_power = std::numeric_limits<double>::infinity();
};

// y = sum_l h_l x_l + z with z ~ CN(0, I).
Eigen::VectorXcd transmit(const std::vector<Eigen::VectorXcd>& xs, const Eigen::VectorXcd& h,
                          Rng& rng, const TransmitOptions& opts = {});

}  // namespace pnc
