#include <doctest.h>

#include "pnc/channel.hpp"
#include "pnc/errors.hpp"

using namespace pnc;

TEST_CASE("rayleigh fading statistics") {
    Rng rng(2718);
    const int n = 100'000;
    std::complex<double> mean = 0.0;
    double power = 0.0;
    for (int i = 0; i < n; ++i) {
        std::complex<double> h = rng.cgaussian();
        mean += h;
        power += std::norm(h);
    }
    mean /= static_cast<double>(n);
    power /= static_cast<double>(n);
    // per-component std of the mean estimate is 1/sqrt(2n)
    double tol = 3.0 / std::sqrt(2.0 * n);
    CHECK(std::abs(mean.real()) < tol);
    CHECK(std::abs(mean.imag()) < tol);
    CHECK(power == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fixed seed reproduces the stream") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.cgaussian() == b.cgaussian());
    Rng c(100);
    CHECK(Rng(99).cgaussian() != c.cgaussian());

    CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 3, 5));
    CHECK(derive_seed(1, 2, 3, 4) != derive_seed(2, 2, 3, 4));
}

TEST_CASE("sample_rayleigh basic shape") {
    Rng rng(1);
    Eigen::VectorXcd h = sample_rayleigh(2, rng);
    CHECK(h.size() == 2);
}

TEST_CASE("transmit is the exact superposition with noise disabled") {
    Rng rng(5);
    Eigen::VectorXcd x(3);
    x << std::complex<double>(1, 0), std::complex<double>(0, 2), std::complex<double>(-1, 1);
    Eigen::VectorXcd h(1);
    h << std::complex<double>(1, 0);
    TransmitOptions opts;
    opts.noise = false;
    opts.max_mean_power = 100.0;
    Eigen::VectorXcd y = transmit({x}, h, rng, opts);
    CHECK((y - x).cwiseAbs().maxCoeff() == 0.0);

    // L=2, h=(1,i), both users send e1: y = (1+i) e1
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
    e1(0) = 1.0;
    Eigen::VectorXcd h2(2);
    h2 << std::complex<double>(1, 0), std::complex<double>(0, 1);
    Eigen::VectorXcd y2 = transmit({e1, e1}, h2, rng, opts);
    CHECK(std::abs(y2(0) - std::complex<double>(1, 1)) == 0.0);
    CHECK(std::abs(y2(1)) == 0.0);
    CHECK(std::abs(y2(2)) == 0.0);
}

TEST_CASE("pure noise has unit variance per complex dimension") {
    Rng rng(31337);
    const int n = 100'000;
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd h(1);
    h << std::complex<double>(1, 0);
    TransmitOptions opts;
    opts.max_mean_power = 1.0;
    Eigen::VectorXcd y = transmit({x}, h, rng, opts);
    double var = y.squaredNorm() / n;
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("power constraint violations are encoder bugs") {
    Rng rng(7);
    Eigen::VectorXcd x(2);
    x << std::complex<double>(10, 0), std::complex<double>(0, 10);
    Eigen::VectorXcd h(1);
    h << std::complex<double>(1, 0);
    TransmitOptions opts;
    opts.max_mean_power = 50.0;  // packet power is 100
    CHECK_THROWS_AS(transmit({x}, h, rng, opts), power_violation_error);
    opts.max_mean_power = 100.0;  // within the 1% tolerance
    CHECK_NOTHROW(transmit({x}, h, rng, opts));
}

TEST_CASE("transmit input validation") {
    Rng rng(7);
    Eigen::VectorXcd h(2);
    h << std::complex<double>(1, 0), std::complex<double>(1, 0);
    CHECK_THROWS_AS(transmit({}, h, rng), std::invalid_argument);
    Eigen::VectorXcd x1(2), x2(3);
    x1.setZero();
    x2.setZero();
    CHECK_THROWS_AS(transmit({x1, x2}, h, rng), std::invalid_argument);
}
