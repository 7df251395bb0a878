#include <doctest.h>

#include <array>
#include <complex>
#include <random>
#include <set>

#include "pnc/lattice.hpp"
#include "pnc/sigcode.hpp"
#include "oracles.hpp"

using namespace pnc;
using oracles::coset_count_bruteforce;

namespace {

GMatrix scalar_j(int n, std::int64_t v) { return GMatrix::scalar(n, GaussInt{v, 0}); }

SignalCode paper_code(int k) {
    return make_signal_code({std::polar(1.96, M_PI / 8.0), std::polar(0.98 * 0.98, M_PI / 4.0)}, k, 3);
}

}  // namespace

TEST_CASE("build_partition on the 9-QAM baseline Z[i]^2 / 3Z[i]^2") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(2, 2), scalar_j(2, 3));
    CHECK(index(p) == 81);
    CHECK(p.k == 2);
    REQUIRE(p.field.has_value());
    CHECK(p.field->q == 9);
    auto vs = is_vector_space(p);
    REQUIRE(vs.has_value());
    CHECK(vs->q == 9);
    CHECK(vs->k == 2);
}

TEST_CASE("build_partition on the signal-code generator") {
    SignalCode c = paper_code(2);
    auto p = build_partition(generator_matrix(c), scalar_j(2, 3));
    CHECK(index(p) == 81);
    REQUIRE(p.field.has_value());
    CHECK(p.field->q == 9);
    CHECK(p.k == 2);
    // coarse generator is exactly 3x the fine one after normalization
    CHECK((p.coarse.G - 3.0 * p.fine.G).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trivial partition") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(3, 3), GMatrix::identity(3));
    CHECK(index(p) == 1);
    CHECK(p.k == 0);
    CHECK_FALSE(p.field.has_value());
    auto cosets = enumerate_cosets(p);
    REQUIRE(cosets.size() == 1);
    CHECK(cosets[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_partition rejects bad input") {
    Eigen::MatrixXcd rank_def(2, 2);
    rank_def << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(build_partition(rank_def, scalar_j(2, 3)), std::invalid_argument);
    GMatrix singular(2, 2);
    singular.at(0, 0) = {1, 0};
    singular.at(0, 1) = {1, 0};
    singular.at(1, 0) = {1, 0};
    singular.at(1, 1) = {1, 0};
    CHECK_THROWS_AS(build_partition(Eigen::MatrixXcd::Identity(2, 2), singular), singular_error);
}

TEST_CASE("index matches brute-force coset enumeration") {
    GMatrix j(2, 2);
    j.at(0, 0) = {3, 0};
    j.at(0, 1) = {-1, 0};
    j.at(1, 1) = {1, 0};
    auto p = build_partition(Eigen::MatrixXcd::Identity(2, 2), j);
    CHECK(index(p) == 9);
    CHECK(coset_count_bruteforce(j) == 9);

    auto p2 = build_partition(Eigen::MatrixXcd::Identity(2, 2), scalar_j(2, 3));
    CHECK(coset_count_bruteforce(scalar_j(2, 3)) == 81);
    CHECK(index(p2) == 81);
}

TEST_CASE("index overflows loudly on the full-size code") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(40, 40), scalar_j(40, 3));
    CHECK(p.index_overflow);
    CHECK_THROWS_AS(index(p), std::overflow_error);
    CHECK(p.k == 40);
    REQUIRE(p.field.has_value());
    CHECK(p.field->q == 9);
}

TEST_CASE("is_vector_space fails on a repeated prime and passes on split primes") {
    // annihilator 2 = -i (1+i)^2: repeated prime
    auto p2 = build_partition(Eigen::MatrixXcd::Identity(1, 1), scalar_j(1, 2));
    CHECK_FALSE(is_vector_space(p2).has_value());
    CHECK_FALSE(p2.field.has_value());

    // annihilator 5 = (2+i)(2-i): distinct primes of norm 5
    auto p5 = build_partition(Eigen::MatrixXcd::Identity(1, 1), scalar_j(1, 5));
    auto vs = is_vector_space(p5);
    REQUIRE(vs.has_value());
    CHECK(vs->q == 5);
    CHECK(vs->k == 2);
    CHECK(index(p5) == 25);
    // brute-force residue table: 25 residues, CRT components distinct
    auto residues = residue_system(GaussInt{5, 0});
    CHECK(residues.size() == 25);
    std::set<std::array<std::int64_t, 4>> crt;
    for (const auto& r : residues) {
        GaussInt a = canonical_residue(r, GaussInt{2, 1});
        GaussInt b = canonical_residue(r, GaussInt{2, -1});
        crt.insert({a.re, a.im, b.re, b.im});
    }
    CHECK(crt.size() == 25);
}

TEST_CASE("phi basics on Z[i]^2 / 3Z[i]^2") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(2, 2), scalar_j(2, 3));
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
    CHECK(all_zero(phi(zero, p)));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<GaussInt> r1{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        std::vector<GaussInt> r2{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        Eigen::VectorXcd l1 = lattice_point(p.fine.G, r1);
        Eigen::VectorXcd l2 = lattice_point(p.fine.G, r2);
        CHECK(phi(l1 + l2, p) == phi(l1, p) + phi(l2, p));
        CHECK(all_zero(phi(3.0 * l1, p)));  // kernel: 3L in L'
        // R-module homomorphism: phi(r l) = sigma(r) phi(l)
        GaussInt r{coord(rng), coord(rng)};
        Eigen::VectorXcd scaled = r.to_complex() * l1;
        CHECK(phi(scaled, p) == sigma(r, *p.field) * phi(l1, p));
    }

    Eigen::VectorXcd off(2);
    off << std::complex<double>(0.5, 0.0), std::complex<double>(0.0, 0.0);
    CHECK_THROWS_AS(phi(off, p), not_lattice_point_error);
}

TEST_CASE("phi_inv round trip exhaustively on a k=1 toy partition") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(1, 1), scalar_j(1, 3));
    REQUIRE(p.field.has_value());
    for (const auto& e : field_elements(*p.field)) {
        FieldVec w{e};
        Eigen::VectorXcd x = phi_inv(w, p);
        CHECK(phi(x, p) == w);
    }
    CHECK(phi_inv(FieldVec{field_zero(*p.field)}, p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phi_inv places the lift on the identity generator") {
    auto p = build_partition(Eigen::MatrixXcd::Identity(2, 2), scalar_j(2, 3));
    FieldVec w{sigma(GaussInt{1, 1}, *p.field), field_zero(*p.field)};
    Eigen::VectorXcd x = phi_inv(w, p);
    CHECK(std::abs(x(0) - std::complex<double>(1, 1)) < 1e-12);
    CHECK(std::abs(x(1)) < 1e-12);
}

TEST_CASE("phi and phi_inv on the rectangular signal-code partition") {
    SignalCode c = paper_code(3);
    auto p = build_partition(generator_matrix(c), scalar_j(3, 3));
    REQUIRE(p.field.has_value());
    auto elems = field_elements(*p.field);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        FieldVec w{elems[rng() % 9], elems[rng() % 9], elems[rng() % 9]};
        CHECK(phi(phi_inv(w, p), p) == w);
    }
}

TEST_CASE("quantize_nearest basics") {
    Lattice zi2 = make_lattice(Eigen::MatrixXcd::Identity(2, 2));
    Eigen::VectorXcd x(2);
    x << std::complex<double>(0.4, 0.6), std::complex<double>(-1.2, 0.0);
    auto q = quantize_nearest(x, zi2);
    CHECK(q.coeffs[0] == GaussInt{0, 1});
    CHECK(q.coeffs[1] == GaussInt{-1, 0});

    // a point already on the lattice comes back exactly
    Eigen::VectorXcd on = lattice_point(zi2.G, {GaussInt{2, -1}, GaussInt{0, 3}});
    auto q2 = quantize_nearest(on, zi2);
    CHECK((q2.point - on).norm() < 1e-12);
    CHECK(q2.coeffs[0] == GaussInt{2, -1});
    CHECK(q2.coeffs[1] == GaussInt{0, 3});
}

TEST_CASE("quantize_nearest matches brute-force enumeration on random generators") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::MatrixXcd g(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g(i, j) = std::complex<double>(u(rng), u(rng));
        g += 2.0 * Eigen::MatrixXcd::Identity(2, 2);  // keep it well-conditioned
        Lattice lat = make_lattice(g);
        Eigen::VectorXcd x(2);
        x << std::complex<double>(3.0 * u(rng), 3.0 * u(rng)),
            std::complex<double>(3.0 * u(rng), 3.0 * u(rng));

        auto q = quantize_nearest(x, lat);
        double got = (q.point - x).squaredNorm();

        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t a = -6; a <= 6; ++a)
            for (std::int64_t b = -6; b <= 6; ++b)
                for (std::int64_t c = -6; c <= 6; ++c)
                    for (std::int64_t d = -6; d <= 6; ++d) {
                        Eigen::VectorXcd pt = lattice_point(g, {GaussInt{a, b}, GaussInt{c, d}});
                        best = std::min(best, (pt - x).squaredNorm());
                    }
        CHECK(got == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("quantize_nearest rejects high dimensions") {
    Lattice big = make_lattice(Eigen::MatrixXcd::Identity(9, 9));
    CHECK_THROWS_AS(quantize_nearest(Eigen::VectorXcd::Zero(9), big), std::domain_error);
}

TEST_CASE("enumerate_cosets counts and phi surjectivity") {
    auto p1 = build_partition(Eigen::MatrixXcd::Identity(1, 1), scalar_j(1, 3));
    CHECK(enumerate_cosets(p1).size() == 9);

    auto p = build_partition(Eigen::MatrixXcd::Identity(2, 2), scalar_j(2, 3));
    auto cosets = enumerate_cosets(p);
    REQUIRE(cosets.size() == 81);
    std::set<std::array<std::int64_t, 4>> images;
    for (const auto& rep : cosets) {
        FieldVec u = phi(rep, p);
        images.insert({u[0].rep.re, u[0].rep.im, u[1].rep.re, u[1].rep.im});
    }
    CHECK(images.size() == 81);  // pairwise distinct mod the coarse lattice, covering F_9^2

    auto pbig = build_partition(Eigen::MatrixXcd::Identity(5, 5), scalar_j(5, 3));
    CHECK_THROWS_AS(enumerate_cosets(pbig), capacity_error);
}
