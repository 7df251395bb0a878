#include <doctest.h>

#include <random>

#include "pnc/cfwd.hpp"
#include "pnc/channel.hpp"

using namespace pnc;

namespace {

ChannelVector chan(std::initializer_list<std::complex<double>> hs, double snr) {
    Eigen::VectorXcd h(static_cast<Eigen::Index>(hs.size()));
    Eigen::Index i = 0;
    for (const auto& v : hs) h(i++) = v;
    return {h, snr};
}

CoeffVector coeffs(std::initializer_list<GaussInt> gs) {
    CoeffVector a;
    a.a.assign(gs.begin(), gs.end());
    return a;
}

SignalCodeScheme paper_scheme(int k) {
    return SignalCodeScheme(
        make_signal_code({std::polar(1.96, M_PI / 8.0), std::polar(0.98 * 0.98, M_PI / 4.0)}, k, 3));
}

// Independent exhaustive argmax of the computation rate over a coordinate box,
// with the spec's tie-break. Valid as long as the box covers the norm ball.
CoeffVector brute_force_select(const ChannelVector& ch, std::int64_t box) {
    const int L = static_cast<int>(ch.h.size());
    REQUIRE(L == 2);
    CoeffVector best;
    double best_rate = -1.0;
    double best_norm = 0.0;
    for (std::int64_t a = -box; a <= box; ++a)
        for (std::int64_t b = -box; b <= box; ++b)
            for (std::int64_t c = -box; c <= box; ++c)
                for (std::int64_t d = -box; d <= box; ++d) {
                    CoeffVector cand = coeffs({GaussInt{a, b}, GaussInt{c, d}});
                    if (cand.all_zero()) continue;
                    // canonical unit-orbit representative, as the library returns
                    GaussInt u{1, 0};
                    for (const auto& g : cand.a)
                        if (!g.is_zero()) {
                            u = canonical_unit(g);
                            break;
                        }
                    for (auto& g : cand.a) g = u * g;
                    double r = computation_rate(ch, cand);
                    double n2 = static_cast<double>(norm(cand.a[0]) + norm(cand.a[1]));
                    bool better = false;
                    if (r > best_rate + 1e-12) better = true;
                    else if (std::abs(r - best_rate) <= 1e-12) {
                        if (n2 < best_norm) better = true;
                        else if (n2 == best_norm) {
                            auto key = [](const CoeffVector& v) {
                                return std::array<std::int64_t, 4>{v.a[0].re, v.a[0].im, v.a[1].re, v.a[1].im};
                            };
                            if (key(cand) < key(best)) better = true;
                        }
                    }
                    if (better) {
                        best = cand;
                        best_rate = r;
                        best_norm = n2;
                    }
                }
    return best;
}

}  // namespace

TEST_CASE("computation rate spot values") {
    // R((1,0),(1,0),snr=1) = log2(1/(1 - 1/2)) = 1 exactly
    double r1 = computation_rate(chan({{1, 0}, {0, 0}}, 1.0), coeffs({{1, 0}, {0, 0}}));
    CHECK(r1 == 1.0);

    // R((1,1),(1,1),snr=10): 2 - 10*4/21 = 2/21, log2(21/2)
    double r2 = computation_rate(chan({{1, 0}, {1, 0}}, 10.0), coeffs({{1, 0}, {1, 0}}));
    CHECK(std::abs(r2 - std::log2(21.0 / 2.0)) < 1e-12);

    // orthogonal-ish coefficients with large norm clamp to zero
    double r3 = computation_rate(chan({{1, 0}, {0, 0}}, 1.0), coeffs({{0, 0}, {5, 0}}));
    CHECK(r3 == 0.0);

    CHECK_THROWS_AS(computation_rate(chan({{1, 0}}, 1.0), coeffs({{0, 0}})), std::invalid_argument);
}

TEST_CASE("mmse alpha") {
    CHECK(mmse_alpha(chan({{1, 0}, {0.5, 0}}, 2.0), coeffs({{0, 0}, {0, 0}})) == std::complex<double>(0, 0));
    auto a1 = mmse_alpha(chan({{1, 0}}, 1.0), coeffs({{1, 0}}));
    CHECK(std::abs(a1 - std::complex<double>(0.5, 0.0)) < 1e-15);
    // snr -> infinity with a parallel to h: alpha -> (h a^dag)^* / ||h||^2
    auto a2 = mmse_alpha(chan({{2, 1}, {0, -1}}, 1e12), coeffs({{2, 1}, {0, -1}}));
    CHECK(std::abs(a2 - std::complex<double>(1.0, 0.0)) < 1e-9);
}

TEST_CASE("effective noise variance matches the rate formula (Monte Carlo)") {
    ChannelVector ch = chan({{0.9, 0.3}, {-0.4, 1.1}}, 100.0);
    CoeffVector a = select_coefficients(ch);
    std::complex<double> alpha = mmse_alpha(ch, a);

    double hn2 = ch.h.squaredNorm();
    std::complex<double> ip = 0.0;
    for (int l = 0; l < 2; ++l) ip += ch.h(l) * std::conj(a.a[static_cast<std::size_t>(l)].to_complex());
    double expect = ch.snr * static_cast<double>(norm(a.a[0]) + norm(a.a[1])) -
                    ch.snr * ch.snr * std::norm(ip) / (1.0 + ch.snr * hn2);
    // consistency with the rate: sigma^2 = snr 2^-R
    double rate = computation_rate(ch, a);
    CHECK(std::abs(expect - ch.snr * std::pow(2.0, -rate)) < 1e-9 * expect);

    const int samples = 100'000;
    Rng rng(424242);
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::complex<double> n = alpha * rng.cgaussian();
        for (int l = 0; l < 2; ++l) {
            std::complex<double> x = std::sqrt(ch.snr) * rng.cgaussian();
            n += (alpha * ch.h(l) - a.a[static_cast<std::size_t>(l)].to_complex()) * x;
        }
        acc += std::norm(n);
    }
    double measured = acc / samples;
    CHECK(std::abs(measured - expect) < 3.0 * expect / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("select_coefficients matches the spec examples") {
    CoeffVector a1 = select_coefficients(chan({{1, 0}, {0, 0}}, 1.0));
    CHECK(a1 == coeffs({{1, 0}, {0, 0}}));
    CoeffVector a2 = select_coefficients(chan({{1, 0}, {0, 0}}, 100.0));
    CHECK(a2 == coeffs({{1, 0}, {0, 0}}));
    CoeffVector a3 = select_coefficients(chan({{1, 0}, {1, 0}}, 10.0));
    CHECK(a3 == coeffs({{1, 0}, {1, 0}}));
}

TEST_CASE("select_coefficients agrees with an exhaustive oracle") {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int trial = 0; trial < 30; ++trial) {
        ChannelVector ch = chan({{u(rng), u(rng)}, {u(rng), u(rng)}}, 8.0);
        if (ch.h.squaredNorm() < 0.05) continue;
        CoeffVector got = select_coefficients(ch);
        CoeffVector want = brute_force_select(ch, 5);  // ball: ||a||^2 <= 1 + 8*2.88 ~ 24 < 25
        CHECK(computation_rate(ch, got) == doctest::Approx(computation_rate(ch, want)).epsilon(1e-12));
        CHECK(got == want);
    }
}

TEST_CASE("selected coefficients are never zero-rate unless everything is") {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ChannelVector ch = chan({{u(rng), u(rng)}, {u(rng), u(rng)}}, 50.0);
        CoeffVector a = select_coefficients(ch);
        double r = computation_rate(ch, a);
        if (r == 0.0) {
            // then every candidate in a generous box is zero-rate too
            CoeffVector best = brute_force_select(ch, 4);
            CHECK(computation_rate(ch, best) == 0.0);
        }
    }
}

TEST_CASE("phase rotation of h keeps the argmax property") {
    ChannelVector base = chan({{0.8, 0.1}, {-0.3, 0.6}}, 20.0);
    CoeffVector a0 = select_coefficients(base);
    double r0 = computation_rate(base, a0);
    ChannelVector rotated{std::polar(1.0, 0.7) * base.h, base.snr};
    CoeffVector a1 = select_coefficients(rotated);
    double r1 = computation_rate(rotated, a1);
    // the returned a maximizes the rate in each case
    CHECK(r1 >= computation_rate(rotated, a0) - 1e-12);
    CHECK(r0 >= computation_rate(base, a1) - 1e-12);
}

TEST_CASE("map_coeffs_to_field") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    FieldVec m1 = map_coeffs_to_field(coeffs({{1, 0}, {0, 0}}), f9);
    CHECK(m1[0] == field_one(f9));
    CHECK(m1[1].is_zero());
    FieldVec m2 = map_coeffs_to_field(coeffs({{3, 0}, {1, 0}}), f9);
    CHECK(m2[0].is_zero());  // relay combination degenerates to a single-user message
    CHECK(m2[1] == field_one(f9));

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> coord(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        CoeffVector x = coeffs({{coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
        CoeffVector y = coeffs({{coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
        CoeffVector s = coeffs({x.a[0] + y.a[0], x.a[1] + y.a[1]});
        FieldVec lhs = map_coeffs_to_field(s, f9);
        FieldVec rhs = map_coeffs_to_field(x, f9) + map_coeffs_to_field(y, f9);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("single-user round trip through decode_combination") {
    QamScheme scheme(4, 3);
    ChannelVector ch = chan({{1, 0}}, 1e4);
    CoeffVector a = coeffs({{1, 0}});
    auto elems = field_elements(scheme.field());
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        FieldVec w;
        for (int t = 0; t < 4; ++t) w.push_back(elems[rng() % 9]);
        double scale = std::sqrt(ch.snr / scheme.mean_symbol_power());
        Eigen::VectorXcd y = scale * scheme.encode(w, {});
        auto res = decode_combination(y, ch, a, scheme);
        CHECK(res.u == w);
        CHECK_FALSE(res.budget_limited);
    }
}

TEST_CASE("noiseless algebraic identity on the toy signal code") {
    SignalCodeScheme scheme = paper_scheme(2);
    auto elems = field_elements(scheme.field());
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<std::int64_t> coord(-2, 2);
    int done = 0;
    while (done < 50) {
        CoeffVector a = coeffs({{coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
        if (a.all_zero()) continue;
        FieldVec arow = map_coeffs_to_field(a, scheme.field());
        if (all_zero(arow)) continue;
        ChannelVector ch{Eigen::VectorXcd(2), 1e6};
        ch.h << a.a[0].to_complex(), a.a[1].to_complex();

        FieldVec w1, w2;
        for (int t = 0; t < 2; ++t) {
            w1.push_back(elems[rng() % 9]);
            w2.push_back(elems[rng() % 9]);
        }
        double scale = std::sqrt(ch.snr / scheme.mean_symbol_power());
        Eigen::VectorXcd y =
            ch.h(0) * (scale * scheme.encode(w1, {})) + ch.h(1) * (scale * scheme.encode(w2, {}));
        auto res = decode_combination(y, ch, a, scheme);
        FieldVec expect = arow[0] * w1 + arow[1] * w2;
        CHECK(res.u == expect);
        ++done;
    }
}

TEST_CASE("decode_combination honors nonzero dithers") {
    QamScheme scheme(3, 3);
    // Gaussian-integer channel matching the decoded combination
    ChannelVector ch = chan({{1, 0}, {0, 1}}, 1e4);
    CoeffVector a = coeffs({{1, 0}, {0, 1}});
    auto elems = field_elements(scheme.field());
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 30; ++trial) {
        FieldVec w1, w2;
        for (int t = 0; t < 3; ++t) {
            w1.push_back(elems[rng() % 9]);
            w2.push_back(elems[rng() % 9]);
        }
        std::vector<Eigen::VectorXcd> dithers(2, Eigen::VectorXcd(3));
        for (int l = 0; l < 2; ++l)
            for (int t = 0; t < 3; ++t) dithers[static_cast<std::size_t>(l)](t) = {u(rng), u(rng)};
        double scale = std::sqrt(ch.snr / scheme.mean_symbol_power());
        Eigen::VectorXcd y = ch.h(0) * (scale * scheme.encode(w1, dithers[0])) +
                             ch.h(1) * (scale * scheme.encode(w2, dithers[1]));
        auto res = decode_combination(y, ch, a, scheme, dithers);
        FieldVec arow = map_coeffs_to_field(a, scheme.field());
        CHECK(res.u == arow[0] * w1 + arow[1] * w2);
    }
}
