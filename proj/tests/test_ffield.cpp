#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "pnc/ffield.hpp"

using namespace pnc;

TEST_CASE("field spec validation") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    CHECK(f9.q == 9);  // p = 3 (mod 4) gives F_{p^2}
    auto f5 = make_field_spec(GaussInt{2, 1});
    CHECK(f5.q == 5);
    CHECK_THROWS_AS(make_field_spec(GaussInt{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_field_spec(GaussInt{4, 0}), std::invalid_argument);
}

TEST_CASE("sigma examples mod 3") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    CHECK(sigma(GaussInt{3, 0}, f9).is_zero());
    CHECK(sigma(GaussInt{4, 3}, f9) == field_one(f9));
    CHECK(sigma(GaussInt{0, 0}, f9).rep == GaussInt{0, 0});
}

TEST_CASE("sigma is surjective with q distinct images") {
    for (GaussInt pi : {GaussInt{3, 0}, GaussInt{2, 1}, GaussInt{7, 0}}) {
        auto spec = make_field_spec(pi);
        auto elems = field_elements(spec);
        CHECK(elems.size() == spec.q);
        std::set<std::pair<std::int64_t, std::int64_t>> distinct;
        for (const auto& e : elems) distinct.insert({e.rep.re, e.rep.im});
        CHECK(distinct.size() == spec.q);
        for (const auto& e : elems) CHECK(sigma(e.rep, spec) == e);  // canonical residues are fixed points
    }
}

TEST_CASE("sigma kernel is the ideal (pi)") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> coord(-200, 200);
    for (int trial = 0; trial < 300; ++trial) {
        GaussInt g{coord(rng), coord(rng)};
        bool in_kernel = sigma(g, f9).is_zero();
        CHECK(in_kernel == divides(f9.pi, g));
        CHECK(sigma(g * f9.pi, f9).is_zero());
    }
}

TEST_CASE("sigma ring homomorphism against brute-force residue table for q=9") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    // Independent multiplication table: coordinate-wise balanced residues mod 3.
    auto reduce3 = [](std::int64_t v) {
        std::int64_t r = ((v % 3) + 3) % 3;
        return r == 2 ? r - 3 : r;
    };
    auto table_mul = [&](const GaussInt& x, const GaussInt& y) {
        GaussInt p = x * y;
        return GaussInt{reduce3(p.re), reduce3(p.im)};
    };
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> coord(-100, 100);
    for (int trial = 0; trial < 500; ++trial) {
        GaussInt x{coord(rng), coord(rng)};
        GaussInt y{coord(rng), coord(rng)};
        CHECK(sigma(x * y, f9) == sigma(x, f9) * sigma(y, f9));
        CHECK(sigma(x + y, f9) == sigma(x, f9) + sigma(y, f9));
        CHECK((sigma(x, f9) * sigma(y, f9)).rep == table_mul(sigma(x, f9).rep, sigma(y, f9).rep));
    }
}

TEST_CASE("sigma_inv round trip over all of F_9") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    auto elems = field_elements(f9);
    REQUIRE(elems.size() == 9);
    for (const auto& e : elems) {
        GaussInt lift = sigma_inv(e);
        CHECK(lift.re >= -1);
        CHECK(lift.re <= 1);
        CHECK(lift.im >= -1);
        CHECK(lift.im <= 1);
        CHECK(sigma(lift, f9) == e);
    }
}

TEST_CASE("field axioms spot checks in F_9") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    FieldElem i_elem = sigma(GaussInt{0, 1}, f9);
    CHECK(i_elem * i_elem == sigma(GaussInt{-1, 0}, f9));
    for (const auto& x : field_elements(f9)) {
        CHECK((x + (-x)).is_zero());
        if (!x.is_zero()) CHECK(x * inv(x) == field_one(f9));
    }
    CHECK_THROWS_AS(inv(field_zero(f9)), std::domain_error);
}

TEST_CASE("inverses exhaustively in F_5 and F_49") {
    for (GaussInt pi : {GaussInt{2, 1}, GaussInt{7, 0}}) {
        auto spec = make_field_spec(pi);
        for (const auto& x : field_elements(spec)) {
            if (x.is_zero()) continue;
            CHECK(x * inv(x) == field_one(spec));
        }
    }
}

TEST_CASE("solve_linear identity and random systems") {
    auto f9 = make_field_spec(GaussInt{3, 0});
    auto elems = field_elements(f9);
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);

    auto rand_vec = [&](std::size_t k) {
        FieldVec v;
        for (std::size_t t = 0; t < k; ++t) v.push_back(elems[pick(rng)]);
        return v;
    };

    // identity system
    std::vector<std::vector<FieldElem>> eye{{field_one(f9), field_zero(f9)},
                                            {field_zero(f9), field_one(f9)}};
    std::vector<FieldVec> b{rand_vec(4), rand_vec(4)};
    auto x = solve_linear(eye, b);
    CHECK(x == b);

    // random invertible systems, verified by multiplying back
    int done = 0;
    while (done < 100) {
        std::vector<std::vector<FieldElem>> a{{elems[pick(rng)], elems[pick(rng)]},
                                              {elems[pick(rng)], elems[pick(rng)]}};
        std::vector<FieldVec> rhs{rand_vec(3), rand_vec(3)};
        std::vector<FieldVec> sol;
        try {
            sol = solve_linear(a, rhs);
        } catch (const singular_error&) {
            continue;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            FieldVec acc = a[i][0] * sol[0] + a[i][1] * sol[1];
            CHECK(acc == rhs[i]);
        }
        ++done;
    }

    // equal rows are singular
    FieldElem iota = sigma(GaussInt{0, 1}, f9);
    std::vector<std::vector<FieldElem>> sing{{field_one(f9), iota}, {field_one(f9), iota}};
    CHECK_THROWS_AS(solve_linear(sing, b), singular_error);
}
