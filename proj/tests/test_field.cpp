#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "mip/field.hpp"

using namespace mip;

static Field gf_any(std::uint32_t m) {
    // degree-7 has no table default; x^7 + x + 1 is irreducible
    if (m == 7) return Field(2, 7, 0b10000011);
    return Field::gf(2, m);
}

TEST_CASE("construction and defaults") {
    Field f4 = Field::gf(2, 2);
    CHECK(f4.q == 4);
    CHECK(f4.modulus == 0b111); // the unique irreducible quadratic over GF(2)
    CHECK(Field::gf(3).q == 3);
    CHECK(Field::gf(2, 4).q == 16);

    CHECK_THROWS_AS(Field::gf(4), field_error);      // non-prime p
    CHECK_THROWS_AS(Field(3, 2), field_error);       // extension of odd p
    CHECK_THROWS_AS(Field::gf(2, 7), field_error);   // no table entry, no modulus
    CHECK_THROWS_AS(Field(2, 3, 0b1111), field_error); // x^3+x^2+x+1 = (x+1)(x^2+1)
}

TEST_CASE("GF(4) arithmetic facts") {
    Field f = Field::gf(2, 2);
    fe w = 2; // class of x
    CHECK(f.mul(w, w) == (w ^ 1)); // x^2 = x + 1 mod x^2+x+1
    CHECK(f.trace(1) == 0);
    CHECK(f.trace(w) == 1); // w + w^2 = w + w + 1 = 1
    // trace oracle: evaluate the trace polynomial with the clmul route only
    for (fe a = 0; a < f.q; ++a) {
        fe acc = a, sq = a;
        for (std::uint32_t i = 1; i < f.m; ++i) {
            sq = f.mul_clmul(sq, sq);
            acc ^= sq;
        }
        CHECK(f.trace(a) == acc);
    }
}

TEST_CASE("sqrt is the inverse of squaring") {
    for (std::uint32_t m : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        Field f = gf_any(m);
        for (fe a = 0; a < f.q; ++a) {
            CHECK(f.mul(f.sqrt(a), f.sqrt(a)) == a);
            CHECK(f.sqrt(f.mul(a, a)) == a);
        }
    }
}

TEST_CASE("enumeration is ascending and complete") {
    CHECK(Field::gf(2).enumerate() == std::vector<fe>{0, 1});
    CHECK(Field::gf(2, 2).enumerate() == std::vector<fe>{0, 1, 2, 3});
    CHECK(Field::gf(2, 4).enumerate().size() == 16);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(20240817);
    for (const Field& f : {Field::gf(2, 4), Field::gf(3), Field::gf(2, 8), Field(2, 7, 0b10000011),
                           Field::gf(5)}) {
        for (int i = 0; i < 10000; ++i) {
            fe a = fe(rng() % f.q), b = fe(rng() % f.q), c = fe(rng() % f.q);
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            if (f.p == 2) {
                CHECK(f.mul(f.add(a, b), f.add(a, b)) == f.add(f.mul(a, a), f.mul(b, b)));
                CHECK(f.mul(a, b) == f.mul_clmul(a, b)); // table path == shift-and-reduce path
            }
        }
        CHECK_THROWS_AS(f.inv(0), field_error);
    }
}

TEST_CASE("squares-plus-x set equals the trace-zero set") {
    for (std::uint32_t m = 1; m <= 8; ++m) {
        Field f = gf_any(m);
        std::set<fe> artin;
        for (fe x = 0; x < f.q; ++x) artin.insert(f.add(f.mul(x, x), x));
        std::set<fe> tr0;
        for (fe a = 0; a < f.q; ++a)
            if (f.trace(a) == 0) tr0.insert(a);
        CHECK(artin == tr0);
    }
}

TEST_CASE("X^2+X+1 has a root in GF(2^m) iff m is even") {
    for (std::uint32_t m = 1; m <= 8; ++m) {
        Field f = gf_any(m);
        bool root = false;
        for (fe x = 0; x < f.q; ++x)
            if (f.add(f.add(f.mul(x, x), x), 1) == 0) root = true;
        CHECK(root == (m % 2 == 0));
    }
}
