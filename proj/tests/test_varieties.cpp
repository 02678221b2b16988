#include <catch_amalgamated.hpp>

#include "mip/varieties.hpp"

using namespace mip;

TEST_CASE("psi fiber table: closed form vs scan, and totals") {
    for (std::uint32_t m = 1; m <= 8; ++m) {
        Field f = m == 7 ? Field(2, 7, 0b10000011) : Field::gf(2, m);
        CountTable closed = psi_fiber_table_closed(f);
        CountTable scan = psi_fiber_table_scan(f);
        REQUIRE(closed.v == scan.v);
        REQUIRE(closed.total() == std::uint64_t(f.q) * f.q);
        CHECK(closed.at(0, 0) == 2 * std::uint64_t(f.q) - 1);
    }
}

TEST_CASE("A* cardinality") {
    CHECK(astar_count(Field::gf(2, 2)) == 3);   // 4*1/2 + 1
    CHECK(astar_count(Field::gf(2)) == 0);      // 2*(-1)/2 + 1
    CHECK(astar_count(Field::gf(2, 4)) == 105); // 16*13/2 + 1
    CHECK(astar_count(Field::gf(2, 3)) == 21);
}

TEST_CASE("closed-form counts for small r") {
    for (std::uint32_t m : {1u, 2u, 3u, 4u}) {
        Field f = Field::gf(2, m);
        std::uint64_t q = f.q;
        // |V(f_1,h_1)| = 2q-1 (the zero fiber of psi), |V(g_1,h_1)| = 1
        CHECK(strat_count(f, 1, VarietyPair::FH) == 2 * q - 1);
        CHECK(strat_count(f, 1, VarietyPair::GH) == 1);
        // |V(f_2,h_2)| = 6q^2 - 9q + 4
        CHECK(strat_count(f, 2, VarietyPair::FH) == 6 * q * q - 9 * q + 4);
        CHECK(brute_count(f, 2, VarietyPair::FH) == 6 * q * q - 9 * q + 4);
    }
}

TEST_CASE("stratified equals brute force for q in {2,4}, r <= 4") {
    for (std::uint32_t m : {1u, 2u}) {
        Field f = Field::gf(2, m);
        for (int r = 1; r <= 4; ++r)
            for (auto pair : {VarietyPair::FH, VarietyPair::GH}) {
                std::uint64_t s = strat_count(f, r, pair);
                std::uint64_t b = brute_count(f, r, pair);
                REQUIRE(s == b);
                if (f.q == 2 && r <= 2) REQUIRE(b == brute_count_reference(f, r, pair));
            }
    }
}

TEST_CASE("table totals are q^{2 level}") {
    Field f = Field::gf(2, 2);
    CountTable x1 = psi_fiber_table_closed(f);
    CountTable x2 = convolve(f, x1, x1);
    CHECK(x2.total() == std::uint64_t(f.q) * f.q * f.q * f.q);
    CountTable y1 = y_fiber_table_scan(f);
    CHECK(y1.total() == std::uint64_t(f.q) * f.q);
}

TEST_CASE("published table reproduces") {
    Table1Result res = table1();
    REQUIRE(res.matches);
    for (std::size_t i = 0; i < res.computed.size(); ++i) {
        CHECK(res.computed[i].fh == table1_expected()[i].fh);
        CHECK(res.computed[i].gh == table1_expected()[i].gh);
        CHECK(res.computed[i].fh > res.computed[i].gh);
    }
}

TEST_CASE("brute-force budget") {
    Field f = Field::gf(2, 4);
    CHECK_THROWS_AS(brute_count(f, 6, VarietyPair::FH, 1 << 20), bound_error);
}

TEST_CASE("bijection verdicts") {
    Field f4 = Field::gf(2, 2);
    auto v = bijection_verdict(f4, 2);
    CHECK(v.kind == BijectionVerdict::NoLinearBijection);
    CHECK(v.card_fh == 64);
    CHECK(v.card_gh < 64);
    auto v1 = bijection_verdict(Field::gf(2), 1);
    CHECK(v1.kind == BijectionVerdict::NoLinearBijection);
    CHECK(v1.card_fh == 3);  // 2q-1 at q=2
    CHECK(v1.card_gh == 1);
    auto v16 = bijection_verdict(Field::gf(2, 4), 3);
    CHECK(v16.kind == BijectionVerdict::NoLinearBijection);
    CHECK(v16.card_fh == 118336);
    CHECK(v16.card_gh == 87616);
}

TEST_CASE("threaded brute force agrees (feature check despite 1 core)") {
    Field f = Field::gf(2, 2);
    CHECK(brute_count(f, 3, VarietyPair::FH, std::uint64_t(1) << 34, 3) ==
          brute_count(f, 3, VarietyPair::FH));
}
