#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "mip/battery.hpp"
#include "mip/group.hpp"
#include "mip/spec_io.hpp"

using namespace mip;

namespace {

// enumeration oracles, independent of the closed-form paths

std::vector<std::uint32_t> center_enum(const Group& g) {
    std::vector<std::uint32_t> out;
    auto gens = g.generators();
    for (std::uint32_t i = 0; i < g.order(); ++i) {
        GroupElement x = g.decode(i);
        bool central = true;
        for (const auto& h : gens)
            if (!(g.mul(x, h) == g.mul(h, x))) {
                central = false;
                break;
            }
        if (central) out.push_back(i);
    }
    return out;
}

Subgroup derived_enum(const Group& g) {
    auto gens = g.generators();
    std::vector<std::uint32_t> seeds;
    for (const auto& x : gens)
        for (const auto& y : gens) seeds.push_back(g.encode(g.commutator(x, y)));
    return g.closure(seeds);
}

std::uint64_t exponent_enum(const Group& g) {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        e = std::max(e, g.element_order(g.decode(i)));
    return e;
}

// abelian invariants of G/Z by counting coset orders
std::vector<int> quotient_invariants_enum(const Group& g) {
    std::uint64_t zorder = g.zq;
    std::vector<std::uint64_t> nk; // #elements of the quotient of order <= p^k
    for (int k = 0;; ++k) {
        std::uint64_t count = 0;
        std::uint64_t pk = Group::ipow(g.p, k);
        for (std::uint32_t i = 0; i < g.order(); ++i)
            if (g.is_central(g.pow(g.decode(i), pk))) ++count;
        nk.push_back(count / zorder);
        if (nk.back() == g.order() / zorder) break;
    }
    auto lg = [&](std::uint64_t v) {
        int t = 0;
        while (v > 1) {
            v /= g.p;
            ++t;
        }
        return t;
    };
    std::vector<int> invs;
    // #invariants of log >= k equals lg(nk[k]) - lg(nk[k-1])
    std::vector<int> geq;
    for (std::size_t k = 1; k < nk.size(); ++k) geq.push_back(lg(nk[k]) - lg(nk[k - 1]));
    for (std::size_t k = 0; k < geq.size(); ++k) {
        int exactly = geq[k] - (k + 1 < geq.size() ? geq[k + 1] : 0);
        for (int i = 0; i < exactly; ++i) invs.push_back(int(k) + 1);
    }
    std::sort(invs.rbegin(), invs.rend());
    return invs;
}

std::vector<GroupSpec> unit_battery() {
    std::vector<GroupSpec> v;
    for (const char* s :
         {"Q p=2 [] [1]", "R p=2 n=1 []", "Q p=2 [(2,2)] []", "R p=2 n=2 []",
          "Q p=2 [] [1,1]", "R p=2 n=1 [1]", "Q p=2 [] [2,1]", "R p=2 n=2 [1]",
          "Q p=2 [(3,1)] []", "Q p=2 [(4,2),(3,0)] []", "Q p=2 [(4,1)] [1]",
          "Q p=3 [(2,1)] []", "Q p=3 [(3,1)] []", "Q p=3 [] [1,1]", "Q p=3 [(4,2),(3,0)] []"})
        v.push_back(parse_spec(s));
    return v;
}

} // namespace

TEST_CASE("spec parsing, normalization and validation") {
    GroupSpec s = parse_spec("Q p=2 [(2,2)] []");
    CHECK(s.qpairs.empty());
    CHECK(s.ells == std::vector<int>{2});
    CHECK(format_spec(s) == "Q p=2 [] [2]");
    CHECK(parse_spec("R p=2 n=2 []").rparam == 2);
    CHECK(parse_spec("Q p=2 [] [1,1,1]").ells.size() == 3);
    CHECK(parse_spec(format_spec(parse_spec("Q p=3 [(5,3),(4,1)] [1]"))) ==
          parse_spec("Q p=3 [(5,3),(4,1)] [1]"));

    CHECK_THROWS_AS(parse_spec("Q p=2 [] []"), spec_error);           // alpha+beta = 0
    CHECK_THROWS_AS(parse_spec("Q p=2 [(3,1),(3,0)] []"), spec_error); // n not decreasing
    CHECK_THROWS_AS(parse_spec("Q p=2 [(3,2)] []"), spec_error);       // p=2 needs n-r > 1
    CHECK_THROWS_AS(parse_spec("Q p=3 [(3,2)] [3]"), spec_error);      // needs n_alpha > l_1
    CHECK_THROWS_AS(parse_spec("Q p=3 [(4,2),(3,1)] []"), spec_error); // r gap of 1
    CHECK_THROWS_AS(parse_spec("Q p=3 [(5,2),(3,1)] []"), spec_error); // differences not increasing
    CHECK_THROWS_AS(parse_spec("R p=3 n=2 []"), spec_error);           // R needs p=2
    CHECK_THROWS_AS(parse_spec("R p=2 n=2 [3]"), spec_error);          // l_1 > n
    CHECK_THROWS_AS(parse_spec("Q p=4 [] [1]"), spec_error);           // p not prime
    CHECK_THROWS_AS(parse_spec("Q p=2 [1] []"), spec_error);           // malformed
}

TEST_CASE("orders of the basic groups") {
    CHECK(Group(parse_spec("Q p=2 [(2,2)] []")).order() == 64);
    CHECK(Group(parse_spec("R p=2 n=2 []")).order() == 64);
    CHECK(Group(parse_spec("Q p=2 [] [1,1]")).order() == 32);
    CHECK(Group(parse_spec("Q p=2 [] [1]")).order() == 8);  // dihedral of order 8
    CHECK(Group(parse_spec("R p=2 n=1 []")).order() == 8);  // quaternion
    CHECK(Group(parse_spec("Q p=3 [(3,1)] []")).order() == 81);
}

TEST_CASE("multiplication table is a group of the right size") {
    // full multiplication-table oracle on Q(2,2): closure, associativity,
    // identity, inverses, and the collected commutation rule
    Group g(parse_spec("Q p=2 [(2,2)] []"));
    const std::uint32_t n = std::uint32_t(g.order());
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) t[i][j] = g.idx_mul(i, j);
    for (std::uint32_t i = 0; i < n; ++i) {
        CHECK(t[0][i] == i);
        CHECK(t[i][0] == i);
        CHECK(t[i][g.idx_inv(i)] == 0);
    }
    bool assoc = true;
    for (std::uint32_t i = 0; i < n && assoc; ++i)
        for (std::uint32_t j = 0; j < n && assoc; ++j)
            for (std::uint32_t k = 0; k < n; ++k)
                if (t[t[i][j]][k] != t[i][t[j][k]]) {
                    assoc = false;
                    break;
                }
    CHECK(assoc);
    // ba = ab [b,a]
    auto A = g.a(0), B = g.b(0);
    CHECK(g.mul(B, A) == g.mul(g.mul(A, B), g.commutator(B, A)));
    // closure of the generating pair is the whole group
    CHECK(g.closure({g.encode(A), g.encode(B)}).order() == g.order());
}

TEST_CASE("identity, inverses, random cancellation") {
    for (const auto& spec : unit_battery()) {
        Group g(spec);
        std::mt19937_64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            GroupElement x = g.decode(std::uint32_t(rng() % g.order()));
            CHECK(g.mul(x, g.id()) == x);
            CHECK(g.is_identity(g.mul(x, g.inverse(x))));
        }
    }
}

TEST_CASE("powers in R(1) and exponent of Q(l,l) at p=2") {
    Group q8(parse_spec("R p=2 n=1 []"));
    auto A = q8.a(0), B = q8.b(0);
    CHECK(q8.pow(A, 2) == q8.commutator(A, B));
    CHECK(q8.pow(B, 2) == q8.commutator(A, B));
    CHECK(q8.is_identity(q8.pow(A, 4)));
    CHECK(q8.pow(A, 0) == q8.id());
    CHECK(q8.pow(A, 1) == A);

    for (int l : {1, 2, 3}) {
        GroupSpec s;
        s.p = 2;
        s.ells = {l};
        Group g(s);
        auto ab = g.mul(g.a(0), g.b(0));
        CHECK_FALSE(g.is_identity(g.pow(ab, Group::ipow(2, l))));
        CHECK(exponent_enum(g) == Group::ipow(2, l + 1));
    }
}

TEST_CASE("power identity of class-2 groups") {
    // (gh)^n = g^n h^n [h,g]^{n(n-1)/2}
    for (const auto& spec : unit_battery()) {
        Group g(spec);
        std::mt19937_64 rng(11);
        for (int i = 0; i < 10000; ++i) {
            GroupElement x = g.decode(std::uint32_t(rng() % g.order()));
            GroupElement y = g.decode(std::uint32_t(rng() % g.order()));
            std::uint64_t n = rng() % 64;
            GroupElement lhs = g.pow(g.mul(x, y), n);
            GroupElement rhs = g.mul(g.mul(g.pow(x, n), g.pow(y, n)),
                                     g.pow(g.commutator(y, x), n * (n - 1) / 2));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("structure profile against enumeration") {
    for (const auto& spec : unit_battery()) {
        Group g(spec);
        StructureProfile st = g.structure();
        if (!g.enumerable()) continue;
        CHECK(center_enum(g).size() == g.zq);
        CHECK(g.center().order() == Group::ipow(g.p, st.zeta));
        CHECK(derived_enum(g).order() == Group::ipow(g.p, st.delta));
        CHECK(g.derived().elems == derived_enum(g).elems);
        CHECK(exponent_enum(g) == Group::ipow(g.p, st.exponent_log));
        // d(G) = p-rank of G / D_2(G)
        auto frat = g.frattini();
        std::uint64_t rank_order = g.order() / frat.order();
        CHECK(rank_order == Group::ipow(g.p, st.dG));
        // G/Z invariants: formula, Smith normal form, and order counting agree
        std::vector<int> expect;
        for (int x : st.L)
            if (x > 0) {
                expect.push_back(x);
                expect.push_back(x);
            }
        std::sort(expect.rbegin(), expect.rend());
        CHECK(g.quotient_center_invariants() == expect);
        CHECK(quotient_invariants_enum(g) == expect);
    }
}

TEST_CASE("named structure examples") {
    Group q22(parse_spec("Q p=2 [(2,2)] []"));
    StructureProfile st = q22.structure();
    CHECK(st.zeta == 2);
    CHECK(st.delta == 2);
    CHECK(st.exponent_log == 3);
    CHECK(st.dG == 2);
    CHECK(st.L == std::vector<int>{2});
    CHECK(st.mG == 2);

    Group r2(parse_spec("R p=2 n=2 []"));
    StructureProfile str = r2.structure();
    CHECK(str.zeta == 2);
    CHECK(str.delta == 2);
    CHECK(str.exponent_log == 3);
    CHECK(str.dG == 2);
    CHECK(str.L == std::vector<int>{2});
    CHECK(str.mG == 2);

    Group big(parse_spec("Q p=3 [(5,3),(4,1)] []"), std::uint64_t(1) << 40);
    StructureProfile stb = big.structure();
    CHECK(stb.zeta == 3);
    CHECK(stb.delta == 3);
    CHECK(stb.dG == 4);
    CHECK(stb.L == std::vector<int>{3, 1});
    CHECK(big.order() == Group::ipow(3, 11));
}

TEST_CASE("subgroups: center, jennings, agemo") {
    Group q22(parse_spec("Q p=2 [(2,2)] []"));
    auto c = q22.center();
    CHECK(c.order() == 4);
    // Z(Q(2,2)) = G' = <[a,b]>
    auto com = q22.commutator(q22.a(0), q22.b(0));
    CHECK(q22.closure({q22.encode(com)}).elems == c.elems);

    // D_2(G) = Phi(G) = G^p G', via an independent closure
    for (const auto& spec : unit_battery()) {
        Group g(spec);
        if (g.order() > 4096) continue;
        std::vector<std::uint32_t> seeds;
        for (std::uint32_t i = 0; i < g.order(); ++i) seeds.push_back(g.idx_pow(i, g.p));
        auto gens = g.generators();
        for (auto& x : gens)
            for (auto& y : gens) seeds.push_back(g.encode(g.commutator(x, y)));
        CHECK(g.jennings(2).elems == g.closure(seeds).elems);
    }

    // ninth powers in Q(3,1) at p=3: G^9 cap Z = Z^3
    Group q31(parse_spec("Q p=3 [(3,1)] []"));
    auto agemo2 = q31.agemo(2);
    std::vector<std::uint32_t> inter;
    for (auto e : agemo2.elems)
        if (q31.is_central(q31.decode(e))) inter.push_back(e);
    CHECK(inter.size() == 3);
    auto z3 = q31.central_cyclic(3);
    CHECK(inter == z3.elems);
}

TEST_CASE("nu profile worked examples") {
    Group q31(parse_spec("Q p=3 [(3,1)] []"));
    auto np1 = q31.nu_profile(1);
    CHECK(np1.i_t == 0);
    CHECK(np1.mu == 0);
    CHECK(np1.nu == 0);
    auto np2 = q31.nu_profile(2);
    CHECK(np2.mu == 1);
    CHECK(np2.nu == 1);
    // t at or above the exponent: the intersection is trivial
    auto np9 = q31.nu_profile(9);
    CHECK(np9.nu == q31.structure().zeta);
    CHECK_THROWS_AS(Group(parse_spec("R p=2 n=2 []")).nu_profile(1), spec_error);
}

TEST_CASE("agemo and jennings intersections match the closed forms") {
    // Lemma 3.2/3.3 shape checks on the moderate battery (the acceptance
    // suite runs the full one)
    for (const auto& spec : unit_battery()) {
        if (spec.form != GroupForm::Q) continue;
        Group g(spec);
        if (!g.enumerable()) continue;
        StructureProfile st = g.structure();
        std::vector<Subgroup> agemos;
        for (int t = 0; t <= st.exponent_log + 1; ++t) agemos.push_back(g.agemo(t));
        for (int t = 1; t <= st.exponent_log; ++t) {
            auto np = g.nu_profile(t);
            std::uint64_t zcap = 0;
            for (auto e : agemos[t].elems)
                if (g.is_central(g.decode(e))) ++zcap;
            REQUIRE(zcap == Group::ipow(g.p, st.zeta - np.nu));
            // D_{p^t+1} = G^{p^{t+1}} (G')^{p^t}, intersected with Z honestly
            std::int64_t step_log = std::int64_t(st.zeta) - st.delta + t;
            Subgroup dprime = step_log >= st.zeta
                                  ? g.central_cyclic(0)
                                  : g.central_cyclic(Group::ipow(g.p, step_log));
            Subgroup d = g.set_product(agemos[t + 1], dprime);
            std::uint64_t zcap2 = 0;
            for (auto e : d.elems)
                if (g.is_central(g.decode(e))) ++zcap2;
            REQUIRE(zcap2 == Group::ipow(g.p, st.zeta - np.nu_tilde));
            if (!spec.qpairs.empty() && t + 1 >= spec.qpairs.back().second) {
                auto np_next = g.nu_profile(t + 1);
                REQUIRE(np.nu_tilde == np_next.nu);
            }
        }
    }
}

TEST_CASE("battery generation finds the known small groups") {
    auto b2 = spec_battery(2, 9); // |G| <= 512
    auto find = [&](const char* s) {
        GroupSpec want = parse_spec(s);
        for (auto& x : b2)
            if (x == want) return true;
        return false;
    };
    CHECK(find("Q p=2 [] [1]"));
    CHECK(find("R p=2 n=1 []"));
    CHECK(find("Q p=2 [(2,2)] []"));
    CHECK(find("R p=2 n=2 []"));
    CHECK(find("Q p=2 [] [2,1]"));
    CHECK(find("R p=2 n=2 [1]"));
    CHECK(find("Q p=2 [(3,1)] []"));
    for (auto& s : b2) {
        CHECK_NOTHROW(s.validate());
        CHECK(Group(s, std::uint64_t(1) << 62).order() <= 512);
    }
    auto b3 = spec_battery(3, 5);
    for (auto& s : b3) CHECK(Group(s, std::uint64_t(1) << 62).order() <= 243);
    CHECK(!b3.empty());

    auto rnd = random_large_specs(2, 10, 42);
    CHECK(rnd.size() == 10);
    for (auto& s : rnd) CHECK_NOTHROW(s.validate());
}
