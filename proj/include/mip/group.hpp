#pragma once

// Finite p-groups of class <= 2 with cyclic center: central products of the
// two-generator groups Q(n,r) and R(n), realized through collected normal
// forms. Every element is a tuple (e_1,f_1,...,e_k,f_k; c) meaning
// a_1^{e_1} b_1^{f_1} ... a_k^{e_k} b_k^{f_k} z^c with z the generator of the
// amalgamated center. Subgroups are computed both by closed formula and by
// plain enumeration so the two routes can be checked against each other.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mip/errors.hpp"
#include "mip/smith.hpp"

namespace mip {

enum class GroupForm { Q, R };

// Validated parameter list for a group of form (3) (Q) or form (4) (R).
struct GroupSpec {
    std::uint32_t p = 2;
    GroupForm form = GroupForm::Q;
    std::vector<std::pair<int, int>> qpairs; // (n_i, r_i), n_i > r_i
    std::vector<int> ells;                   // l_1 >= ... >= l_beta >= 1
    int rparam = 0;                          // n for the R form

    bool operator==(const GroupSpec& o) const {
        return p == o.p && form == o.form && qpairs == o.qpairs && ells == o.ells &&
               (form == GroupForm::Q || rparam == o.rparam);
    }

    // Pairs (n,n) denote Q(l,l) factors; fold them into the ell list.
    void normalize() {
        std::vector<std::pair<int, int>> keep;
        for (auto& [n, r] : qpairs) {
            if (n == r)
                ells.push_back(n);
            else
                keep.push_back({n, r});
        }
        qpairs = std::move(keep);
        std::sort(ells.rbegin(), ells.rend());
    }

    void validate() const {
        auto fail = [](const std::string& cond) { throw spec_error("invalid group spec: " + cond); };
        if (p < 2) fail("p must be prime");
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) fail("p must be prime");
        const int alpha = int(qpairs.size());
        const int beta = int(ells.size());
        if (form == GroupForm::R) {
            if (p != 2) fail("form R requires p = 2");
            if (!qpairs.empty()) fail("form R carries no (n_i, r_i) factors");
            if (rparam < 1) fail("form R requires n >= 1");
            int prev = rparam;
            for (int l : ells) {
                if (l < 1) fail("l_j >= 1");
                if (l > prev) fail("n >= l_1 >= ... >= l_beta");
                prev = l;
            }
            return;
        }
        if (alpha + beta == 0) fail("alpha + beta > 0");
        for (int i = 0; i < alpha; ++i) {
            auto [n, r] = qpairs[i];
            if (r < 0) fail("r_i >= 0");
            if (n <= r) fail("(n,n) factors belong in the ell list");
            if (i > 0) {
                if (qpairs[i - 1].first <= n) fail("n_1 > n_2 > ... > n_alpha");
                if (qpairs[i - 1].second <= r) fail("n_alpha > r_1 > ... > r_alpha");
                if (qpairs[i - 1].second == r + 1)
                    fail("r_{i-1} = r_i + 1 contradicts the ordering conditions");
                if (qpairs[i - 1].first - qpairs[i - 1].second >= n - r)
                    fail("n_1 - r_1 < ... < n_alpha - r_alpha");
            }
        }
        if (alpha > 0) {
            int n_alpha = qpairs.back().first;
            if (qpairs.front().second >= n_alpha) fail("n_alpha > r_1");
            if (beta > 0 && ells.front() >= n_alpha) fail("n_alpha > l_1");
            if (p == 2 && qpairs.front().first - qpairs.front().second < 2)
                fail("p = 2 requires 1 < n_1 - r_1");
        }
        int prev = 1 << 30;
        for (int l : ells) {
            if (l < 1) fail("l_j >= 1");
            if (l > prev) fail("l_1 >= l_2 >= ... >= l_beta");
            prev = l;
        }
    }
};

// log_p sizes and generator counts visible to the isomorphism question
struct StructureProfile {
    int zeta = 0;         // log_p |Z(G)|
    int delta = 0;        // log_p |G'|
    int exponent_log = 0; // log_p exp(G)
    int dG = 0;           // minimal number of generators
    std::vector<int> L;   // multiset {r_i} u {l_j} (Q) resp. {n} u {l_j} (R), descending
    int mG = 0;           // rank of the maximal homocyclic component of G/Z
    int epsilon = 0;      // 0 for odd p, 1 for p = 2
};

struct GroupElement {
    std::vector<std::uint64_t> v; // e_1, f_1, ..., e_k, f_k, c
    bool operator==(const GroupElement& o) const { return v == o.v; }
    bool operator!=(const GroupElement& o) const { return v != o.v; }
};

// mu/nu/nu~ exponents of Lemmas 3.2/3.3, with saturating conventions
struct NuProfile {
    std::int64_t mu = 0;
    std::int64_t nu = 0;
    std::int64_t nu_tilde = 0;
    int i_t = 0;
    int j_t = 0;
};

class Group;

// Subgroup as a sorted element-index set plus a generator list.
struct Subgroup {
    std::vector<std::uint32_t> elems; // sorted flat indices
    std::vector<std::uint32_t> gens;
    std::uint64_t order() const { return elems.size(); }
    bool contains(std::uint32_t idx) const {
        return std::binary_search(elems.begin(), elems.end(), idx);
    }
};

class Group {
public:
    struct Factor {
        std::uint64_t pr;    // p^rho, range of the e/f coordinates
        std::uint64_t com;   // [a_i, b_i] = z^com
        std::uint64_t afold; // a_i^{pr} = z^afold
        std::uint64_t bfold; // b_i^{pr} = z^bfold
        int rho;
    };

    GroupSpec spec;
    std::uint32_t p;
    int zeta;
    std::uint64_t zq;     // p^zeta
    std::uint64_t order_; // p^{zeta + 2 sum rho_i}
    std::vector<Factor> factors;
    std::uint64_t enum_bound;

    explicit Group(GroupSpec s, std::uint64_t enumeration_bound = (1ull << 16))
        : spec(std::move(s)), enum_bound(enumeration_bound) {
        spec.normalize();
        spec.validate();
        p = spec.p;
        const StructureProfile st = structure();
        zeta = st.zeta;
        zq = ipow(p, zeta);
        order_ = zq;
        if (spec.form == GroupForm::Q) {
            for (auto [n, r] : spec.qpairs) factors.push_back(make_q_factor(n, r));
            for (int l : spec.ells) factors.push_back(make_q_factor(l, l));
        } else {
            factors.push_back(make_r_factor(spec.rparam));
            for (int l : spec.ells) factors.push_back(make_q_factor(l, l));
        }
        for (auto& f : factors) order_ *= f.pr * f.pr;
        ncoord_ = 2 * factors.size() + 1;
        strides_.assign(ncoord_, 1);
        for (int i = int(ncoord_) - 2; i >= 0; --i)
            strides_[i] = strides_[i + 1] * radix(i + 1);
        if (order_ != strides_[0] * radix(0))
            throw std::logic_error("order/stride mismatch");
    }

    std::uint64_t order() const { return order_; }
    std::size_t num_factors() const { return factors.size(); }
    bool enumerable() const { return order_ <= enum_bound; }

    GroupElement id() const { return GroupElement{std::vector<std::uint64_t>(ncoord_, 0)}; }

    GroupElement a(std::size_t i) const {
        auto g = id();
        if (factors[i].pr > 1) g.v[2 * i] = 1;
        else g.v.back() = 1; // a cyclic Q(n,0) factor contributes z itself
        return g;
    }

    GroupElement b(std::size_t i) const {
        auto g = id();
        if (factors[i].pr > 1) g.v[2 * i + 1] = 1;
        return g;
    }

    GroupElement z(std::uint64_t c = 1) const {
        auto g = id();
        g.v.back() = c % zq;
        return g;
    }

    // minimal generating set: one (a_i, b_i) pair per non-collapsed factor,
    // plus z when it survives outside the Frattini subgroup
    std::vector<GroupElement> generators() const {
        std::vector<GroupElement> gs;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factors[i].pr > 1) {
                gs.push_back(a(i));
                gs.push_back(b(i));
            }
        if (spec.form == GroupForm::Q)
            for (auto [n, r] : spec.qpairs)
                if (r == 0) gs.push_back(z());
        return gs;
    }

    GroupElement mul(const GroupElement& x, const GroupElement& y) const {
        require_same(x), require_same(y);
        GroupElement r = id();
        std::uint64_t c = mod_z(x.v.back() + y.v.back());
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const Factor& f = factors[i];
            // b^f a^{e'} = a^{e'} b^f [b,a]^{f e'}; [b,a] = z^{-com}
            std::uint64_t cross = mulmod_z(x.v[2 * i + 1], y.v[2 * i]);
            c = mod_z(c + zq - mulmod_z(f.com, cross));
            std::uint64_t e = x.v[2 * i] + y.v[2 * i];
            std::uint64_t ff = x.v[2 * i + 1] + y.v[2 * i + 1];
            if (e >= f.pr) {
                e -= f.pr;
                c = mod_z(c + f.afold);
            }
            if (ff >= f.pr) {
                ff -= f.pr;
                c = mod_z(c + f.bfold);
            }
            r.v[2 * i] = e;
            r.v[2 * i + 1] = ff;
        }
        r.v.back() = c;
        return r;
    }

    GroupElement inverse(const GroupElement& x) const {
        require_same(x);
        GroupElement r = id();
        std::uint64_t c = mod_z(zq - x.v.back() % zq);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const Factor& f = factors[i];
            std::uint64_t e = x.v[2 * i], ff = x.v[2 * i + 1];
            std::uint64_t ei = e ? f.pr - e : 0;
            std::uint64_t fi = ff ? f.pr - ff : 0;
            // g g^{-1} accumulates [b,a]^{f e_i} and the two carry folds
            c = mod_z(c + mulmod_z(f.com, mulmod_z(ff, ei)));
            if (e) c = mod_z(c + zq - f.afold % zq);
            if (ff) c = mod_z(c + zq - f.bfold % zq);
            r.v[2 * i] = ei;
            r.v[2 * i + 1] = fi;
        }
        r.v.back() = c;
        return r;
    }

    GroupElement pow(GroupElement g, std::uint64_t k) const {
        GroupElement r = id();
        while (k) {
            if (k & 1) r = mul(r, g);
            g = mul(g, g);
            k >>= 1;
        }
        return r;
    }

    GroupElement commutator(const GroupElement& g, const GroupElement& h) const {
        return mul(mul(inverse(g), inverse(h)), mul(g, h));
    }

    bool is_identity(const GroupElement& g) const {
        for (auto x : g.v)
            if (x) return false;
        return true;
    }

    bool is_central(const GroupElement& g) const {
        for (std::size_t i = 0; i + 1 < g.v.size(); ++i)
            if (g.v[i]) return false;
        return true;
    }

    // order of g as p^j
    std::uint64_t element_order(GroupElement g) const {
        std::uint64_t o = 1;
        while (!is_identity(g)) {
            g = pow(g, p);
            o *= p;
        }
        return o;
    }

    // ---- flat index view (for enumeration-sized groups) ----

    std::uint32_t encode(const GroupElement& g) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < ncoord_; ++i) idx += g.v[i] * strides_[i];
        return std::uint32_t(idx);
    }

    GroupElement decode(std::uint32_t idx) const {
        GroupElement g = id();
        std::uint64_t rest = idx;
        for (std::size_t i = 0; i < ncoord_; ++i) {
            g.v[i] = rest / strides_[i];
            rest %= strides_[i];
        }
        return g;
    }

    std::uint32_t idx_mul(std::uint32_t x, std::uint32_t y) const {
        return encode(mul(decode(x), decode(y)));
    }

    std::uint32_t idx_pow(std::uint32_t x, std::uint64_t k) const {
        return encode(pow(decode(x), k));
    }

    std::uint32_t idx_inv(std::uint32_t x) const { return encode(inverse(decode(x))); }

    // ---- structure by closed formula ----

    StructureProfile structure() const {
        StructureProfile st;
        st.epsilon = (spec.p == 2) ? 1 : 0;
        const int alpha = int(spec.qpairs.size());
        const int beta = int(spec.ells.size());
        if (spec.form == GroupForm::R) {
            st.zeta = st.delta = spec.rparam;
            st.exponent_log = spec.rparam + 1;
            st.dG = 2 * (1 + beta);
            st.L.push_back(spec.rparam);
            for (int l : spec.ells) st.L.push_back(l);
            std::sort(st.L.rbegin(), st.L.rend());
            int mult = 0;
            for (int x : st.L)
                if (x == st.L.front()) ++mult;
            st.mG = 2 * mult;
            return st;
        }
        int r1 = alpha ? spec.qpairs.front().second : 0;
        int gap = alpha ? spec.qpairs.back().first - spec.qpairs.back().second : 0;
        int l1 = beta ? spec.ells.front() : 0;
        st.zeta = std::max({r1, gap, l1});
        st.delta = std::max(r1, l1);
        if (alpha)
            st.exponent_log = spec.qpairs.front().first;
        else
            st.exponent_log = (spec.p == 2) ? l1 + 1 : l1;
        bool ralpha_zero = alpha && spec.qpairs.back().second == 0;
        st.dG = ralpha_zero ? 2 * (alpha + beta) - 1 : 2 * (alpha + beta);
        for (auto [n, r] : spec.qpairs) st.L.push_back(r);
        for (int l : spec.ells) st.L.push_back(l);
        std::sort(st.L.rbegin(), st.L.rend());
        int mult = 0;
        for (int x : st.L)
            if (!st.L.empty() && x == st.L.front()) ++mult;
        st.mG = 2 * mult;
        return st;
    }

    // abelian invariants (logs, descending) of G/Z via Smith normal form of
    // the quotient's relation matrix in the collected coordinates
    std::vector<int> quotient_center_invariants() const {
        std::vector<std::int64_t> orders;
        for (const auto& f : factors)
            if (f.pr > 1) {
                orders.push_back(std::int64_t(f.pr));
                orders.push_back(std::int64_t(f.pr));
            }
        imat rel(orders.size(), std::vector<std::int64_t>(orders.size(), 0));
        for (std::size_t i = 0; i < orders.size(); ++i) rel[i][i] = orders[i];
        auto diag = smith_diagonal(rel);
        std::vector<int> logs;
        for (auto d : diag) {
            if (d == 1) continue;
            int lg = 0;
            while (d > 1) {
                if (d % p) throw std::logic_error("non p-power invariant factor");
                d /= p;
                ++lg;
            }
            logs.push_back(lg);
        }
        std::sort(logs.rbegin(), logs.rend());
        return logs;
    }

    // ---- subgroups ----

    Subgroup center() const {
        require_enumerable("center");
        Subgroup s;
        GroupElement g = id();
        for (std::uint64_t c = 0; c < zq; ++c) {
            g.v.back() = c;
            s.elems.push_back(encode(g));
        }
        std::sort(s.elems.begin(), s.elems.end());
        s.gens.push_back(encode(z()));
        return s;
    }

    Subgroup derived() const {
        require_enumerable("derived");
        const int d = structure().delta;
        return central_cyclic(ipow(p, zeta - d));
    }

    // <z^{step}> as an explicit set
    Subgroup central_cyclic(std::uint64_t step) const {
        Subgroup s;
        GroupElement g = id();
        for (std::uint64_t c = 0; c < zq; c += step ? step : zq) {
            g.v.back() = c;
            s.elems.push_back(encode(g));
        }
        if (s.elems.empty() || step == 0 || step >= zq) {
            s.elems = {encode(id())};
        }
        std::sort(s.elems.begin(), s.elems.end());
        GroupElement gen = id();
        gen.v.back() = step < zq ? step : 0;
        s.gens.push_back(encode(gen));
        return s;
    }

    Subgroup closure(std::vector<std::uint32_t> seeds) const {
        require_enumerable("subgroup closure");
        std::vector<bool> in(order_, false);
        std::vector<std::uint32_t> members{0};
        in[0] = true;
        std::vector<std::uint32_t> gens;
        for (std::uint32_t s : seeds) {
            if (in[s]) continue;
            gens.push_back(s);
            // re-close: multiply every member by every generator to fixpoint
            std::vector<std::uint32_t> queue = members;
            in[s] = true;
            members.push_back(s);
            queue.push_back(s);
            while (!queue.empty()) {
                std::uint32_t x = queue.back();
                queue.pop_back();
                for (std::uint32_t g : gens) {
                    std::uint32_t t = idx_mul(x, g);
                    if (!in[t]) {
                        in[t] = true;
                        members.push_back(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        Subgroup sub;
        sub.elems = std::move(members);
        std::sort(sub.elems.begin(), sub.elems.end());
        sub.gens = std::move(gens);
        return sub;
    }

    // G^{p^t}, generated by all p^t-th powers
    Subgroup agemo(int t) const {
        require_enumerable("agemo");
        std::uint64_t k = ipow(p, t);
        std::vector<bool> seen(order_, false);
        std::vector<std::uint32_t> seeds;
        for (std::uint32_t i = 0; i < order_; ++i) {
            std::uint32_t s = idx_pow(i, k);
            if (!seen[s]) {
                seen[s] = true;
                seeds.push_back(s);
            }
        }
        return closure(seeds);
    }

    // Omega_t(G : N) = < g : g^{p^t} in N >
    Subgroup omega(int t, const Subgroup& n) const {
        require_enumerable("omega");
        std::uint64_t k = ipow(p, t);
        std::vector<bool> isn(order_, false);
        for (auto x : n.elems) isn[x] = true;
        std::vector<std::uint32_t> seeds;
        for (std::uint32_t i = 0; i < order_; ++i)
            if (isn[idx_pow(i, k)]) seeds.push_back(i);
        return closure(seeds);
    }

    // D_s(G) = G^{p^ceil(log_p s)} (G')^{p^ceil(log_p(s/2))}
    Subgroup jennings(std::uint64_t s) const {
        require_enumerable("jennings");
        if (s <= 1) {
            Subgroup whole;
            whole.elems.resize(order_);
            std::iota(whole.elems.begin(), whole.elems.end(), 0);
            for (auto& g : generators()) whole.gens.push_back(encode(g));
            return whole;
        }
        int u = ceil_log_p(s);
        int v = ceil_log_p((s + 1) / 2);
        Subgroup x = agemo(u);
        const int d = structure().delta;
        std::uint64_t step = ipow(p, std::min<std::int64_t>(zeta, std::int64_t(zeta) - d + v));
        Subgroup c = central_cyclic(step >= zq ? 0 : step);
        return set_product(x, c);
    }

    Subgroup frattini() const { return jennings(2); }

    // product of a subgroup with a central subgroup (a subgroup again)
    Subgroup set_product(const Subgroup& x, const Subgroup& c) const {
        std::vector<bool> in(order_, false);
        Subgroup s;
        for (auto u : x.elems)
            for (auto w : c.elems) {
                std::uint32_t t = idx_mul(u, w);
                if (!in[t]) {
                    in[t] = true;
                    s.elems.push_back(t);
                }
            }
        std::sort(s.elems.begin(), s.elems.end());
        s.gens = x.gens;
        for (auto g : c.gens) s.gens.push_back(g);
        return s;
    }

    int ceil_log_p(std::uint64_t s) const {
        int t = 0;
        std::uint64_t v = 1;
        while (v < s) {
            v *= p;
            ++t;
        }
        return t;
    }

    static std::uint64_t ipow(std::uint64_t b, std::int64_t e) {
        std::uint64_t r = 1;
        for (std::int64_t i = 0; i < e; ++i) r *= b;
        return r;
    }

private:
    std::size_t ncoord_ = 1;
    std::vector<std::uint64_t> strides_;

    Factor make_q_factor(int n, int r) const {
        Factor f;
        f.rho = r;
        f.pr = ipow(p, r);
        f.com = ipow(p, zeta - r) % zq;          // [a,b] = z^{p^{zeta-r}}
        f.afold = pow_or_zero(zeta - n + r);     // a^{p^r} = z^{p^{zeta-n+r}}
        f.bfold = 0;
        return f;
    }

    Factor make_r_factor(int n) const {
        Factor f;
        f.rho = n;
        f.pr = ipow(2, n);
        f.com = ipow(2, zeta - n) % zq;           // [a,b] = z^{2^{zeta-n}}
        f.afold = f.bfold = ipow(2, zeta - 1) % zq; // a^{2^n} = b^{2^n} = z^{2^{zeta-1}}
        return f;
    }

    std::uint64_t pow_or_zero(std::int64_t e) const {
        if (e >= zeta) return 0; // z^{p^e} = 1
        return ipow(p, e);
    }

    std::uint64_t mod_z(std::uint64_t x) const { return x % zq; }
    std::uint64_t mulmod_z(std::uint64_t a, std::uint64_t b) const {
        return std::uint64_t((__uint128_t(a) * b) % zq);
    }

    std::uint64_t radix(std::size_t coord) const {
        if (coord + 1 == ncoord_) return zq;
        return factors[coord / 2].pr;
    }

    void require_same(const GroupElement& g) const {
        if (g.v.size() != ncoord_) throw spec_error("element does not belong to this group");
    }

    void require_enumerable(const char* what) const {
        if (!enumerable())
            throw bound_error(std::string(what) + ": group order " + std::to_string(order_) +
                              " exceeds the enumeration bound " + std::to_string(enum_bound));
    }

public:
    // Lemma 3.2 / 3.3 exponents; Q form only.
    NuProfile nu_profile(int t) const {
        if (spec.form == GroupForm::R)
            throw spec_error("nu profile is defined for form-Q parameter lists only");
        const StructureProfile st = structure();
        const int alpha = int(spec.qpairs.size());
        const std::int64_t INF = std::int64_t(1) << 40;
        auto rr = [&](int i) -> std::int64_t {
            if (i == 0) return INF;          // r_0 = +inf
            if (i > alpha) return 0;         // r_{alpha+1} = 0
            return spec.qpairs[i - 1].second;
        };
        auto nn = [&](int i) -> std::int64_t {
            if (i == 0) return 0;            // n_0 = 0
            if (i > alpha) return st.zeta;   // n_{alpha+1} = zeta
            return spec.qpairs[i - 1].first;
        };
        auto ll = [&](int j) -> std::int64_t {
            if (j == 0) return INF;
            if (j > int(spec.ells.size())) return 0;
            return spec.ells[j - 1];
        };
        auto clamp = [&](std::int64_t v) {
            return std::max<std::int64_t>(0, std::min<std::int64_t>(st.zeta, v));
        };
        auto mu_of = [&](int tt) {
            int i = 0;
            while (!(rr(i) > tt && tt >= rr(i + 1))) ++i;
            std::int64_t m1 = (rr(i) >= INF) ? INF : st.zeta + rr(i) - nn(i);
            std::int64_t m2 = st.zeta + tt - nn(i + 1);
            return std::pair<int, std::int64_t>(i, std::min(m1, m2));
        };
        NuProfile np;
        auto [it, mu] = mu_of(t);
        np.i_t = it;
        np.mu = clamp(mu);
        np.nu = clamp(std::min(mu, std::int64_t(st.zeta) + t - st.delta - st.epsilon));
        np.nu_tilde = clamp(std::min(mu_of(t + 1).second, std::int64_t(st.zeta) + t - st.delta));
        int j = 0;
        while (!(ll(j) > t && t >= ll(j + 1))) ++j;
        np.j_t = j;
        return np;
    }
};

} // namespace mip
