#pragma once

// Exhaustive generation of all valid parameter lists up to an order bound,
// plus seeded random generation of larger ones for formula-only checks.

#include <cstdint>
#include <random>
#include <vector>

#include "mip/group.hpp"

namespace mip {

namespace detail {

inline std::uint64_t spec_weight(const GroupSpec& s) {
    // log_p |G| = zeta + 2 sum rho_i
    StructureProfile st;
    {
        Group g(s, std::uint64_t(1) << 62);
        st = g.structure();
        std::uint64_t w = st.zeta;
        for (auto& f : g.factors) w += 2 * std::uint64_t(f.rho);
        return w;
    }
}

inline void gen_ells(const GroupSpec& base, int max_ell, int budget, std::uint32_t p,
                     std::vector<GroupSpec>& out) {
    GroupSpec cur = base;
    // depth-first over non-increasing ell lists within the weight budget
    struct Rec {
        static void go(GroupSpec& cur, int max_ell, int budget, std::vector<GroupSpec>& out) {
            {
                GroupSpec copy = cur;
                bool ok = true;
                try {
                    copy.validate();
                } catch (const spec_error&) {
                    ok = false;
                }
                if (ok && !(copy.form == GroupForm::Q && copy.qpairs.empty() && copy.ells.empty()))
                    out.push_back(copy);
            }
            int hi = cur.ells.empty() ? max_ell : cur.ells.back();
            for (int l = hi; l >= 1; --l) {
                if (2 * l > budget) continue;
                cur.ells.push_back(l);
                go(cur, max_ell, budget - 2 * l, out);
                cur.ells.pop_back();
            }
        }
    };
    (void)p;
    Rec::go(cur, max_ell, budget, out);
}

} // namespace detail

// All valid specs (both forms when p = 2) with |G| <= p^max_weight.
inline std::vector<GroupSpec> spec_battery(std::uint32_t p, int max_weight) {
    std::vector<GroupSpec> out;
    const int W = max_weight;

    // Q form: enumerate the (n_i, r_i) list, then attach ell lists.
    // alpha is small: the weight grows at least quadratically with it.
    std::vector<std::pair<int, int>> pairs;
    struct Gen {
        std::uint32_t p;
        int W;
        std::vector<GroupSpec>* out;
        void rec(std::vector<std::pair<int, int>>& pairs) {
            // weight so far: zeta >= max(r_1, n_a - r_a), plus 2 sum r_i
            if (!pairs.empty()) {
                int r1 = pairs.front().second;
                int gap = pairs.back().first - pairs.back().second;
                int sumr = 0;
                for (auto& [n, r] : pairs) sumr += 2 * r;
                int zeta_min = std::max(r1, gap);
                if (zeta_min + sumr <= W) {
                    GroupSpec base;
                    base.p = p;
                    base.form = GroupForm::Q;
                    base.qpairs = pairs;
                    int max_ell = pairs.back().first - 1;
                    detail::gen_ells(base, max_ell, W - zeta_min - sumr, p, *out);
                }
            } else {
                GroupSpec base;
                base.p = p;
                base.form = GroupForm::Q;
                detail::gen_ells(base, W, W, p, *out);
            }
            // extend with a further (n, r) pair
            int n_hi = W + 1;
            for (int n = 1; n <= n_hi; ++n)
                for (int r = 0; r < n; ++r) {
                    if (!pairs.empty()) {
                        auto [pn, pr] = pairs.back();
                        if (n >= pn || r >= pr) continue;
                        if (n - r <= pn - pr) continue;
                    }
                    if (p == 2 && pairs.empty() && n - r < 2) continue;
                    // cheap weight prune: zeta >= n - r (for the future last pair)
                    int sumr = 2 * r;
                    for (auto& [qn, qr] : pairs) sumr += 2 * qr;
                    if ((n - r) + sumr > W) continue;
                    int r1 = pairs.empty() ? r : pairs.front().second;
                    if (r1 + sumr > W) continue;
                    pairs.push_back({n, r});
                    rec(pairs);
                    pairs.pop_back();
                }
        }
    };
    Gen g{p, W, &out};
    g.rec(pairs);

    if (p == 2) {
        for (int n = 1; 3 * n <= W; ++n) {
            GroupSpec base;
            base.p = 2;
            base.form = GroupForm::R;
            base.rparam = n;
            detail::gen_ells(base, n, W - 3 * n, p, out);
        }
    }

    // de-duplicate (the ell recursion emits each prefix once, but the pair
    // recursion can reach the same spec through different prune paths)
    std::sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
        if (a.form != b.form) return a.form == GroupForm::Q && b.form == GroupForm::R;
        if (a.rparam != b.rparam) return a.rparam < b.rparam;
        if (a.qpairs != b.qpairs) return a.qpairs < b.qpairs;
        return a.ells < b.ells;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());

    // enforce the order bound exactly
    std::vector<GroupSpec> kept;
    for (auto& s : out)
        if (detail::spec_weight(s) <= std::uint64_t(W)) kept.push_back(s);
    return kept;
}

// Seeded random valid Q-form specs, typically far above the enumeration
// bound; used for formula-only fingerprint checks.
inline std::vector<GroupSpec> random_large_specs(std::uint32_t p, std::size_t count,
                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<GroupSpec> out;
    auto pick = [&](int lo, int hi) {
        return lo + int(rng() % std::uint64_t(hi - lo + 1));
    };
    while (out.size() < count) {
        GroupSpec s;
        s.p = p;
        s.form = GroupForm::Q;
        int alpha = pick(0, 3);
        int beta = pick(alpha == 0 ? 1 : 0, 3);
        // build from the last pair upward so the chain conditions are easy
        if (alpha > 0) {
            int r_a = pick(0, 4);
            int gap_a = pick(p == 2 ? 2 : 1, 6);
            std::vector<std::pair<int, int>> rev{{r_a + gap_a, r_a}};
            for (int i = 1; i < alpha; ++i) {
                auto [n_prev, r_prev] = rev.back();
                int r = r_prev + 2 + pick(0, 2);
                int gap = n_prev - r_prev - 1 - pick(0, std::min(3, n_prev - r_prev - 2 < 0 ? 0 : n_prev - r_prev - 2));
                if (gap < 1 || (p == 2 && i == alpha - 1 && gap < 2)) break;
                int n = r + gap;
                if (n <= rev.back().first) break;
                rev.push_back({n, r});
            }
            std::reverse(rev.begin(), rev.end());
            s.qpairs = rev;
        }
        int max_ell = s.qpairs.empty() ? pick(1, 8) : s.qpairs.back().first - 1;
        if (max_ell < 1) continue;
        int cur = max_ell;
        for (int j = 0; j < beta; ++j) {
            s.ells.push_back(cur);
            cur = pick(1, cur);
        }
        try {
            s.validate();
        } catch (const spec_error&) {
            continue;
        }
        if (s.qpairs.empty() && s.ells.empty()) continue;
        if (detail::spec_weight(s) > 60) continue;
        out.push_back(s);
    }
    return out;
}

} // namespace mip
